"""Seeded instance generators backing the property suites.

Every generator is deterministic given its seed and constructs its
promise by design: forests are built by random attachment (and stay
acyclic under any arrival order), bounded-arboricity inputs are unions
of c forests carrying a hidden low-in-degree orientation as witness,
and matching instances hide a load-K assignment before random extra
neighbors are sprinkled on.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import RejectedInputError

Edge = tuple[int, int]


def gen_forest(n: int, seed: int, shuffle: bool = True) -> list[Edge]:
    """n-edge forest (a single tree on n+1 nodes); any prefix is acyclic."""
    if n < 1:
        raise RejectedInputError(f"forest size must be >= 1, got {n}")
    rng = random.Random(seed)
    edges = []
    for i in range(1, n + 1):
        parent = rng.randrange(i)
        edges.append((i, parent) if rng.random() < 0.5 else (parent, i))
    if shuffle:
        rng.shuffle(edges)
    return edges


@dataclass(frozen=True)
class ArboricityInstance:
    edges: tuple[Edge, ...]
    witness_heads: dict[int, int]   # edge id -> head of the hidden orientation
    c: int


def gen_arboricity_bounded(num_nodes: int, c: int, seed: int,
                           density: float = 0.9) -> ArboricityInstance:
    """Union of c random forests on one node set: arboricity <= c, and the
    per-forest root-away orientations give a hidden c-orientation."""
    if num_nodes < 2:
        raise RejectedInputError(f"need at least 2 nodes, got {num_nodes}")
    if c < 1:
        raise RejectedInputError(f"arboricity bound must be >= 1, got {c}")
    rng = random.Random(seed)
    tagged: list[tuple[Edge, int]] = []   # (edge, witness head)
    for _ in range(c):
        order = list(range(num_nodes))
        rng.shuffle(order)
        for i in range(1, num_nodes):
            if rng.random() >= density:
                continue
            child = order[i]
            parent = order[rng.randrange(i)]
            edge = (child, parent) if rng.random() < 0.5 else (parent, child)
            tagged.append((edge, child))
    rng.shuffle(tagged)
    edges = tuple(e for e, _ in tagged)
    witness = {eid: head for eid, (_, head) in enumerate(tagged)}
    return ArboricityInstance(edges, witness, c)


@dataclass(frozen=True)
class BMatchInstance:
    arrivals: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...]    # arrival index -> hidden partner
    K: int
    num_right: int


def gen_bmatch_saturating(num_hubs: int, K: int, seed: int) -> BMatchInstance:
    """Feasible instances that force augmenting paths under the
    first-listed pick policy.

    Each hub has two shared rights; 2K arrivals name (shared, private)
    and fill the shared right while their witnesses sit on the privates,
    then 2K probe arrivals name both saturated shared rights and must
    augment through them.  6K arrivals and at least 2K swaps per hub."""
    if num_hubs < 1:
        raise RejectedInputError(f"need at least 1 hub, got {num_hubs}")
    if K < 1:
        raise RejectedInputError(f"K must be >= 1, got {K}")
    rng = random.Random(seed)
    arrivals: list[tuple[int, ...]] = []
    witness: list[int] = []
    next_right = 0

    def fresh() -> int:
        nonlocal next_right
        right = next_right
        next_right += 1
        return right

    for _ in range(num_hubs):
        shared = (fresh(), fresh())
        for hub_side in shared:
            for _ in range(2 * K):
                private = fresh()
                arrivals.append((hub_side, private))
                witness.append(private)
        probes = [shared[rng.randrange(2)] for _ in range(2 * K)]
        # Rebalance so each shared right carries exactly K probe witnesses.
        for side in shared:
            while probes.count(side) > K:
                probes[probes.index(side)] = shared[0] if side == shared[1] else shared[1]
        for partner in probes:
            pair = (shared[0], shared[1]) if rng.random() < 0.5 else (shared[1], shared[0])
            arrivals.append(pair)
            witness.append(partner)
    return BMatchInstance(tuple(arrivals), tuple(witness), K, next_right)


def gen_bmatch_feasible(n: int, K: int, seed: int,
                        num_right: int | None = None,
                        extra_max: int = 3) -> BMatchInstance:
    """n arrivals admitting a hidden assignment with every load <= K.

    Each arrival gets a hidden partner drawn from the rights still under
    K, plus up to ``extra_max`` random extra neighbors; the partner's
    position in the neighbor list is randomized."""
    if n < 1:
        raise RejectedInputError(f"need at least 1 arrival, got {n}")
    if K < 1:
        raise RejectedInputError(f"K must be >= 1, got {K}")
    rng = random.Random(seed)
    if num_right is None:
        num_right = max(2, (n + K - 1) // K + rng.randrange(3))
    if num_right * K < n:
        raise RejectedInputError(
            f"{num_right} rights cannot absorb {n} arrivals at load {K}")
    witness_load = [0] * num_right
    open_rights = list(range(num_right))
    arrivals: list[tuple[int, ...]] = []
    witness: list[int] = []
    for _ in range(n):
        pick = rng.randrange(len(open_rights))
        partner = open_rights[pick]
        witness_load[partner] += 1
        if witness_load[partner] >= K:
            open_rights[pick] = open_rights[-1]
            open_rights.pop()
        extras = [rng.randrange(num_right) for _ in range(rng.randint(0, extra_max))]
        neighbors = [y for y in extras if y != partner]
        neighbors.insert(rng.randint(0, len(neighbors)), partner)
        deduped = tuple(dict.fromkeys(neighbors))
        arrivals.append(deduped)
        witness.append(partner)
    return BMatchInstance(tuple(arrivals), tuple(witness), K, num_right)
