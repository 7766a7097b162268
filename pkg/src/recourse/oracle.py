"""Offline brute-force baselines used to certify competitiveness.

Three exact metrics at desk scale, all in integer/rational arithmetic:

* minimum achievable maximum in-degree over all orientations of a given
  edge multiset (forest fast path, exhaustive enumeration, and an
  augmenting-path feasibility search that agree on overlap),
* minimum achievable maximum load for a bipartite instance given as
  per-left neighbor sets,
* arboricity as the exact rational max over induced subgraphs of
  |E(J)| / (|V(J)| - 1).
"""
from __future__ import annotations

import sys
from fractions import Fraction
from math import ceil
from typing import Sequence

from .errors import CapacityError, RejectedInputError
from .union_find import UnionFind

EXHAUSTIVE_EDGE_LIMIT = 22
ARBORICITY_NODE_LIMIT = 14


class OracleReport:
    """Exact offline answer; the witness, when present, achieves it."""

    __slots__ = ("metric", "value", "witness", "ceil_value", "instance_id")

    def __init__(self, metric, value, witness=None, ceil_value=None, instance_id=None):
        self.metric = metric
        self.value = value
        self.witness = witness
        self.ceil_value = ceil_value
        self.instance_id = instance_id

    def __repr__(self) -> str:
        return f"OracleReport(metric={self.metric!r}, value={self.value!r})"


def _check_edges(edges: Sequence[tuple[int, int]]) -> None:
    for u, v in edges:
        if u == v:
            raise RejectedInputError(f"self-loop ({u}, {v}) rejected")


def is_forest(edges: Sequence[tuple[int, int]]) -> bool:
    uf = UnionFind()
    return all(uf.union(u, v) for u, v in edges)


def _forest_witness(edges: Sequence[tuple[int, int]]) -> dict[int, int]:
    """Root-away orientation: in-degree <= 1 on any forest."""
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for eid, (u, v) in enumerate(edges):
        adjacency.setdefault(u, []).append((v, eid))
        adjacency.setdefault(v, []).append((u, eid))
    heads: dict[int, int] = {}
    seen: set[int] = set()
    for root in sorted(adjacency):
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for nbr, eid in adjacency[x]:
                if eid not in heads:
                    heads[eid] = nbr
                    seen.add(nbr)
                    stack.append(nbr)
    return heads


def _orientation_feasible(edges: Sequence[tuple[int, int]], bound: int) -> dict[int, int] | None:
    """Orientation with every in-degree <= bound, or None.

    Augmenting search over the capacity graph (each edge claims one unit
    of head capacity); nodes are visited at most once per search, so a
    full endpoint is relieved by rerouting one of its edges to its other
    endpoint, recursively.
    """
    if bound <= 0:
        return {} if not edges else None
    head: dict[int, int] = {}
    at: dict[int, list[int]] = {}

    def augment(eid: int, visited: set[int]) -> bool:
        u, v = edges[eid]
        for cand in (u, v) if u < v else (v, u):
            if cand in visited:
                continue
            visited.add(cand)
            slots = at.setdefault(cand, [])
            if len(slots) < bound:
                head[eid] = cand
                slots.append(eid)
                return True
            for other in list(slots):
                if augment(other, visited):
                    slots.remove(other)
                    head[eid] = cand
                    slots.append(eid)
                    return True
        return False

    for eid in range(len(edges)):
        if not augment(eid, set()):
            return None
    return head


def _exhaustive_min_max_indegree(edges: Sequence[tuple[int, int]]) -> tuple[int, dict[int, int]]:
    best = None
    best_heads: list[int] = []
    m = len(edges)
    heads = [0] * m

    def walk(i: int, loads: dict[int, int], current_max: int) -> None:
        nonlocal best, best_heads
        if best is not None and current_max >= best:
            return
        if i == m:
            best = current_max
            best_heads = heads[:i]
            return
        u, v = edges[i]
        for cand in (u, v) if u < v else (v, u):
            loads[cand] = loads.get(cand, 0) + 1
            heads[i] = cand
            walk(i + 1, loads, max(current_max, loads[cand]))
            loads[cand] -= 1

    walk(0, {}, 0)
    return best if best is not None else 0, {i: h for i, h in enumerate(best_heads)}


def min_max_indegree(edges: Sequence[tuple[int, int]], mode: str = "auto",
                     want_witness: bool = False) -> OracleReport:
    """Minimum over all orientations of the maximum in-degree.

    mode: 'auto' (forest fast path, else feasibility search),
    'exhaustive' (all 2^m orientations, m <= 22), or 'feasibility'.
    """
    _check_edges(edges)
    edges = list(edges)
    if mode not in ("auto", "exhaustive", "feasibility"):
        raise RejectedInputError(f"unknown oracle mode {mode!r}")
    if not edges:
        return OracleReport("min_max_indegree", 0, witness={} if want_witness else None)
    if mode == "exhaustive":
        if len(edges) > EXHAUSTIVE_EDGE_LIMIT:
            raise CapacityError(
                f"exhaustive mode limited to {EXHAUSTIVE_EDGE_LIMIT} edges, got {len(edges)}")
        value, witness = _exhaustive_min_max_indegree(edges)
        return OracleReport("min_max_indegree", value, witness if want_witness else None)
    if mode == "auto" and is_forest(edges):
        witness = _forest_witness(edges) if want_witness else None
        return OracleReport("min_max_indegree", 1, witness)
    for bound in range(1, len(edges) + 1):
        witness = _orientation_feasible(edges, bound)
        if witness is not None:
            return OracleReport("min_max_indegree", bound,
                                witness if want_witness else None)
    raise AssertionError("unreachable: bound == number of edges is always feasible")


def _load_feasible(neighbor_sets: Sequence[Sequence[int]], bound: int) -> dict[int, int] | None:
    """Assignment of every left node within its set, loads <= bound, or None.

    Augmenting search with rights visited at most once per search."""
    if bound <= 0:
        return {} if not neighbor_sets else None
    match: dict[int, int] = {}
    loads: dict[int, int] = {}
    lefts_at: dict[int, list[int]] = {}
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 64 + 4 * len(neighbor_sets)))

    def augment(x: int, visited: set[int]) -> bool:
        for y in neighbor_sets[x]:
            if y in visited:
                continue
            visited.add(y)
            slots = lefts_at.setdefault(y, [])
            if loads.get(y, 0) < bound:
                match[x] = y
                loads[y] = loads.get(y, 0) + 1
                slots.append(x)
                return True
            for other in list(slots):
                if augment(other, visited):
                    slots.remove(other)
                    match[x] = y
                    slots.append(x)
                    return True
        return False

    for x in range(len(neighbor_sets)):
        if not augment(x, set()):
            return None
    return match


def _exhaustive_min_max_load(neighbor_sets: Sequence[Sequence[int]]) -> int:
    best = len(neighbor_sets)

    def walk(i: int, loads: dict[int, int], current_max: int) -> None:
        nonlocal best
        if current_max >= best:
            return
        if i == len(neighbor_sets):
            best = current_max
            return
        for y in neighbor_sets[i]:
            loads[y] = loads.get(y, 0) + 1
            walk(i + 1, loads, max(current_max, loads[y]))
            loads[y] -= 1

    walk(0, {}, 0)
    return best


def min_max_load(neighbor_sets: Sequence[Sequence[int]], mode: str = "auto",
                 want_witness: bool = False) -> OracleReport:
    """Smallest b such that every left node can be assigned within its
    neighbor set with all right loads <= b.  Binary search over b with an
    exact augmenting feasibility check; exhaustive cross-check mode for
    at most 8 left nodes."""
    if mode not in ("auto", "exhaustive"):
        raise RejectedInputError(f"unknown oracle mode {mode!r}")
    sets = [tuple(dict.fromkeys(s)) for s in neighbor_sets]
    for s in sets:
        if not s:
            raise RejectedInputError("empty neighbor set rejected")
    if not sets:
        return OracleReport("min_max_load", 0, witness={} if want_witness else None)
    if mode == "exhaustive":
        if len(sets) > 8:
            raise CapacityError(f"exhaustive mode limited to 8 left nodes, got {len(sets)}")
        return OracleReport("min_max_load", _exhaustive_min_max_load(sets))
    lo, hi = 1, len(sets)
    witness = None
    while lo < hi:
        mid = (lo + hi) // 2
        candidate = _load_feasible(sets, mid)
        if candidate is None:
            lo = mid + 1
        else:
            witness = candidate
            hi = mid
    if witness is None or hi == len(sets):
        witness = _load_feasible(sets, lo)
    return OracleReport("min_max_load", lo, witness if want_witness else None)


def arboricity(edges: Sequence[tuple[int, int]]) -> OracleReport:
    """Exact arboricity: max over induced subgraphs with >= 2 nodes of
    |E(J)| / (|V(J)| - 1).  Induced subgraphs suffice because dropping an
    edge never increases the ratio.  Exhaustive over node subsets."""
    _check_edges(edges)
    edges = list(edges)
    if not edges:
        return OracleReport("arboricity", Fraction(0), ceil_value=0)
    nodes = sorted({w for e in edges for w in e})
    if len(nodes) > ARBORICITY_NODE_LIMIT:
        raise CapacityError(
            f"arboricity oracle limited to {ARBORICITY_NODE_LIMIT} nodes, got {len(nodes)}")
    index = {v: i for i, v in enumerate(nodes)}
    edge_masks = [(1 << index[u]) | (1 << index[v]) for u, v in edges]
    best = Fraction(0)
    for subset in range(1, 1 << len(nodes)):
        size = subset.bit_count()
        if size < 2:
            continue
        inside = sum(1 for mask in edge_masks if mask & subset == mask)
        if inside == 0:
            continue
        ratio = Fraction(inside, size - 1)
        if ratio > best:
            best = ratio
    return OracleReport("arboricity", best, ceil_value=ceil(best))
