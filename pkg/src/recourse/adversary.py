"""Adaptive adversaries against the shortest-path orienter.

Each construction drives an algorithm through its ``process_edge`` /
``view`` surface, observing orientations between moves and emitting the
next edge accordingly.  The driven algorithm must run with in-degree
constraint 2.  Every emission is checked for acyclicity first; a
construction that finds the algorithm's state incompatible with what it
was promised raises AdversaryDesyncError.

The building block is a saturated-root tree whose shortest path from an
unsaturated node to the root has a prescribed length m ("depth-m
block"): two depth-(m-1) blocks joined onto a fresh node.  Exact cost:
5 * 2**(m-1) - 2 edges.

Constructions shipped:

* ``build_tm``            -- one depth-m block.
* ``single_step_log_flips`` -- forces log2(m) flips in one step with
                               5m - 3 edges.
* ``linear_total_flips``  -- forces floor((n-3)/4) flips within n edges.
* ``single_edge_flips``   -- forces one designated edge to flip k times;
                             'steered' mode uses depth 2r-1 blocks per
                             round and needs ties broken toward the
                             designated edge, 'robust' mode uses depth
                             3r-1 blocks so every comparison is strict
                             and no tie ever arises.
* ``two_flip_forcer``     -- 16 chains, head pairings, and a 7-edge
                             endgame forcing a step with 2 flips even
                             against a fixing variant.
* ``pairing_norecourse``  -- the static sequence that drives the greedy
                             no-recourse baseline to max in-degree
                             ~log2(n).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

from .core import NodeId, StateView, StepRecord
from .errors import AdversaryDesyncError, RejectedInputError


class AlgorithmDriver(Protocol):
    """What a construction needs from the driven algorithm."""

    config: object

    def process_edge(self, u: NodeId, v: NodeId) -> StepRecord: ...

    def view(self) -> StateView: ...


def tm_edge_count(m: int) -> int:
    """Exact number of edges a depth-m block costs: 5 * 2**(m-1) - 2."""
    if m < 1:
        raise RejectedInputError(f"block depth must be >= 1, got {m}")
    return 5 * 2 ** (m - 1) - 2


@dataclass(frozen=True)
class TmHandle:
    """Root and cost of one constructed saturated-root block."""

    root: NodeId
    m: int
    edges_used: int


@dataclass(frozen=True)
class SingleStepResult:
    records: tuple[StepRecord, ...]
    final: StepRecord
    edges_used: int
    emitted: tuple[tuple[NodeId, NodeId], ...]


@dataclass(frozen=True)
class LinearResult:
    records: tuple[StepRecord, ...]
    k: int
    forced_flips: int
    edges_used: int
    emitted: tuple[tuple[NodeId, NodeId], ...]


@dataclass(frozen=True)
class SingleEdgeResult:
    red_edge_id: int
    records: tuple[StepRecord, ...]
    edges_used: int
    red_flips: int
    tie_dodges: tuple[int, ...]
    mode: str
    emitted: tuple[tuple[NodeId, NodeId], ...]


@dataclass(frozen=True)
class TwoFlipResult:
    records: tuple[StepRecord, ...]
    final: StepRecord
    edges_used: int
    pairing_edges: int
    emitted: tuple[tuple[NodeId, NodeId], ...]


class RecordingDriver:
    """Transparent wrapper that records every emission and step record,
    so any adaptive run can be serialized and replayed without the
    adaptive machinery."""

    def __init__(self, inner: AlgorithmDriver):
        self.inner = inner
        self.emitted: list[tuple[NodeId, NodeId]] = []
        self.records: list[StepRecord] = []

    @property
    def config(self):
        return self.inner.config

    @property
    def state(self):
        return self.inner.state

    def process_edge(self, u: NodeId, v: NodeId) -> StepRecord:
        record = self.inner.process_edge(u, v)
        self.emitted.append((u, v))
        self.records.append(record)
        return record

    def view(self) -> StateView:
        return self.inner.view()


class _Session:
    """Emission bookkeeping for one construction run."""

    def __init__(self, driver: AlgorithmDriver):
        self.driver = driver
        self.view = driver.view()
        if self.view.constraint_c != 2:
            raise RejectedInputError(
                "adversary constructions require in-degree constraint 2")
        self._next_node = self.view.next_fresh_node_id()
        self.records: list[StepRecord] = []
        self.emitted: list[tuple[NodeId, NodeId]] = []

    def fresh(self) -> NodeId:
        node = self._next_node
        self._next_node += 1
        return node

    def emit(self, u: NodeId, v: NodeId) -> StepRecord:
        if self.view.same_tree(u, v):
            raise AdversaryDesyncError(f"emission ({u}, {v}) would close a cycle")
        record = self.driver.process_edge(u, v)
        self.records.append(record)
        self.emitted.append((u, v))
        return record

    def emit_free(self, preferred_head: NodeId, other: NodeId) -> tuple[StepRecord, NodeId]:
        """Emit an edge whose endpoints are both unsaturated, ordering the
        arguments so deterministic free-orientation policies put the head
        on ``preferred_head``; returns the head actually chosen."""
        policy = getattr(self.driver.config, "unsaturated_tie", None)
        if policy == "toward_second":
            record = self.emit(other, preferred_head)
        else:
            record = self.emit(preferred_head, other)
        return record, self.view.edge_head(record.step)

    def emit_tie_toward(self, preferred_side: NodeId, other: NodeId) -> StepRecord:
        """Emit a forced edge, ordering the arguments so deterministic
        path-tie policies flip on ``preferred_side`` when paths tie."""
        policy = getattr(self.driver.config, "path_tie", None)
        if policy == "second_endpoint":
            return self.emit(other, preferred_side)
        return self.emit(preferred_side, other)


def _build_block(session: _Session, m: int) -> TmHandle:
    view = session.view
    if m == 1:
        a, b = session.fresh(), session.fresh()
        _, head1 = session.emit_free(b, a)
        c, d = session.fresh(), session.fresh()
        _, head2 = session.emit_free(d, c)
        record, root = session.emit_free(head2, head1)
        if view.in_degree(root) != 2 or record.flips != 0:
            raise AdversaryDesyncError("base block construction desynchronized")
        return TmHandle(root, 1, 3)
    left = _build_block(session, m - 1)
    right = _build_block(session, m - 1)
    joint = session.fresh()
    for sub in (left, right):
        record = session.emit(sub.root, joint)
        if view.edge_head(record.step) != joint or record.flips != 0:
            raise AdversaryDesyncError(
                "variant refused the zero-flip orientation toward a fresh node")
    return TmHandle(joint, m, left.edges_used + right.edges_used + 2)


def build_tm(driver: AlgorithmDriver, m: int) -> TmHandle:
    """Force the construction of one depth-m block; exact edge cost."""
    session = _Session(driver)
    handle = _build_block(session, m)
    expected = tm_edge_count(m)
    if handle.edges_used != expected or len(session.records) != expected:
        raise AdversaryDesyncError(
            f"block cost {handle.edges_used} != expected {expected}")
    return handle


def single_step_log_flips(driver: AlgorithmDriver, m: int) -> SingleStepResult:
    """Force log2(m) flips in a single step using 5m - 3 edges total.

    Tie-safe: both sides present equal shortest paths, so any variant
    flips exactly log2(m) edges on the final connection."""
    if m < 2 or m & (m - 1):
        raise RejectedInputError(f"m must be a power of two >= 2, got {m}")
    depth = m.bit_length() - 1
    session = _Session(driver)
    first = _build_block(session, depth)
    second = _build_block(session, depth)
    final = session.emit(first.root, second.root)
    if final.flips != depth:
        raise AdversaryDesyncError(
            f"final step flipped {final.flips} edges, expected {depth}")
    edges_used = len(session.records)
    if edges_used != 5 * m - 3:
        raise AdversaryDesyncError(
            f"construction used {edges_used} edges, expected {5 * m - 3}")
    return SingleStepResult(tuple(session.records), final, edges_used,
                            tuple(session.emitted))


def linear_total_flips(driver: AlgorithmDriver, n_budget: int) -> LinearResult:
    """Force at least floor((n_budget - 3) / 4) flips in total within
    n_budget edges: k+1 depth-1 blocks, then k root-to-root connections,
    each of which must flip at least one edge."""
    if n_budget < 7:
        raise RejectedInputError(f"budget must be >= 7, got {n_budget}")
    k = (n_budget - 3) // 4
    session = _Session(driver)
    blocks = [_build_block(session, 1) for _ in range(k + 1)]
    forced = 0
    for i in range(1, k + 1):
        record = session.emit(blocks[i].root, blocks[0].root)
        if record.flips < 1:
            raise AdversaryDesyncError("connection between saturated roots caused no flip")
        forced += record.flips
    edges_used = len(session.records)
    if edges_used != 4 * k + 3:
        raise AdversaryDesyncError(f"used {edges_used} edges, expected {4 * k + 3}")
    return LinearResult(tuple(session.records), k, forced, edges_used,
                        tuple(session.emitted))


def _single_edge_round_depth(round_index: int, mode: str) -> int:
    if mode == "steered":
        return 2 * round_index - 1
    return 3 * round_index - 1


def single_edge_budget(k: int, mode: str = "robust") -> int:
    """Closed-form edge cost of forcing k flips on the designated edge."""
    if k < 0:
        raise RejectedInputError(f"k must be >= 0, got {k}")
    if mode == "steered":
        # 1 + sum_{r=1..k} (2*(5*2^(2r-2) - 2) + 2) = 1 + (10/3)(4^k - 1) - 2k
        return 1 + 10 * (4 ** k - 1) // 3 - 2 * k
    if mode == "robust":
        # 1 + sum_{r=1..k} (2*(5*2^(3r-2) - 2) + 2) = 1 + (20/7)(8^k - 1) - 2k
        return 1 + 20 * (8 ** k - 1) // 7 - 2 * k
    raise RejectedInputError(f"unknown mode {mode!r}")


def single_edge_budget_by_sum(k: int, mode: str = "robust") -> int:
    """Same cost by directly summing the per-round block sizes."""
    if mode not in ("steered", "robust"):
        raise RejectedInputError(f"unknown mode {mode!r}")
    total = 1
    for r in range(1, k + 1):
        total += 2 * tm_edge_count(_single_edge_round_depth(r, mode)) + 2
    return total


def single_edge_flips(driver: AlgorithmDriver, k: int, mode: str = "robust") -> SingleEdgeResult:
    """Force the first emitted edge to flip k times.

    Each round attaches two fresh blocks to the designated edge's current
    head; the second attachment makes the path through the designated
    edge the cheapest flip.  In 'steered' mode (round depth 2r-1) that
    comparison is a tie, which the adversary steers through its emission
    order when the variant's tie policy is deterministic; a tie resolved
    against the construction is recorded in ``tie_dodges``, not fatal.
    In 'robust' mode (round depth 3r-1) the designated edge's side is
    strictly shorter every round, so any variant must flip it."""
    if k < 0:
        raise RejectedInputError(f"k must be >= 0, got {k}")
    if mode not in ("steered", "robust"):
        raise RejectedInputError(f"unknown mode {mode!r}")
    session = _Session(driver)
    view = session.view
    a, b = session.fresh(), session.fresh()
    record, _ = session.emit_free(b, a)
    red = record.step
    dodges: list[int] = []
    for r in range(1, k + 1):
        depth = _single_edge_round_depth(r, mode)
        first = _build_block(session, depth)
        second = _build_block(session, depth)
        head = view.edge_head(red)
        flips_before = view.edge_flip_count(red)
        session.emit(first.root, head)
        session.emit_tie_toward(head, second.root)
        if view.edge_flip_count(red) == flips_before:
            if mode == "robust":
                raise AdversaryDesyncError(
                    f"designated edge did not flip in round {r} despite a strict minimum")
            dodges.append(r)
    edges_used = len(session.records)
    expected = single_edge_budget(k, mode)
    if edges_used != expected:
        raise AdversaryDesyncError(f"used {edges_used} edges, expected {expected}")
    return SingleEdgeResult(
        red_edge_id=red,
        records=tuple(session.records),
        edges_used=edges_used,
        red_flips=view.edge_flip_count(red),
        tie_dodges=tuple(dodges),
        mode=mode,
        emitted=tuple(session.emitted),
    )


def _emit_chain(session: _Session, length: int) -> tuple[list[NodeId], list[int]]:
    """Emit one undirected path of ``length`` edges through fresh nodes,
    nudging free orientations forward; returns (nodes, edge ids)."""
    nodes = [session.fresh()]
    eids: list[int] = []
    for _ in range(length):
        nxt = session.fresh()
        record, _ = session.emit_free(nxt, nodes[-1])
        eids.append(record.step)
        nodes.append(nxt)
    return nodes, eids


def _chain_best_head(session: _Session, nodes: list[NodeId], eids: list[int],
                     min_run: int) -> NodeId:
    """End node of the longest directed run along the path (ties: smaller
    id); requires the run to be at least ``min_run`` long."""
    view = session.view
    best_depth, best_node = -1, -1
    run = 0
    for i, eid in enumerate(eids):          # forward runs end at nodes[i+1]
        run = run + 1 if view.edge_head(eid) == nodes[i + 1] else 0
        if run > best_depth or (run == best_depth and nodes[i + 1] < best_node):
            best_depth, best_node = run, nodes[i + 1]
    run = 0
    for i in range(len(eids) - 1, -1, -1):  # backward runs end at nodes[i]
        run = run + 1 if view.edge_head(eids[i]) == nodes[i] else 0
        if run > best_depth or (run == best_depth and nodes[i] < best_node):
            best_depth, best_node = run, nodes[i]
    if best_depth < min_run:
        raise AdversaryDesyncError(
            f"no directed run of length {min_run} survived on a chain")
    return best_node


def _component_saturated_root(session: _Session, nodes: Sequence[NodeId]) -> NodeId | None:
    view = session.view
    for node in sorted(nodes):
        if view.in_degree(node) >= 2:
            return node
    return None


def two_flip_forcer(driver: AlgorithmDriver, chain_length: int) -> TwoFlipResult:
    """Force a step with at least two flips out of any shipped variant,
    including the sample fixing variant.

    Sixteen chains are emitted (chains cannot be dismantled by single
    fixing flips: reversing an interior edge just relocates the saturated
    node).  Their heads are paired into eight saturated-root blocks, the
    blocks are paired twice to produce two roots at shortest-path
    distance 2, and the final root-to-root edge then has no flip cheaper
    than 2."""
    if chain_length < 18:
        raise RejectedInputError(
            f"chains must be at least 18 edges long, got {chain_length}")
    session = _Session(driver)
    view = session.view
    components: list[tuple[list[NodeId], list[int]]] = [
        _emit_chain(session, chain_length) for _ in range(16)
    ]
    roots: list[NodeId] = []
    chains: list[tuple[list[NodeId], list[int]]] = []
    for nodes, eids in components:
        sat = _component_saturated_root(session, nodes)
        if sat is not None:
            roots.append(sat)
        else:
            chains.append((nodes, eids))
    pairing_edges = 0
    while len(roots) < 8:
        if len(chains) < 2:
            raise AdversaryDesyncError(
                "fewer than 8 block-or-chain resources available")
        n1, e1 = chains.pop(0)
        n2, e2 = chains.pop(0)
        h1 = _chain_best_head(session, n1, e1, chain_length // 2)
        h2 = _chain_best_head(session, n2, e2, chain_length // 2)
        record, root = session.emit_free(h2, h1)
        pairing_edges += 1
        if view.in_degree(root) != 2:
            raise AdversaryDesyncError("head pairing did not produce a saturated root")
        roots.append(root)
    roots = roots[:8]

    # Pair the eight roots; each connection forces one flip and the edge
    # head marks which side absorbed it.
    stage_one: list[NodeId] = []
    for i in (0, 2, 4, 6):
        record = session.emit_tie_toward(roots[i + 1], roots[i])
        if record.flips < 1:
            raise AdversaryDesyncError("root pairing caused no flip")
        stage_one.append(view.edge_head(record.step))
    # Pair the absorbers; the absorbing side's root ends with both
    # in-neighbors saturated, i.e. shortest-path distance 2.
    stage_two: list[NodeId] = []
    for i in (0, 2):
        record = session.emit_tie_toward(stage_one[i + 1], stage_one[i])
        winner = view.edge_head(record.step)
        if view.nearest_unsaturated(winner).length != 2:
            raise AdversaryDesyncError(
                "tie resolved against the construction: no distance-2 root")
        stage_two.append(winner)
    final = session.emit(stage_two[0], stage_two[1])
    if final.flips < 2:
        raise AdversaryDesyncError(
            f"final step flipped {final.flips} edges, expected at least 2")
    return TwoFlipResult(
        records=tuple(session.records),
        final=final,
        edges_used=len(session.records),
        pairing_edges=pairing_edges,
        emitted=tuple(session.emitted),
    )


def pairing_norecourse(n: int) -> list[tuple[NodeId, NodeId]]:
    """Static sequence driving the greedy baseline to max in-degree
    ceil(log2 n) when n = 2**k - 1, floor(log2 n) otherwise (1 for n=1).

    Round r emits pairs between the nodes that won in-degree r-1 in the
    previous round; the greedy tie rule (smaller id wins) makes the
    winners predictable, so no adaptivity is needed.  Leftover budget is
    spent on fresh non-incident pairs, which never raise the maximum."""
    if n < 1:
        raise RejectedInputError(f"n must be >= 1, got {n}")
    take_ceil = (n & (n + 1)) == 0 and n >= 3    # n = 2**k - 1
    sequence: list[tuple[NodeId, NodeId]] = []
    next_node = 0

    def fresh() -> NodeId:
        nonlocal next_node
        node = next_node
        next_node += 1
        return node

    def quota(r: int) -> int:
        p = 2 ** r
        return (n + p - 1) // p if take_ceil else n // p

    winners: list[NodeId] = []
    for _ in range(quota(1)):
        a, b = fresh(), fresh()
        sequence.append((a, b))
        winners.append(min(a, b))
    r = 2
    while quota(r) >= 1 and len(winners) >= 2:
        next_winners: list[NodeId] = []
        for j in range(quota(r)):
            a, b = winners[2 * j], winners[2 * j + 1]
            sequence.append((a, b))
            next_winners.append(min(a, b))
        winners = next_winners
        r += 1
    while len(sequence) < n:
        a, b = fresh(), fresh()
        sequence.append((a, b))
    return sequence
