"""Cascading all-flip orientation for inputs of bounded arboricity.

Each arriving edge gets an arbitrary initial orientation.  Whenever a
node's in-degree exceeds the maintained bound Delta, all of its
incoming edges are reversed at once (an "all-flip"); reversals may
overload other nodes, which are processed from a FIFO queue until every
node is back at or below Delta.  If the cumulative input admits an
orientation with in-degree at most delta and Delta >= 2*delta, the
cascade terminates within an exact flip budget; a budget overrun is
reported as a broken arboricity promise rather than looping forever.

Diagnostics: against a fixed reference orientation with in-degree at
most delta, the number of edges oriented differently (the disagreement
count) rises by at most one per insertion and falls by at least
Delta + 1 - 2*delta per all-flip.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import NodeId, OrientationState, StateView, StepRecord
from .errors import (
    ArboricityPromiseError,
    ContractViolationError,
    RecourseError,
    RejectedInputError,
)

INITIAL_POLICIES = ("toward_first", "toward_second", "random")


@dataclass(frozen=True)
class AllFlipConfig:
    """delta: promised orientation bound; Delta: maintained bound (>= 2*delta)."""

    delta: int
    Delta: int
    initial_orientation: str = "toward_first"
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.delta < 1:
            raise RejectedInputError(f"delta must be >= 1, got {self.delta}")
        if self.Delta < 2 * self.delta:
            raise RejectedInputError(
                f"Delta must be >= 2*delta ({2 * self.delta}), got {self.Delta}")
        if self.initial_orientation not in INITIAL_POLICIES:
            raise RejectedInputError(
                f"unknown initial orientation policy {self.initial_orientation!r}")
        if self.initial_orientation == "random" and self.seed is None:
            raise RejectedInputError("random initial orientation requires a seed")


@dataclass(frozen=True)
class PotentialDiagnostic:
    """Disagreement count against a fixed reference orientation."""

    reference_orientation: Mapping[int, NodeId]
    psi: int


def validate_reference(state: OrientationState, reference: Mapping[int, NodeId],
                       delta: int) -> None:
    """Reference must cover exactly the current edges, pick real endpoints,
    and have maximum in-degree at most delta."""
    if set(reference) != set(range(state.num_edges)):
        raise ContractViolationError("reference orientation must cover exactly the current edge set")
    loads: dict[NodeId, int] = {}
    for eid, head in reference.items():
        edge = state.edges[eid]
        if head != edge.tail and head != edge.head:
            raise ContractViolationError(
                f"reference head {head} is not an endpoint of edge {eid}")
        loads[head] = loads.get(head, 0) + 1
    if loads and max(loads.values()) > delta:
        raise ContractViolationError(
            f"reference orientation exceeds in-degree {delta}")


def potential(state: OrientationState, reference: Mapping[int, NodeId],
              delta: int) -> PotentialDiagnostic:
    """Independent recount of the disagreement count (test oracle for the
    incrementally maintained value)."""
    validate_reference(state, reference, delta)
    psi = sum(1 for e in state.edges if e.head != reference[e.edge_id])
    return PotentialDiagnostic(dict(reference), psi)


class AllFlipOrienter:
    """Online orienter maintaining in-degree <= Delta via all-flips.

    Accepts cyclic inputs and parallel edges; rejects self-loops.  When a
    reference orientation is attached, the disagreement count is tracked
    incrementally: per-insertion deltas and per-all-flip drops land in
    ``insertion_psi_deltas`` and ``allflip_psi_drops``.
    """

    def __init__(self, config: AllFlipConfig):
        self.config = config
        self.state = OrientationState(max(2, config.Delta))
        self._rng = random.Random(config.seed) if config.seed is not None else None
        self.cumulative_flips = 0
        self.cumulative_allflips = 0
        self._reference: dict[int, NodeId] | None = None
        self.psi = 0
        self.insertion_psi_deltas: list[int] = []
        self.allflip_psi_drops: list[int] = []

    def view(self) -> StateView:
        return StateView(self.state)

    def attach_reference(self, reference: Mapping[int, NodeId]) -> None:
        """Track disagreements against a full-sequence reference orientation.

        ``reference`` maps every edge id that will ever arrive to its
        reference head; it is consulted lazily as edges arrive.  Must be
        attached before the first edge.
        """
        if self.state.num_edges:
            raise ContractViolationError("attach the reference before any edge arrives")
        self._reference = dict(reference)

    def _flip_budget_exceeded(self, total_flips: int) -> bool:
        cfg = self.config
        slack = cfg.Delta + 1 - 2 * cfg.delta
        n = self.state.num_edges
        # total_flips <= n*(Delta+1)/slack + (Delta+1), checked exactly.
        return total_flips * slack > (n + slack) * (cfg.Delta + 1)

    def process_edge(self, u: NodeId, v: NodeId) -> StepRecord:
        if u == v:
            raise RejectedInputError(f"self-loop ({u}, {v}) rejected")
        st = self.state
        cfg = self.config
        if cfg.initial_orientation == "toward_first":
            head = u
        elif cfg.initial_orientation == "toward_second":
            head = v
        else:
            head = self._rng.choice((u, v))
        eid = st.insert_edge(u, v, head)
        ref = self._reference
        if ref is not None:
            bad = int(st.edges[eid].head != ref[eid])
            self.psi += bad
            self.insertion_psi_deltas.append(bad)

        flips = 0
        allflips = 0
        cap = cfg.Delta
        total_before = self.cumulative_flips
        queue: deque[NodeId] = deque()
        queued: set[NodeId] = set()
        if st.in_degree(head) > cap:
            queue.append(head)
            queued.add(head)
        while queue:
            x = queue.popleft()
            queued.discard(x)
            if st.in_degree(x) <= cap:
                continue
            incoming = sorted(st._in_eids[x])
            allflips += 1
            psi_before = self.psi
            for e in incoming:
                st._flip_edge(e)
                if ref is not None:
                    edge = st.edges[e]
                    was_bad = edge.tail != ref[e]   # pre-flip head is now the tail
                    now_bad = edge.head != ref[e]
                    self.psi += int(now_bad) - int(was_bad)
                flips += 1
            if ref is not None:
                self.allflip_psi_drops.append(psi_before - self.psi)
            for e in incoming:
                t = st.edges[e].head    # new head after reversal
                if st.in_degree(t) > cap and t not in queued:
                    queue.append(t)
                    queued.add(t)
            if self._flip_budget_exceeded(total_before + flips):
                raise ArboricityPromiseError(
                    f"flip budget exhausted after {st.num_edges} edges: input does not "
                    f"admit a {cfg.delta}-orientation")
        self.cumulative_flips = total_before + flips
        self.cumulative_allflips += allflips
        return StepRecord(
            step=st.num_edges - 1,
            flips=flips,
            cumulative_flips=self.cumulative_flips,
            max_in_degree=st.max_in_degree(),
            path_length_used=allflips,
        )

    def run_sequence(self, edges: Sequence[tuple[NodeId, NodeId]]) -> list[StepRecord]:
        records = []
        for i, (u, v) in enumerate(edges):
            try:
                records.append(self.process_edge(u, v))
            except RecourseError as err:
                err.step_index = i
                raise
        return records

    def potential(self, reference: Mapping[int, NodeId] | None = None) -> PotentialDiagnostic:
        ref = reference if reference is not None else self._reference
        if ref is None:
            raise ContractViolationError("no reference orientation available")
        current = {eid: ref[eid] for eid in range(self.state.num_edges)}
        return potential(self.state, current, self.config.delta)


def root_away_orientation(edges: Sequence[tuple[NodeId, NodeId]]) -> dict[int, NodeId]:
    """Reference orientation for forests: per component, orient every edge
    away from the smallest-id root, giving in-degree at most one."""
    adjacency: dict[NodeId, list[tuple[NodeId, int]]] = {}
    for eid, (u, v) in enumerate(edges):
        adjacency.setdefault(u, []).append((v, eid))
        adjacency.setdefault(v, []).append((u, eid))
    heads: dict[int, NodeId] = {}
    seen: set[NodeId] = set()
    for root in sorted(adjacency):
        if root in seen:
            continue
        seen.add(root)
        frontier = [root]
        while frontier:
            nxt: list[NodeId] = []
            for x in frontier:
                for nbr, eid in adjacency[x]:
                    if eid in heads:
                        continue
                    heads[eid] = nbr
                    if nbr not in seen:
                        seen.add(nbr)
                        nxt.append(nbr)
            frontier = nxt
    return heads
