"""Shortest-path online edge orientation for acyclic arrival sequences.

Maintains in-degree at most c (c >= 2) on every node.  An arriving edge
between two unsaturated endpoints is oriented by policy with no flips;
with exactly one unsaturated endpoint it is oriented toward it; with
both endpoints saturated, the algorithm finds the nearest unsaturated
node on each side, orients the new edge toward the side with the
shorter path, and flips that whole path.

Also ships the no-recourse greedy baseline (orient toward the smaller
in-degree) and a sample "fixing" variant that additionally spends at
most one unforced flip per step to dismantle a saturated node whose
in-neighbor still has in-degree zero.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import NodeId, OrientationState, StateView, StepRecord
from .errors import AcyclicityViolationError, RecourseError, RejectedInputError

UNSAT_POLICIES = ("toward_first", "toward_second", "random")
PATH_POLICIES = ("first_endpoint", "second_endpoint", "random")

PolicyCallback = Callable[[NodeId, NodeId], NodeId]


@dataclass(frozen=True)
class SpConfig:
    """Degrees of freedom of a shortest-path variant.

    ``unsaturated_tie`` picks the head when both endpoints are
    unsaturated; ``path_tie`` picks the side to flip when both paths
    have equal length.  Either may be a callback (u, v) -> chosen node.
    Random policies require a seed.
    """

    constraint_c: int = 2
    unsaturated_tie: str | PolicyCallback = "toward_first"
    path_tie: str | PolicyCallback = "first_endpoint"
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.constraint_c < 2:
            raise RejectedInputError(f"constraint_c must be >= 2, got {self.constraint_c}")
        needs_seed = False
        if not callable(self.unsaturated_tie):
            if self.unsaturated_tie not in UNSAT_POLICIES:
                raise RejectedInputError(f"unknown unsaturated_tie policy {self.unsaturated_tie!r}")
            needs_seed |= self.unsaturated_tie == "random"
        if not callable(self.path_tie):
            if self.path_tie not in PATH_POLICIES:
                raise RejectedInputError(f"unknown path_tie policy {self.path_tie!r}")
            needs_seed |= self.path_tie == "random"
        if needs_seed and self.seed is None:
            raise RejectedInputError("random tie policies require a seed")


def _resolve_policy(policy: str | PolicyCallback, first: bool,
                    rng: random.Random | None) -> PolicyCallback:
    if callable(policy):
        def checked(u: NodeId, v: NodeId) -> NodeId:
            out = policy(u, v)
            if out != u and out != v:
                raise RejectedInputError(f"policy callback returned non-endpoint {out}")
            return out
        return checked
    if policy == "random":
        assert rng is not None
        return lambda u, v: rng.choice((u, v))
    if first:
        return lambda u, v: u
    return lambda u, v: v


class ShortestPathOrienter:
    """Online orienter driving one OrientationState; refuses cyclic input."""

    def __init__(self, config: SpConfig | None = None):
        self.config = config or SpConfig()
        cfg = self.config
        self._rng = random.Random(cfg.seed) if cfg.seed is not None else None
        self._pick_unsat = _resolve_policy(
            cfg.unsaturated_tie, cfg.unsaturated_tie == "toward_first", self._rng)
        self._pick_path = _resolve_policy(
            cfg.path_tie, cfg.path_tie == "first_endpoint", self._rng)
        self.state = OrientationState(cfg.constraint_c)
        self.cumulative_flips = 0

    def view(self) -> StateView:
        return StateView(self.state)

    def process_edge(self, u: NodeId, v: NodeId) -> StepRecord:
        st = self.state
        if u == v:
            raise RejectedInputError(f"self-loop ({u}, {v}) rejected")
        if st.same_tree(u, v):
            raise AcyclicityViolationError(
                f"edge ({u}, {v}) closes a cycle; this orienter requires acyclic arrivals")
        c = st.constraint_c
        du = st.in_degree(u)
        dv = st.in_degree(v)
        flips = 0
        if du < c and dv < c:
            head = self._pick_unsat(u, v)
            st.insert_edge(u, v, head)
        elif du < c:
            st.insert_edge(u, v, u)
        elif dv < c:
            st.insert_edge(u, v, v)
        else:
            pu = st.nearest_unsaturated(u)
            pv = st.nearest_unsaturated(v)
            if pu.length < pv.length:
                head, chosen = u, pu
            elif pv.length < pu.length:
                head, chosen = v, pv
            else:
                head = self._pick_path(u, v)
                chosen = pu if head == u else pv
            st.insert_edge(u, v, head)
            flips = st.flip_path(chosen)
        self.cumulative_flips += flips
        return StepRecord(
            step=st.num_edges - 1,
            flips=flips,
            cumulative_flips=self.cumulative_flips,
            max_in_degree=st.max_in_degree(),
            path_length_used=flips,
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


class GreedyOrienter:
    """No-recourse baseline: orient toward the endpoint with smaller
    in-degree (tie: smaller node id).  Accepts cyclic inputs."""

    def __init__(self) -> None:
        self.state = OrientationState(2)
        self.cumulative_flips = 0

    def view(self) -> StateView:
        return StateView(self.state)

    def process_edge(self, u: NodeId, v: NodeId) -> StepRecord:
        st = self.state
        if u == v:
            raise RejectedInputError(f"self-loop ({u}, {v}) rejected")
        head = min((st.in_degree(u), u), (st.in_degree(v), v))[1]
        st.insert_edge(u, v, head)
        return StepRecord(
            step=st.num_edges - 1,
            flips=0,
            cumulative_flips=0,
            max_in_degree=st.max_in_degree(),
            path_length_used=0,
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


class FixingShortestPathOrienter(ShortestPathOrienter):
    """Shortest-path variant with one unforced "fixing" flip per step.

    After the forced processing of each arrival it looks for a saturated
    node with an in-neighbor of in-degree zero and reverses that edge,
    dismantling the saturated node without creating a new one.  Free
    flips are tracked separately (``free_flips``) and never counted in
    the step's forced flips.
    """

    def __init__(self, config: SpConfig | None = None):
        super().__init__(config)
        self.free_flips = 0

    def process_edge(self, u: NodeId, v: NodeId) -> StepRecord:
        record = super().process_edge(u, v)
        self._fix_once()
        return record

    def _fix_once(self) -> None:
        st = self.state
        c = st.constraint_c
        best: tuple[NodeId, NodeId] | None = None
        for node, deg in sorted(st._in_degree.items()):
            if deg < c:
                continue
            zeros = [t for t in st.in_neighbors(node) if st.in_degree(t) == 0]
            if zeros:
                best = (node, min(zeros))
                break
        if best is None:
            return
        node, tail = best
        eid = min(e for e in st._in_eids[node] if st.edges[e].tail == tail)
        st._flip_edge(eid)
        self.free_flips += 1
