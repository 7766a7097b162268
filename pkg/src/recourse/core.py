"""Oriented-graph state shared by the orientation algorithms.

The state holds the node set, the oriented edges, per-node in-degree
counters, a union-find component index over the undirected edge set,
and the reverse breadth-first search that finds the nearest unsaturated
node (a node whose in-degree is below the constraint).

Edges never leave the state; the graph only grows.  Flipping an edge
exchanges its tail and head and bumps its flip counter, so per-edge
recourse is directly observable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import (
    ContractViolationError,
    InfeasibleError,
    InternalConsistencyError,
    RejectedInputError,
)
from .union_find import UnionFind

NodeId = int


@dataclass(slots=True)
class OrientedEdge:
    """One undirected edge with its current orientation tail -> head.

    The edge id equals the 0-based position in the arrival sequence.
    flip_count increments exactly when tail and head are exchanged.
    """

    edge_id: int
    tail: NodeId
    head: NodeId
    flip_count: int = 0

    def endpoints(self) -> tuple[NodeId, NodeId]:
        return (self.tail, self.head)


@dataclass(frozen=True, slots=True)
class PathToUnsaturated:
    """Directed path u' -> ... -> u whose first node is unsaturated and
    whose remaining nodes are saturated; consecutive nodes are joined by
    an edge oriented along the path direction."""

    nodes: tuple[NodeId, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def source(self) -> NodeId:
        """The unsaturated endpoint the path starts from."""
        return self.nodes[0]

    @property
    def target(self) -> NodeId:
        return self.nodes[-1]


@dataclass(frozen=True, slots=True)
class StepRecord:
    """Per-arrival trace record.

    ``flips`` counts edge reversals caused by this arrival (swaps, for
    the matcher).  ``max_in_degree`` is the maximum in-degree after the
    step completed (maximum right-node load, for the matcher).
    ``path_length_used`` is the length of the path the step flipped
    (the residual path length, for the matcher; the number of all-flip
    operations, for the cascading orienter).
    """

    step: int
    flips: int
    cumulative_flips: int
    max_in_degree: int
    path_length_used: int


class OrientationState:
    """Mutable oriented-graph state with in-degree constraint bookkeeping.

    Single-writer: one algorithm instance drives one state.  Read-only
    views handed to adversaries are valid only between mutation steps.
    """

    __slots__ = ("constraint_c", "edges", "_in_degree", "_in_eids",
                 "_components", "_deg_hist", "_max_deg")

    def __init__(self, constraint_c: int = 2):
        if constraint_c < 2:
            raise RejectedInputError(f"in-degree constraint must be >= 2, got {constraint_c}")
        self.constraint_c = constraint_c
        self.edges: list[OrientedEdge] = []
        self._in_degree: dict[NodeId, int] = {}
        self._in_eids: dict[NodeId, set[int]] = {}
        self._components = UnionFind()
        self._deg_hist: dict[int, int] = {}
        self._max_deg = 0

    # -- node / degree queries ------------------------------------------

    def _ensure_node(self, v: NodeId) -> None:
        if v not in self._in_degree:
            if v < 0:
                raise RejectedInputError(f"node ids must be non-negative, got {v}")
            self._in_degree[v] = 0
            self._in_eids[v] = set()

    def nodes(self) -> Iterator[NodeId]:
        return iter(self._in_degree)

    @property
    def num_nodes(self) -> int:
        return len(self._in_degree)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def in_degree(self, v: NodeId) -> int:
        return self._in_degree.get(v, 0)

    def is_saturated(self, v: NodeId) -> bool:
        return self._in_degree.get(v, 0) >= self.constraint_c

    def in_neighbors(self, v: NodeId) -> list[NodeId]:
        """Distinct tails of edges pointing into v, ascending."""
        edges = self.edges
        return sorted({edges[e].tail for e in self._in_eids.get(v, ())})

    def max_in_degree(self) -> int:
        """Current maximum in-degree, maintained in amortized O(1)."""
        m = self._max_deg
        hist = self._deg_hist
        while m > 0 and hist.get(m, 0) == 0:
            m -= 1
        self._max_deg = m
        return m

    def snapshot_in_degrees(self) -> dict[NodeId, int]:
        return dict(self._in_degree)

    def recompute_in_degrees(self) -> dict[NodeId, int]:
        """O(V+E) recount from the edge list; test oracle for the cache."""
        deg = {v: 0 for v in self._in_degree}
        for e in self.edges:
            deg[e.head] += 1
        return deg

    def recompute_max_in_degree(self) -> int:
        return max(self.recompute_in_degrees().values(), default=0)

    # -- mutation --------------------------------------------------------

    def _bump(self, v: NodeId, delta: int) -> None:
        old = self._in_degree[v]
        new = old + delta
        self._in_degree[v] = new
        hist = self._deg_hist
        if old > 0:
            hist[old] -= 1
        if new > 0:
            hist[new] = hist.get(new, 0) + 1
            if new > self._max_deg:
                self._max_deg = new

    def insert_edge(self, u: NodeId, v: NodeId, head: NodeId) -> int:
        """Append the edge (u, v) oriented toward ``head``; returns its id."""
        if u == v:
            raise RejectedInputError(f"self-loop ({u}, {v}) rejected")
        if head != u and head != v:
            raise ContractViolationError(f"head {head} is not an endpoint of ({u}, {v})")
        self._ensure_node(u)
        self._ensure_node(v)
        tail = v if head == u else u
        eid = len(self.edges)
        self.edges.append(OrientedEdge(eid, tail, head))
        self._in_eids[head].add(eid)
        self._bump(head, 1)
        self._components.union(u, v)
        return eid

    def _flip_edge(self, eid: int) -> None:
        e = self.edges[eid]
        old_head, old_tail = e.head, e.tail
        self._in_eids[old_head].remove(eid)
        self._in_eids[old_tail].add(eid)
        e.head, e.tail = old_tail, old_head
        e.flip_count += 1
        self._bump(old_head, -1)
        self._bump(old_tail, 1)

    def flip_path(self, path: PathToUnsaturated) -> int:
        """Reverse every edge along the path; returns the flip count.

        The in-degree of the path's last node drops by one and the first
        node's rises by one; interior nodes are unchanged.
        """
        nodes = path.nodes
        if len(nodes) <= 1:
            return 0
        edges = self.edges
        in_eids = self._in_eids
        eids: list[int] = []
        for a, b in zip(nodes, nodes[1:]):
            candidates = [e for e in in_eids.get(b, ()) if edges[e].tail == a]
            if not candidates:
                raise InternalConsistencyError(
                    f"stale path: no edge oriented {a} -> {b} in current state")
            eids.append(min(candidates))
        for eid in eids:
            self._flip_edge(eid)
        return len(eids)

    # -- searches --------------------------------------------------------

    def same_tree(self, u: NodeId, v: NodeId) -> bool:
        """True iff u and v lie in one connected component."""
        return self._components.connected(u, v)

    def nearest_unsaturated(self, u: NodeId) -> PathToUnsaturated:
        """Minimum-length path from an unsaturated node to ``u``.

        Breadth-first search from u against edge orientations (head to
        tail), layers and expansions in ascending node id, so ties break
        deterministically toward the smallest-id frontier.  Returns the
        length-0 path when u itself is unsaturated.
        """
        self._ensure_node(u)
        deg = self._in_degree
        c = self.constraint_c
        if deg[u] < c:
            return PathToUnsaturated((u,))
        edges = self.edges
        in_eids = self._in_eids
        parent: dict[NodeId, NodeId] = {u: u}
        layer = [u]
        while layer:
            nxt: list[NodeId] = []
            for x in layer:
                tails = sorted({edges[e].tail for e in in_eids[x]} - parent.keys())
                for t in tails:
                    parent[t] = x
                    if deg[t] < c:
                        chain = [t]
                        while chain[-1] != u:
                            chain.append(parent[chain[-1]])
                        return PathToUnsaturated(tuple(chain))
                    nxt.append(t)
            nxt.sort()
            layer = nxt
        raise InfeasibleError(
            f"no unsaturated node reachable from {u}: input is not a forest "
            f"(cannot happen on acyclic arrivals)")


class StateView:
    """Read-only accessor over an OrientationState.

    Live view, not a copy: valid only between mutation steps of the
    underlying algorithm (adversaries observe, then emit).
    """

    __slots__ = ("_state",)

    def __init__(self, state: OrientationState):
        self._state = state

    @property
    def constraint_c(self) -> int:
        return self._state.constraint_c

    @property
    def num_nodes(self) -> int:
        return self._state.num_nodes

    @property
    def num_edges(self) -> int:
        return self._state.num_edges

    def in_degree(self, v: NodeId) -> int:
        return self._state.in_degree(v)

    def is_saturated(self, v: NodeId) -> bool:
        return self._state.is_saturated(v)

    def in_neighbors(self, v: NodeId) -> list[NodeId]:
        return self._state.in_neighbors(v)

    def edge_head(self, eid: int) -> NodeId:
        return self._state.edges[eid].head

    def edge_endpoints(self, eid: int) -> tuple[NodeId, NodeId]:
        return self._state.edges[eid].endpoints()

    def edge_flip_count(self, eid: int) -> int:
        return self._state.edges[eid].flip_count

    def same_tree(self, u: NodeId, v: NodeId) -> bool:
        return self._state.same_tree(u, v)

    def nearest_unsaturated(self, u: NodeId) -> PathToUnsaturated:
        return self._state.nearest_unsaturated(u)

    def max_in_degree(self) -> int:
        return self._state.max_in_degree()

    def next_fresh_node_id(self) -> NodeId:
        """Smallest id strictly above every node mentioned so far."""
        st = self._state
        return max(st._in_degree, default=-1) + 1
