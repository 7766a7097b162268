"""Independent brute-force helpers used as test oracles.

These deliberately avoid the library's search code paths: shortest
distances come from relax-until-fixpoint, offline optima from full
enumeration.
"""
from __future__ import annotations

import itertools
import random

INF = float("inf")


def bf_nearest_unsaturated_length(edges, constraint, node):
    """Distance from ``node`` back along orientations to the nearest
    unsaturated node, by Bellman-Ford-style relaxation over reversed
    edges; INF if unreachable."""
    in_degree: dict[int, int] = {}
    nodes = set()
    for tail, head in edges:
        nodes.add(tail)
        nodes.add(head)
        in_degree[head] = in_degree.get(head, 0) + 1
    nodes.add(node)
    dist = {v: (0 if in_degree.get(v, 0) < constraint else INF) for v in nodes}
    changed = True
    while changed:
        changed = False
        for tail, head in edges:
            # Path runs tail -> head, so the search from ``node`` relaxes
            # dist[head] from dist[tail].
            if dist[tail] + 1 < dist[head]:
                dist[head] = dist[tail] + 1
                changed = True
    return dist[node]


def bf_min_max_load(neighbor_sets):
    """Exhaustive minimum over all assignments of the maximum load."""
    best = INF
    for combo in itertools.product(*neighbor_sets):
        loads: dict[int, int] = {}
        for y in combo:
            loads[y] = loads.get(y, 0) + 1
        best = min(best, max(loads.values()))
    return best


def bf_heights(matcher):
    """Residual heights by relaxation, independent of the matcher's BFS."""
    cap = matcher.config.capacity
    dist_l = {x: INF for x in range(matcher.num_left)}
    dist_r = {y: (0 if load < cap else INF) for y, load in matcher.loads.items()}
    changed = True
    while changed:
        changed = False
        for x in range(matcher.num_left):
            mx = matcher.match[x]
            for y in matcher.neighbor_sorted[x]:
                if y != mx and dist_r[y] + 1 < dist_l[x]:
                    dist_l[x] = dist_r[y] + 1
                    changed = True
            if dist_l[x] + 1 < dist_r[mx]:
                dist_r[mx] = dist_l[x] + 1
                changed = True
    return dist_l, dist_r


def all_small_forests(max_nodes):
    """Every labeled forest (as an edge tuple) on node sets {0..k-1},
    k <= max_nodes, in a deterministic order."""
    out = []
    for k in range(1, max_nodes + 1):
        pairs = list(itertools.combinations(range(k), 2))
        for mask in range(1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            parent = list(range(k))

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            acyclic = True
            for u, v in chosen:
                ru, rv = find(u), find(v)
                if ru == rv:
                    acyclic = False
                    break
                parent[ru] = rv
            if acyclic:
                out.append(tuple(chosen))
    return out


def random_saturating_state(seed, n_edges, constraint=2):
    """Drive a fresh shortest-path orienter over a random forest and
    return it (used to fuzz state invariants)."""
    from recourse import ShortestPathOrienter, SpConfig
    from recourse.generators import gen_forest

    orienter = ShortestPathOrienter(SpConfig(
        constraint_c=constraint, unsaturated_tie="random",
        path_tie="random", seed=seed))
    orienter.run_sequence(gen_forest(n_edges, seed=seed))
    return orienter


class NaiveOrienter:
    """Reference shortest-path orienter sharing no code with the real one.

    Keeps edges as a plain list, recounts in-degrees from scratch on
    every query, and finds nearest-unsaturated paths by relaxation with
    explicit lexicographic tie-breaking that mirrors the smallest-id
    frontier rule.  Policies limited to the deterministic ones.
    """

    def __init__(self, constraint=2, unsat="toward_first", path="first_endpoint"):
        self.c = constraint
        self.unsat = unsat
        self.path = path
        self.edges = []          # [tail, head]
        self.total = 0

    def _deg(self, v):
        return sum(1 for e in self.edges if e[1] == v)

    def _nodes(self):
        return {w for e in self.edges for w in e}

    def _component(self, v):
        seen = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for a, b in self.edges:
                    other = b if a == x else a if b == x else None
                    if other is not None and other not in seen:
                        seen.add(other)
                        nxt.append(other)
            frontier = nxt
        return seen

    def _search(self, target):
        """Shortest path from an unsaturated node to ``target`` as a node
        list, matching the layered smallest-id order exactly."""
        if self._deg(target) < self.c:
            return [target]
        parent = {target: None}
        layer = [target]
        while layer:
            nxt = []
            for x in layer:
                tails = sorted({e[0] for e in self.edges
                                if e[1] == x and e[0] not in parent})
                for t in tails:
                    parent[t] = x
                    if self._deg(t) < self.c:
                        out = [t]
                        while out[-1] != target:
                            out.append(parent[out[-1]])
                        return out
                    nxt.append(t)
            layer = sorted(nxt)
        raise AssertionError("no unsaturated node reachable")

    def process(self, u, v):
        assert u != v
        assert v not in self._component(u) or u not in self._nodes()
        du, dv = self._deg(u), self._deg(v)
        flips = 0
        if du < self.c and dv < self.c:
            head = u if self.unsat == "toward_first" else v
            self.edges.append([v if head == u else u, head])
        elif du < self.c:
            self.edges.append([v, u])
        elif dv < self.c:
            self.edges.append([u, v])
        else:
            pu = self._search(u)
            pv = self._search(v)
            if len(pu) < len(pv):
                head, chosen = u, pu
            elif len(pv) < len(pu):
                head, chosen = v, pv
            else:
                head = u if self.path == "first_endpoint" else v
                chosen = pu if head == u else pv
            self.edges.append([v if head == u else u, head])
            for a, b in zip(chosen, chosen[1:]):
                for e in self.edges:
                    if e[0] == a and e[1] == b:
                        e[0], e[1] = b, a
                        break
                flips += 1
        self.total += flips
        degs = [self._deg(w) for w in self._nodes()]
        return flips, self.total, max(degs), len(self.edges) - 1
