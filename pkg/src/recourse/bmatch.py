"""Online bipartite b-matching via shortest augmenting paths.

Left nodes arrive one by one, each naming a nonempty set of right
nodes.  Every arrived left node stays matched to exactly one named
right node, and no right node's load ever exceeds C*K (K is the
promised offline max load, C >= 2 the relaxation factor).  A right node
at full capacity is saturated.

When every named right node is saturated, the matcher searches the
residual graph (non-match edges point left-to-right, match edges point
right-to-left) for a shortest path to an unsaturated right node and
shifts the matches along it; each shifted left node is one swap.

Height diagnostics: a node's height is its shortest residual distance
to an unsaturated right node, recomputed on demand by an independent
multi-source search so it can serve as an oracle for the swap ledger.
Left heights are odd, right heights even.  Nodes with no residual route
are reported separately as unreachable rather than being folded into
the height map.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import StepRecord
from .errors import InfeasibleError, RecourseError, RejectedInputError

PICK_POLICIES = ("lowest_load_then_id", "first_listed", "random")

Rematch = tuple[int, int, int]   # (right, old left, new left)


@dataclass(frozen=True)
class BMatchConfig:
    K: int = 1
    C: int = 2
    pick_policy: str = "lowest_load_then_id"
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.K < 1:
            raise RejectedInputError(f"K must be >= 1, got {self.K}")
        if self.C < 2:
            raise RejectedInputError(f"C must be >= 2, got {self.C}")
        if self.pick_policy not in PICK_POLICIES:
            raise RejectedInputError(f"unknown pick policy {self.pick_policy!r}")
        if self.pick_policy == "random" and self.seed is None:
            raise RejectedInputError("random pick policy requires a seed")

    @property
    def capacity(self) -> int:
        return self.C * self.K


@dataclass(frozen=True)
class HeightReport:
    """Snapshot of residual distances to unsaturated right nodes.

    ``left_heights``/``right_heights`` hold finite heights only;
    ``unreachable_left``/``unreachable_right`` list the rest.  ``phi``
    is the swap-ledger potential: (height-1)/2 summed over left nodes
    (odd heights make each term an exact integer), with unreachable
    nodes accounted at the ceiling height 2*num_left+1 -- strictly above
    any finite residual distance, so the ledger keeps growing by at
    least one per swap even when a swap strands its old occupant.
    ``tail_counts[h]`` counts reachable left nodes with height >= 2h+1.
    """

    left_heights: dict[int, int]
    right_heights: dict[int, int]
    unreachable_left: tuple[int, ...]
    unreachable_right: tuple[int, ...]
    phi: int
    phi_reachable: int   # the same sum over reachable left nodes only
    tail_counts: dict[int, int]
    num_left: int


class OnlineMatcher:
    """Processes left-node arrivals against one growing bipartite instance."""

    def __init__(self, config: BMatchConfig | None = None):
        self.config = config or BMatchConfig()
        self._rng = random.Random(self.config.seed) if self.config.seed is not None else None
        self.neighbor_lists: list[tuple[int, ...]] = []   # as given, deduped
        self.neighbor_sorted: list[tuple[int, ...]] = []
        self.match: list[int] = []
        self.loads: dict[int, int] = {}
        self.matched_lefts: dict[int, set[int]] = {}
        self.namers: dict[int, set[int]] = {}
        self.cumulative_swaps = 0
        self.rematch_log: list[tuple[Rematch, ...]] = []
        self._max_load = 0

    @property
    def num_left(self) -> int:
        return len(self.match)

    def _register_right(self, y: int) -> None:
        if y not in self.loads:
            if y < 0:
                raise RejectedInputError(f"right node ids must be non-negative, got {y}")
            self.loads[y] = 0
            self.matched_lefts[y] = set()
            self.namers[y] = set()

    def _pick_unsaturated(self, ordered: tuple[int, ...], unsat: list[int]) -> int:
        policy = self.config.pick_policy
        if policy == "lowest_load_then_id":
            return min(unsat, key=lambda y: (self.loads[y], y))
        if policy == "first_listed":
            unsat_set = set(unsat)
            for y in ordered:
                if y in unsat_set:
                    return y
        return self._rng.choice(sorted(unsat))

    def process_arrival(self, neighbors: Iterable[int]) -> StepRecord:
        ordered: list[int] = []
        seen: set[int] = set()
        for y in neighbors:
            if y not in seen:
                seen.add(y)
                ordered.append(y)
        if not ordered:
            raise RejectedInputError("empty neighbor set rejected")
        lid = len(self.match)
        for y in ordered:
            self._register_right(y)
            self.namers[y].add(lid)
        ordered_t = tuple(ordered)
        self.neighbor_lists.append(ordered_t)
        self.neighbor_sorted.append(tuple(sorted(ordered_t)))
        cap = self.config.capacity

        unsat = [y for y in ordered_t if self.loads[y] < cap]
        if unsat:
            y = self._pick_unsaturated(ordered_t, unsat)
            self.match.append(y)
            self.matched_lefts[y].add(lid)
            self.loads[y] += 1
            self._max_load = max(self._max_load, self.loads[y])
            self.rematch_log.append(())
            swaps = 0
            path_len = 1
        else:
            path = self._shortest_augmenting_path(lid)
            swaps, path_len = self._apply_path(lid, path)
        self.cumulative_swaps += swaps
        return StepRecord(
            step=lid,
            flips=swaps,
            cumulative_flips=self.cumulative_swaps,
            max_in_degree=self._max_load,
            path_length_used=path_len,
        )

    def _shortest_augmenting_path(self, lid: int) -> list[int]:
        """Layered search over residual arcs, layers in ascending id, so the
        nearest unsaturated right node is found deterministically.
        Returns [x0, y1, x1, ..., yk]."""
        cap = self.config.capacity
        loads = self.loads
        match = self.match
        parent_r: dict[int, int] = {}
        parent_l: dict[int, int] = {lid: -1}
        layer_l = [lid]
        found: int | None = None
        while layer_l and found is None:
            next_r: list[int] = []
            for x in layer_l:
                mx = match[x] if x < len(match) else -1
                for y in self.neighbor_sorted[x]:
                    if y == mx or y in parent_r:
                        continue
                    parent_r[y] = x
                    if loads[y] < cap:
                        found = y
                        break
                    next_r.append(y)
                if found is not None:
                    break
            if found is not None:
                break
            next_r.sort()
            next_l: list[int] = []
            for y in next_r:
                for x in sorted(self.matched_lefts[y]):
                    if x not in parent_l:
                        parent_l[x] = y
                        next_l.append(x)
            next_l.sort()
            layer_l = next_l
        if found is None:
            raise InfeasibleError(
                "no unsaturated right node reachable: the input does not admit "
                "the promised offline matching")
        path = [found]
        while True:
            x = parent_r[path[-1]]
            path.append(x)
            y = parent_l[x]
            if y == -1:
                break
            path.append(y)
        path.reverse()
        return path

    def _apply_path(self, lid: int, path: list[int]) -> tuple[int, int]:
        # path = [x0, y1, x1, y2, ..., x_{k-1}, y_k]; x0 = lid is new.
        k = len(path) // 2
        rematches: list[Rematch] = []
        for i in range(1, k):
            y = path[2 * i - 1]
            x_old = path[2 * i]
            x_new = path[2 * i - 2]
            rematches.append((y, x_old, x_new))
        # Shift matches from the far end backwards: x_i moves y_i -> y_{i+1}.
        for i in range(k - 1, 0, -1):
            x = path[2 * i]
            y_old = path[2 * i - 1]
            y_new = path[2 * i + 1]
            self.matched_lefts[y_old].discard(x)
            self.matched_lefts[y_new].add(x)
            self.match[x] = y_new
        y1 = path[1]
        self.match.append(y1)
        self.matched_lefts[y1].add(lid)
        y_last = path[-1]
        self.loads[y_last] += 1
        self._max_load = max(self._max_load, self.loads[y_last])
        self.rematch_log.append(tuple(rematches))
        return k - 1, 2 * k - 1

    def run_sequence(self, arrivals: Sequence[Iterable[int]]) -> list[StepRecord]:
        records = []
        for i, nbrs in enumerate(arrivals):
            try:
                records.append(self.process_arrival(nbrs))
            except RecourseError as err:
                err.step_index = i
                raise
        return records

    # -- diagnostics ------------------------------------------------------

    def heights(self) -> HeightReport:
        """Multi-source search from every unsaturated right node over
        reversed residual arcs; independent of the per-arrival search."""
        cap = self.config.capacity
        loads = self.loads
        match = self.match
        dist_r: dict[int, int] = {}
        dist_l: dict[int, int] = {}
        layer_r = sorted(y for y, load in loads.items() if load < cap)
        for y in layer_r:
            dist_r[y] = 0
        d = 0
        while layer_r:
            d += 1
            next_l: list[int] = []
            for y in layer_r:
                for x in self.namers[y]:
                    if match[x] != y and x not in dist_l:
                        dist_l[x] = d
                        next_l.append(x)
            d += 1
            layer_r = []
            for x in next_l:
                y = match[x]
                if y not in dist_r:
                    dist_r[y] = d
                    layer_r.append(y)
        unreachable_left = tuple(x for x in range(len(match)) if x not in dist_l)
        unreachable_right = tuple(sorted(y for y in loads if y not in dist_r))
        phi_reachable = sum((h - 1) // 2 for h in dist_l.values())
        phi = phi_reachable + len(unreachable_left) * len(match)
        tail_counts: dict[int, int] = {}
        if dist_l:
            hmax = (max(dist_l.values()) - 1) // 2
            for h in range(hmax + 1):
                tail_counts[h] = sum(1 for v in dist_l.values() if v >= 2 * h + 1)
        return HeightReport(
            left_heights=dist_l,
            right_heights=dist_r,
            unreachable_left=unreachable_left,
            unreachable_right=unreachable_right,
            phi=phi,
            phi_reachable=phi_reachable,
            tail_counts=tail_counts,
            num_left=len(match),
        )


def tail_bound_violations(report: HeightReport, C: int) -> list[int]:
    """Heights h with more than num_left / C**h reachable left nodes at
    height >= 2h+1, checked in exact integer arithmetic."""
    return [h for h, count in report.tail_counts.items()
            if count * C ** h > report.num_left]


@dataclass(frozen=True)
class HeightAudit:
    """Heights recorded around one arrival."""

    step: int
    before: HeightReport
    after: HeightReport
    rematches: tuple[Rematch, ...]
    swaps: int


@dataclass(frozen=True)
class MonotonicityResult:
    ok: bool
    violations: tuple[str, ...]


def check_height_monotonicity(audits: Sequence[HeightAudit]) -> MonotonicityResult:
    """Verifies, per audited arrival: (a) no node's height decreased
    (unreachable counts as infinite); (b) every swap rematching a right
    node from x to x' satisfies height'(x') >= height(x) + 2; (c) the
    swap potential grew by at least the number of swaps."""
    problems: list[str] = []
    for audit in audits:
        before, after = audit.before, audit.after
        for x, hb in before.left_heights.items():
            ha = after.left_heights.get(x)
            if ha is not None and ha < hb:
                problems.append(f"step {audit.step}: left {x} height fell {hb} -> {ha}")
        for y, hb in before.right_heights.items():
            ha = after.right_heights.get(y)
            if ha is not None and ha < hb:
                problems.append(f"step {audit.step}: right {y} height fell {hb} -> {ha}")
        for y, x_old, x_new in audit.rematches:
            hb = before.left_heights.get(x_old)
            if hb is None:
                problems.append(
                    f"step {audit.step}: swapped-out left {x_old} had no finite height")
                continue
            ha = after.left_heights.get(x_new)
            if ha is not None and ha < hb + 2:
                problems.append(
                    f"step {audit.step}: rematch of {y} gives height {ha} < {hb} + 2")
        if after.phi < before.phi + audit.swaps:
            problems.append(
                f"step {audit.step}: potential rose {before.phi} -> {after.phi} "
                f"with {audit.swaps} swaps")
    return MonotonicityResult(not problems, tuple(problems))


def run_with_audits(
    config: BMatchConfig,
    arrivals: Sequence[Iterable[int]],
    audit_steps: Iterable[int] | None = None,
) -> tuple[list[StepRecord], list[HeightAudit]]:
    """Run a full sequence, recording before/after heights at the given
    steps (every step when ``audit_steps`` is None)."""
    matcher = OnlineMatcher(config)
    wanted = None if audit_steps is None else set(audit_steps)
    records: list[StepRecord] = []
    audits: list[HeightAudit] = []
    for i, nbrs in enumerate(arrivals):
        do_audit = wanted is None or i in wanted
        before = matcher.heights() if do_audit else None
        rec = matcher.process_arrival(nbrs)
        records.append(rec)
        if do_audit:
            after = matcher.heights()
            audits.append(HeightAudit(
                step=i,
                before=before,
                after=after,
                rematches=matcher.rematch_log[-1],
                swaps=rec.flips,
            ))
    return records, audits
