"""Canonical line-delimited text formats for sequences and traces.

Both formats round-trip byte-exactly: single spaces, decimal ids, every
line newline-terminated.  Sequence files carry the input events, trace
files one record per step plus a summary with totals and the bound
verdict.  ``verify_trace`` recomputes every bound from the records
alone, independently of whichever run produced the file.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import bounds
from .core import StepRecord
from .errors import RejectedInputError

SEQUENCE_KINDS = ("orientation", "bmatching")
TRACE_KINDS = ("orient-sp", "orient-allflip", "orient-greedy", "bmatch")

# Parameter order is part of the canonical form.
_SEQ_PARAMS = {"orientation": ("c",), "bmatching": ("K", "C")}
_TRACE_PARAMS = {
    "orient-sp": ("c", "n", "seed"),
    "orient-allflip": ("delta", "Delta", "n", "seed"),
    "orient-greedy": ("n", "seed"),
    "bmatch": ("K", "C", "n", "seed"),
}


@dataclass(frozen=True)
class SequenceFile:
    kind: str
    params: dict[str, int]
    events: tuple[tuple[int, ...], ...]
    # orientation events are (u, v); bmatching events are neighbor lists.

    def __post_init__(self) -> None:
        if self.kind not in SEQUENCE_KINDS:
            raise RejectedInputError(f"unknown sequence kind {self.kind!r}")
        missing = [k for k in _SEQ_PARAMS[self.kind] if k not in self.params]
        if missing:
            raise RejectedInputError(f"sequence header missing parameters {missing}")


@dataclass(frozen=True)
class TraceFile:
    kind: str
    params: dict[str, int]
    records: tuple[StepRecord, ...]
    summary: dict[str, object]   # total, max, verdict

    def __post_init__(self) -> None:
        if self.kind not in TRACE_KINDS:
            raise RejectedInputError(f"unknown trace kind {self.kind!r}")


def _parse_params(tokens: Sequence[str], line_no: int) -> dict[str, int]:
    params: dict[str, int] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise RejectedInputError(f"line {line_no}: malformed parameter {token!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise RejectedInputError(f"line {line_no}: non-integer parameter {token!r}") from None
    return params


def serialize_sequence(sf: SequenceFile) -> str:
    keys = _SEQ_PARAMS[sf.kind]
    header = " ".join([sf.kind] + [f"{k}={sf.params[k]}" for k in keys])
    lines = [header]
    if sf.kind == "orientation":
        for u, v in sf.events:
            lines.append(f"{u} {v}")
    else:
        for i, nbrs in enumerate(sf.events):
            lines.append(" ".join(str(x) for x in (i, *nbrs)))
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> SequenceFile:
    lines = text.split("\n")
    if not lines or not lines[0]:
        raise RejectedInputError("empty sequence file")
    if lines[-1] != "":
        raise RejectedInputError("sequence file must end with a newline")
    head = lines[0].split(" ")
    kind = head[0]
    if kind not in SEQUENCE_KINDS:
        raise RejectedInputError(f"unknown sequence kind {kind!r}")
    params = _parse_params(head[1:], 1)
    events: list[tuple[int, ...]] = []
    for line_no, line in enumerate(lines[1:-1], start=2):
        try:
            values = tuple(int(tok) for tok in line.split(" "))
        except ValueError:
            raise RejectedInputError(f"line {line_no}: non-integer id") from None
        if kind == "orientation":
            if len(values) != 2:
                raise RejectedInputError(f"line {line_no}: expected 'u v'")
            events.append(values)
        else:
            if len(values) < 2:
                raise RejectedInputError(f"line {line_no}: expected 'index id...'")
            if values[0] != line_no - 2:
                raise RejectedInputError(
                    f"line {line_no}: arrival index {values[0]} out of order")
            events.append(values[1:])
    return SequenceFile(kind, params, tuple(events))


def serialize_trace(tf: TraceFile) -> str:
    keys = _TRACE_PARAMS[tf.kind]
    header = " ".join(["trace", tf.kind] + [f"{k}={tf.params[k]}" for k in keys])
    lines = [header]
    for r in tf.records:
        lines.append(f"{r.step} {r.flips} {r.cumulative_flips} "
                     f"{r.max_in_degree} {r.path_length_used}")
    s = tf.summary
    lines.append(f"summary total={s['total']} max={s['max']} verdict={s['verdict']}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> TraceFile:
    lines = text.split("\n")
    if len(lines) < 3 or lines[-1] != "":
        raise RejectedInputError("malformed trace file")
    head = lines[0].split(" ")
    if head[0] != "trace" or len(head) < 2:
        raise RejectedInputError("trace file must start with 'trace <kind> ...'")
    kind = head[1]
    if kind not in TRACE_KINDS:
        raise RejectedInputError(f"unknown trace kind {kind!r}")
    params = _parse_params(head[2:], 1)
    records: list[StepRecord] = []
    summary: dict[str, object] | None = None
    for line_no, line in enumerate(lines[1:-1], start=2):
        if line.startswith("summary "):
            tokens = line.split(" ")[1:]
            raw: dict[str, str] = {}
            for token in tokens:
                key, sep, value = token.partition("=")
                if not sep:
                    raise RejectedInputError(f"line {line_no}: malformed summary field")
                raw[key] = value
            try:
                summary = {"total": int(raw["total"]), "max": int(raw["max"]),
                           "verdict": raw["verdict"]}
            except (KeyError, ValueError):
                raise RejectedInputError(f"line {line_no}: malformed summary") from None
            if line_no != len(lines) - 1:
                raise RejectedInputError("summary must be the last record")
            continue
        try:
            step, flips, cum, mx, plen = (int(tok) for tok in line.split(" "))
        except ValueError:
            raise RejectedInputError(f"line {line_no}: malformed record") from None
        records.append(StepRecord(step, flips, cum, mx, plen))
    if summary is None:
        raise RejectedInputError("trace file has no summary record")
    return TraceFile(kind, params, tuple(records), summary)


def make_trace(kind: str, params: dict[str, int],
               records: Sequence[StepRecord]) -> TraceFile:
    """Assemble a trace with its summary and bound verdict."""
    problems = _bound_problems(kind, params, records)
    total = records[-1].cumulative_flips if records else 0
    peak = max((r.max_in_degree for r in records), default=0)
    summary = {"total": total, "max": peak,
               "verdict": "pass" if not problems else "fail"}
    return TraceFile(kind, dict(params), tuple(records), summary)


def _bound_problems(kind: str, params: dict[str, int],
                    records: Sequence[StepRecord]) -> list[str]:
    problems: list[str] = []
    n = len(records)
    cum = 0
    for i, r in enumerate(records):
        cum += r.flips
        if r.cumulative_flips != cum:
            problems.append(f"record {i}: cumulative {r.cumulative_flips} != prefix sum {cum}")
    if kind in ("orient-sp", "orient-greedy") and any(
            r.flips != r.path_length_used for r in records):
        problems.append("flips != path length on some record")
    if kind == "bmatch" and any(
            r.flips != (r.path_length_used - 1) // 2 for r in records):
        problems.append("swaps != (path length - 1)/2 on some record")
    if kind == "orient-sp":
        c = params["c"]
        step_cap = bounds.sp_step_flip_bound(n, c)
        if any(r.max_in_degree > c for r in records):
            problems.append(f"max in-degree exceeded {c}")
        if any(r.flips > step_cap for r in records):
            problems.append(f"some step flipped more than {step_cap} edges")
        total = records[-1].cumulative_flips if records else 0
        if total > bounds.sp_total_flip_bound(n, c):
            problems.append(f"total flips {total} exceed the closed-form bound")
    elif kind == "orient-greedy":
        cap = bounds.greedy_max_indegree_bound(n)
        if any(r.max_in_degree > cap for r in records):
            problems.append(f"greedy max in-degree exceeded {cap}")
        if any(r.flips != 0 for r in records):
            problems.append("greedy trace contains flips")
    elif kind == "orient-allflip":
        delta, big_delta = params["delta"], params["Delta"]
        if any(r.max_in_degree > big_delta for r in records):
            problems.append(f"max in-degree exceeded {big_delta}")
        total = records[-1].cumulative_flips if records else 0
        if not bounds.allflip_total_ok(total, n, delta, big_delta):
            problems.append(f"total flips {total} exceed the cascade bound")
    elif kind == "bmatch":
        K, C = params["K"], params["C"]
        if any(r.max_in_degree > C * K for r in records):
            problems.append(f"max load exceeded {C * K}")
        total = records[-1].cumulative_flips if records else 0
        if not bounds.bmatch_swap_ok(total, n, C):
            problems.append(f"total swaps {total} exceed the potential bound")
    return problems


def verify_trace(tf: TraceFile) -> list[str]:
    """Recompute every bound and the summary from the records alone;
    returns the list of problems (empty means the trace verifies)."""
    problems = _bound_problems(tf.kind, tf.params, tf.records)
    n_declared = tf.params.get("n")
    if n_declared is not None and n_declared != len(tf.records):
        problems.append(f"header declares n={n_declared}, trace has {len(tf.records)} records")
    total = tf.records[-1].cumulative_flips if tf.records else 0
    peak = max((r.max_in_degree for r in tf.records), default=0)
    if tf.summary.get("total") != total:
        problems.append(f"summary total {tf.summary.get('total')} != last cumulative {total}")
    if tf.summary.get("max") != peak:
        problems.append(f"summary max {tf.summary.get('max')} != observed {peak}")
    expected_verdict = "pass" if not _bound_problems(tf.kind, tf.params, tf.records) else "fail"
    if tf.summary.get("verdict") != expected_verdict:
        problems.append("summary verdict does not match recomputed bounds")
    return problems
