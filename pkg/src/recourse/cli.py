"""Command-line harness: generate instances, run algorithms and
adversaries, verify traces, export graph snapshots.

Exit codes: 0 success, 1 rejected input, 2 bound-verification failure,
3 infeasibility or contract errors, 64 usage errors.  Identical flags
and seed produce byte-identical output files.  When --seed is omitted,
the RECOURSE_SEED environment variable supplies the default (else 0).
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import adversary as adv
from . import generators
from .all_flip import AllFlipConfig, AllFlipOrienter
from .bmatch import BMatchConfig, OnlineMatcher
from .core import OrientationState
from .errors import (
    AdversaryDesyncError,
    CapacityError,
    RecourseError,
    RejectedInputError,
)
from .fileformats import (
    SequenceFile,
    make_trace,
    parse_sequence,
    parse_trace,
    serialize_sequence,
    serialize_trace,
    verify_trace,
)
from .oracle import arboricity, min_max_indegree, min_max_load
from .shortest_path import (
    FixingShortestPathOrienter,
    GreedyOrienter,
    ShortestPathOrienter,
    SpConfig,
)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_BOUND = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):   # noqa: A003 - argparse hook
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="recourse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> _Parser:
        p = sub.add_parser(name, **kw)
        p.add_argument("--input")
        p.add_argument("--output")
        p.add_argument("--seed", type=int)
        return p

    g = add("gen", help="generate an instance sequence")
    g.add_argument("--kind", required=True,
                   choices=("forest", "arboricity-bounded", "bmatch-feasible"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--c", type=int, default=2)
    g.add_argument("--K", type=int, default=1)
    g.add_argument("--C", type=int, default=2)
    g.add_argument("--nodes", type=int)
    g.add_argument("--witness")

    sp = add("orient-sp", help="run the shortest-path orienter on a sequence")
    sp.add_argument("--c", type=int)
    sp.add_argument("--policy")

    af = add("orient-allflip", help="run the cascading all-flip orienter")
    af.add_argument("--delta", type=int, required=True)
    af.add_argument("--Delta", type=int, required=True)
    af.add_argument("--policy")

    add("greedy", help="run the no-recourse greedy baseline")

    bm = add("bmatch", help="run the online matcher on a bmatching sequence")
    bm.add_argument("--K", type=int)
    bm.add_argument("--C", type=int)
    bm.add_argument("--policy")

    a = add("adversary", help="run an adaptive construction against a variant")
    a.add_argument("--construction", required=True,
                   choices=("tm", "single-step", "linear", "single-edge",
                            "two-flip", "pairing"))
    a.add_argument("--param", type=int, required=True)
    a.add_argument("--mode", choices=("steered", "robust"), default="robust")
    a.add_argument("--variant", choices=("plain", "fixing"), default="plain")
    a.add_argument("--policy")
    a.add_argument("--record")

    o = add("oracle", help="offline brute-force metrics for a sequence")
    o.add_argument("--metric", required=True,
                   choices=("min-max-indegree", "min-max-load", "arboricity"))

    add("verify", help="recompute every bound in a trace file")
    add("export-dot", help="replay a sequence and export the final state as DOT")
    return parser


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("RECOURSE_SEED", "0"))


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _sp_config(c: int, policy: str | None, seed: int) -> SpConfig:
    unsat, path = "toward_first", "first_endpoint"
    if policy:
        parts = policy.split(":")
        if len(parts) > 2:
            raise UsageError(f"policy must be 'unsat[:path]', got {policy!r}")
        if parts[0]:
            unsat = parts[0]
        if len(parts) == 2 and parts[1]:
            path = parts[1]
    return SpConfig(constraint_c=c, unsaturated_tie=unsat, path_tie=path,
                    seed=seed if "random" in (unsat, path) else None)


def _require_input(args) -> str:
    if not args.input:
        raise UsageError(f"{args.command} requires --input")
    return _read(args.input)


def _cmd_gen(args) -> int:
    seed = _seed(args)
    if args.kind == "forest":
        edges = generators.gen_forest(args.n, seed)
        sf = SequenceFile("orientation", {"c": args.c}, tuple(edges))
        _write(args.output, serialize_sequence(sf))
    elif args.kind == "arboricity-bounded":
        nodes = args.nodes if args.nodes is not None else max(2, args.n)
        inst = generators.gen_arboricity_bounded(nodes, args.c, seed)
        sf = SequenceFile("orientation", {"c": max(2, args.c)}, inst.edges)
        _write(args.output, serialize_sequence(sf))
        if args.witness:
            lines = [f"{eid} {inst.witness_heads[eid]}" for eid in range(len(inst.edges))]
            _write(args.witness, "\n".join(["witness orientation"] + lines) + "\n")
    else:
        inst = generators.gen_bmatch_feasible(args.n, args.K, seed)
        sf = SequenceFile("bmatching", {"K": args.K, "C": args.C}, inst.arrivals)
        _write(args.output, serialize_sequence(sf))
        if args.witness:
            lines = [f"{i} {w}" for i, w in enumerate(inst.witness)]
            _write(args.witness, "\n".join(["witness bmatching"] + lines) + "\n")
    return EXIT_OK


def _cmd_orient_sp(args) -> int:
    sf = parse_sequence(_require_input(args))
    if sf.kind != "orientation":
        raise RejectedInputError("orient-sp needs an orientation sequence")
    seed = _seed(args)
    c = args.c if args.c is not None else max(2, sf.params["c"])
    orienter = ShortestPathOrienter(_sp_config(c, args.policy, seed))
    records = orienter.run_sequence(list(sf.events))
    tf = make_trace("orient-sp", {"c": c, "n": len(records), "seed": seed}, records)
    _write(args.output, serialize_trace(tf))
    return EXIT_OK if tf.summary["verdict"] == "pass" else EXIT_BOUND


def _cmd_orient_allflip(args) -> int:
    sf = parse_sequence(_require_input(args))
    if sf.kind != "orientation":
        raise RejectedInputError("orient-allflip needs an orientation sequence")
    seed = _seed(args)
    policy = args.policy or "toward_first"
    config = AllFlipConfig(delta=args.delta, Delta=args.Delta,
                           initial_orientation=policy,
                           seed=seed if policy == "random" else None)
    orienter = AllFlipOrienter(config)
    records = orienter.run_sequence(list(sf.events))
    tf = make_trace("orient-allflip",
                    {"delta": args.delta, "Delta": args.Delta,
                     "n": len(records), "seed": seed}, records)
    _write(args.output, serialize_trace(tf))
    return EXIT_OK if tf.summary["verdict"] == "pass" else EXIT_BOUND


def _cmd_greedy(args) -> int:
    sf = parse_sequence(_require_input(args))
    if sf.kind != "orientation":
        raise RejectedInputError("greedy needs an orientation sequence")
    orienter = GreedyOrienter()
    records = orienter.run_sequence(list(sf.events))
    tf = make_trace("orient-greedy", {"n": len(records), "seed": _seed(args)}, records)
    _write(args.output, serialize_trace(tf))
    return EXIT_OK if tf.summary["verdict"] == "pass" else EXIT_BOUND


def _cmd_bmatch(args) -> int:
    sf = parse_sequence(_require_input(args))
    if sf.kind != "bmatching":
        raise RejectedInputError("bmatch needs a bmatching sequence")
    K = args.K if args.K is not None else sf.params["K"]
    C = args.C if args.C is not None else sf.params["C"]
    seed = _seed(args)
    policy = args.policy or "lowest_load_then_id"
    config = BMatchConfig(K=K, C=C, pick_policy=policy,
                          seed=seed if policy == "random" else None)
    matcher = OnlineMatcher(config)
    records = matcher.run_sequence(list(sf.events))
    tf = make_trace("bmatch", {"K": K, "C": C, "n": len(records), "seed": seed}, records)
    _write(args.output, serialize_trace(tf))
    return EXIT_OK if tf.summary["verdict"] == "pass" else EXIT_BOUND


def _cmd_adversary(args) -> int:
    seed = _seed(args)
    construction = args.construction
    if construction == "pairing":
        sequence = adv.pairing_norecourse(args.param)
        orienter = GreedyOrienter()
        records = orienter.run_sequence(sequence)
        tf = make_trace("orient-greedy", {"n": len(records), "seed": seed}, records)
        emitted = sequence
        summary = (f"pairing n={args.param} "
                   f"greedy_max={records[-1].max_in_degree if records else 0}")
    else:
        config = _sp_config(2, args.policy, seed)
        driver = (FixingShortestPathOrienter(config) if args.variant == "fixing"
                  else ShortestPathOrienter(config))
        if construction == "tm":
            recorder = adv.RecordingDriver(driver)
            handle = adv.build_tm(recorder, args.param)
            length = driver.state.nearest_unsaturated(handle.root).length
            if length != handle.m:
                raise AdversaryDesyncError(
                    f"block root at distance {length}, expected {handle.m}")
            summary = f"tm m={handle.m} edges={handle.edges_used} root={handle.root}"
            emitted, records = recorder.emitted, recorder.records
        elif construction == "single-step":
            result = adv.single_step_log_flips(driver, args.param)
            summary = (f"single-step m={args.param} edges={result.edges_used} "
                       f"final_flips={result.final.flips}")
            emitted, records = result.emitted, result.records
        elif construction == "linear":
            result = adv.linear_total_flips(driver, args.param)
            summary = (f"linear n={args.param} k={result.k} "
                       f"forced={result.forced_flips} edges={result.edges_used}")
            emitted, records = result.emitted, result.records
        elif construction == "single-edge":
            result = adv.single_edge_flips(driver, args.param, args.mode)
            summary = (f"single-edge k={args.param} mode={args.mode} "
                       f"red_flips={result.red_flips} edges={result.edges_used} "
                       f"dodges={len(result.tie_dodges)}")
            emitted, records = result.emitted, result.records
        else:
            result = adv.two_flip_forcer(driver, args.param)
            summary = (f"two-flip L={args.param} variant={args.variant} "
                       f"final_flips={result.final.flips} edges={result.edges_used}")
            emitted, records = result.emitted, result.records
        tf = make_trace("orient-sp", {"c": 2, "n": len(records), "seed": seed},
                        list(records))
    print(summary)
    if args.output:
        _write(args.output, serialize_trace(tf))
        record_path = args.record or args.output + ".seq"
        sf = SequenceFile("orientation", {"c": 2}, tuple(emitted))
        _write(record_path, serialize_sequence(sf))
    elif args.record:
        sf = SequenceFile("orientation", {"c": 2}, tuple(emitted))
        _write(args.record, serialize_sequence(sf))
    return EXIT_OK if tf.summary["verdict"] == "pass" else EXIT_BOUND


def _cmd_oracle(args) -> int:
    sf = parse_sequence(_require_input(args))
    if args.metric == "min-max-load":
        if sf.kind != "bmatching":
            raise RejectedInputError("min-max-load needs a bmatching sequence")
        report = min_max_load(list(sf.events))
        line = f"oracle min_max_load value={report.value}"
    elif args.metric == "min-max-indegree":
        if sf.kind != "orientation":
            raise RejectedInputError("min-max-indegree needs an orientation sequence")
        report = min_max_indegree(list(sf.events))
        line = f"oracle min_max_indegree value={report.value}"
    else:
        if sf.kind != "orientation":
            raise RejectedInputError("arboricity needs an orientation sequence")
        report = arboricity(list(sf.events))
        line = f"oracle arboricity value={report.value} ceil={report.ceil_value}"
    _write(args.output, line + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    tf = parse_trace(_require_input(args))
    problems = verify_trace(tf)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_BOUND
    print("ok")
    return EXIT_OK


def _dot_orientation(state: OrientationState) -> str:
    lines = ["digraph orientation {"]
    for v in sorted(state.nodes()):
        mark = " [style=filled]" if state.is_saturated(v) else ""
        lines.append(f"  n{v}{mark};")
    for e in state.edges:
        lines.append(f"  n{e.tail} -> n{e.head};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_bmatch(matcher: OnlineMatcher) -> str:
    cap = matcher.config.capacity
    lines = ["digraph bmatching {"]
    for x in range(matcher.num_left):
        lines.append(f"  l{x};")
    for y in sorted(matcher.loads):
        mark = " [style=filled]" if matcher.loads[y] >= cap else ""
        lines.append(f"  r{y}{mark};")
    for x in range(matcher.num_left):
        for y in matcher.neighbor_sorted[x]:
            style = "bold" if matcher.match[x] == y else "dashed"
            lines.append(f"  l{x} -> r{y} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_export_dot(args) -> int:
    sf = parse_sequence(_require_input(args))
    if sf.kind == "orientation":
        from .oracle import is_forest
        if is_forest(sf.events):
            orienter = ShortestPathOrienter(
                _sp_config(max(2, sf.params["c"]), None, _seed(args)))
        else:
            delta = max(1, sf.params["c"])
            orienter = AllFlipOrienter(AllFlipConfig(delta=delta, Delta=2 * delta))
        orienter.run_sequence(list(sf.events))
        _write(args.output, _dot_orientation(orienter.state))
    else:
        matcher = OnlineMatcher(BMatchConfig(K=sf.params["K"], C=sf.params["C"]))
        matcher.run_sequence(list(sf.events))
        _write(args.output, _dot_bmatch(matcher))
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "orient-sp": _cmd_orient_sp,
    "orient-allflip": _cmd_orient_allflip,
    "greedy": _cmd_greedy,
    "bmatch": _cmd_bmatch,
    "adversary": _cmd_adversary,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "export-dot": _cmd_export_dot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except RejectedInputError as err:
        print(f"rejected input: {err}", file=sys.stderr)
        return EXIT_REJECTED
    except CapacityError as err:
        print(f"capacity: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except RecourseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except FileNotFoundError as err:
        print(f"missing file: {err}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
