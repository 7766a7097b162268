"""CLI: subcommands, exit codes, determinism, DOT export."""
import pytest

from recourse.cli import main


def run(*argv):
    return main(list(argv))


def read(path):
    return path.read_text(encoding="utf-8")


def test_gen_orient_verify_pipeline(tmp_path):
    seq = tmp_path / "seq.txt"
    trace = tmp_path / "trace.txt"
    assert run("gen", "--kind", "forest", "--n", "200", "--seed", "7",
               "--output", str(seq)) == 0
    assert run("orient-sp", "--input", str(seq), "--c", "2",
               "--output", str(trace)) == 0
    assert run("verify", "--input", str(trace)) == 0


def test_identical_flags_give_byte_identical_traces(tmp_path):
    paths = []
    for name in ("a", "b"):
        seq = tmp_path / f"seq_{name}.txt"
        trace = tmp_path / f"trace_{name}.txt"
        run("gen", "--kind", "forest", "--n", "150", "--seed", "11",
            "--output", str(seq))
        run("orient-sp", "--input", str(seq), "--c", "2", "--seed", "3",
            "--policy", "random:random", "--output", str(trace))
        paths.append((seq, trace))
    assert read(paths[0][0]) == read(paths[1][0])
    assert read(paths[0][1]) == read(paths[1][1])


def test_seed_env_var_is_default(tmp_path, monkeypatch):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    monkeypatch.setenv("RECOURSE_SEED", "42")
    run("gen", "--kind", "forest", "--n", "50", "--output", str(a))
    monkeypatch.delenv("RECOURSE_SEED")
    run("gen", "--kind", "forest", "--n", "50", "--seed", "42", "--output", str(b))
    assert read(a) == read(b)


def test_verify_rejects_corrupted_trace(tmp_path):
    seq = tmp_path / "seq.txt"
    trace = tmp_path / "trace.txt"
    run("gen", "--kind", "forest", "--n", "60", "--seed", "1", "--output", str(seq))
    run("orient-sp", "--input", str(seq), "--output", str(trace))
    lines = read(trace).split("\n")
    parts = lines[5].split(" ")
    parts[2] = str(int(parts[2]) + 1)     # corrupt a cumulative field
    lines[5] = " ".join(parts)
    trace.write_text("\n".join(lines), encoding="utf-8")
    assert run("verify", "--input", str(trace)) == 2


def test_exit_codes():
    assert run("oracle", "--metric", "arboricity") == 64        # missing input
    assert run("nonsense") == 64
    assert run("verify", "--input", "/nonexistent/trace.txt") == 1


def test_exit_code_rejected_input(tmp_path):
    seq = tmp_path / "seq.txt"
    seq.write_text("orientation c=2\n3 3\n", encoding="utf-8")
    assert run("orient-sp", "--input", str(seq), "--output",
               str(tmp_path / "t.txt")) == 1


def test_exit_code_infeasible(tmp_path):
    seq = tmp_path / "bm.txt"
    seq.write_text("bmatching K=1 C=2\n0 5\n1 5\n2 5\n", encoding="utf-8")
    assert run("bmatch", "--input", str(seq), "--output",
               str(tmp_path / "t.txt")) == 3


def test_allflip_and_greedy_commands(tmp_path):
    seq = tmp_path / "seq.txt"
    run("gen", "--kind", "forest", "--n", "120", "--seed", "2", "--output", str(seq))
    t1 = tmp_path / "af.txt"
    assert run("orient-allflip", "--input", str(seq), "--delta", "1",
               "--Delta", "2", "--output", str(t1)) == 0
    assert run("verify", "--input", str(t1)) == 0
    t2 = tmp_path / "greedy.txt"
    assert run("greedy", "--input", str(seq), "--output", str(t2)) == 0
    assert run("verify", "--input", str(t2)) == 0


def test_bmatch_command_and_oracle(tmp_path):
    seq = tmp_path / "bm.txt"
    wit = tmp_path / "bm.witness"
    assert run("gen", "--kind", "bmatch-feasible", "--n", "80", "--K", "2",
               "--seed", "5", "--output", str(seq), "--witness", str(wit)) == 0
    assert wit.exists()
    trace = tmp_path / "trace.txt"
    assert run("bmatch", "--input", str(seq), "--output", str(trace)) == 0
    assert run("verify", "--input", str(trace)) == 0
    out = tmp_path / "oracle.txt"
    assert run("oracle", "--metric", "min-max-load", "--input", str(seq),
               "--output", str(out)) == 0
    value = int(read(out).split("value=")[1])
    assert value <= 2


def test_arboricity_gen_and_oracle(tmp_path):
    seq = tmp_path / "arb.txt"
    wit = tmp_path / "arb.witness"
    assert run("gen", "--kind", "arboricity-bounded", "--n", "12", "--c", "2",
               "--nodes", "12", "--seed", "3", "--output", str(seq),
               "--witness", str(wit)) == 0
    out = tmp_path / "oracle.txt"
    assert run("oracle", "--metric", "arboricity", "--input", str(seq),
               "--output", str(out)) == 0
    assert "ceil=" in read(out)


def test_adversary_command_records_sequence(tmp_path):
    trace = tmp_path / "adv.txt"
    assert run("adversary", "--construction", "single-step", "--param", "64",
               "--output", str(trace)) == 0
    assert run("verify", "--input", str(trace)) == 0
    recorded = tmp_path / "adv.txt.seq"
    assert recorded.exists()
    replay = tmp_path / "replay.txt"
    assert run("orient-sp", "--input", str(recorded), "--output", str(replay)) == 0
    assert read(replay).split("\n", 1)[1] == read(trace).split("\n", 1)[1]


@pytest.mark.parametrize("construction,param", [
    ("tm", 4), ("linear", 43), ("single-edge", 2), ("two-flip", 18),
    ("pairing", 8),
])
def test_adversary_constructions_run_clean(tmp_path, construction, param):
    trace = tmp_path / "t.txt"
    assert run("adversary", "--construction", construction, "--param",
               str(param), "--output", str(trace)) == 0
    assert run("verify", "--input", str(trace)) == 0


def test_export_dot(tmp_path):
    seq = tmp_path / "seq.txt"
    # Default policy orients toward the first endpoint: node 0 saturates.
    seq.write_text("orientation c=2\n0 1\n0 2\n3 4\n", encoding="utf-8")
    dot = tmp_path / "g.dot"
    assert run("export-dot", "--input", str(seq), "--output", str(dot)) == 0
    text = read(dot)
    assert text.startswith("digraph")
    assert text.count("->") == 3
    assert "style=filled" in text     # the saturated node is marked
    # A depth-2 block: 8 edges over 9 nodes.
    from recourse import ShortestPathOrienter, SpConfig, build_tm
    from recourse.adversary import RecordingDriver
    recorder = RecordingDriver(ShortestPathOrienter(SpConfig()))
    build_tm(recorder, 2)
    seq2 = tmp_path / "tm.txt"
    seq2.write_text("orientation c=2\n" +
                    "".join(f"{u} {v}\n" for u, v in recorder.emitted),
                    encoding="utf-8")
    dot2 = tmp_path / "tm.dot"
    assert run("export-dot", "--input", str(seq2), "--output", str(dot2)) == 0
    text2 = read(dot2)
    assert text2.count("->") == 8
    assert sum(1 for line in text2.split("\n")
               if line.strip().startswith("n") and "->" not in line) == 9


def test_export_dot_bmatch(tmp_path):
    seq = tmp_path / "bm.txt"
    seq.write_text("bmatching K=1 C=2\n0 5 6\n1 5\n", encoding="utf-8")
    dot = tmp_path / "bm.dot"
    assert run("export-dot", "--input", str(seq), "--output", str(dot)) == 0
    text = read(dot)
    assert "style=bold" in text and "style=dashed" in text


def test_export_dot_empty_sequence(tmp_path):
    seq = tmp_path / "empty.txt"
    seq.write_text("orientation c=2\n", encoding="utf-8")
    dot = tmp_path / "empty.dot"
    assert run("export-dot", "--input", str(seq), "--output", str(dot)) == 0
    assert "->" not in read(dot)


def test_export_dot_cyclic_sequence_uses_cascading_orienter(tmp_path):
    seq = tmp_path / "cyc.txt"
    seq.write_text("orientation c=2\n0 1\n1 2\n2 0\n", encoding="utf-8")
    dot = tmp_path / "cyc.dot"
    assert run("export-dot", "--input", str(seq), "--output", str(dot)) == 0
    assert read(dot).count("->") == 3
