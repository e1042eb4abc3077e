"""Command-line pipelines, exit codes, and reproducibility."""

from pathlib import Path

import sfstkit as sk
from sfstkit.cli import main


def run(*argv):
    return main([str(a) for a in argv])


def test_generate_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.sfst", tmp_path / "b.sfst"
    assert run("generate", "--states", 10, "--sigma", 10, "--seed", 7, "--out", a) == 0
    assert run("generate", "--states", 10, "--sigma", 10, "--seed", 7, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.sfst.manifest").exists()
    # the config echo rides along as header comments
    text = a.read_text()
    assert "# config:" in text and "seed=7" in text and "rng=pcg64" in text


def test_generate_usage_error(tmp_path):
    assert run("generate", "--states", 0, "--seed", 1, "--out", tmp_path / "x") == 1
    assert run("generate", "--states") == 1


def test_pipeline_reproducible_end_to_end(tmp_path):
    def pipeline(d: Path):
        d.mkdir(exist_ok=True)
        assert run("generate", "--states", 30, "--seed", 11, "--out", d / "m.sfst") == 0
        assert run("sample", "--machine", d / "m.sfst", "--pairs", 400,
                   "--stop", 0.10, "--max-steps", 50, "--seed", 5,
                   "--out", d / "data.tsv") == 0
        assert run("split", "--data", d / "data.tsv", "--kind", "random",
                   "--fraction", 0.8, "--seed", 3,
                   "--train-out", d / "train.tsv", "--test-out", d / "test.tsv") == 0
        assert run("coverage", "--machine", d / "m.sfst", "--data", d / "train.tsv",
                   "--threshold", 400, "--out", d / "cov.txt") == 0
        return [(d / f).read_bytes()
                for f in ("m.sfst", "data.tsv", "train.tsv", "test.tsv", "cov.txt")]

    assert pipeline(tmp_path / "one") == pipeline(tmp_path / "two")


def test_split_sizes(tmp_path):
    run("generate", "--states", 10, "--seed", 2, "--out", tmp_path / "m.sfst")
    run("sample", "--machine", tmp_path / "m.sfst", "--pairs", 100, "--seed", 2,
        "--out", tmp_path / "d.tsv")
    assert run("split", "--data", tmp_path / "d.tsv", "--kind", "random",
               "--fraction", 0.8, "--seed", 1,
               "--train-out", tmp_path / "tr.tsv", "--test-out", tmp_path / "te.tsv") == 0
    train, _ = sk.parse_pairs((tmp_path / "tr.tsv").read_text())
    test, _ = sk.parse_pairs((tmp_path / "te.tsv").read_text())
    assert len(train) == 80 and len(test) == 20


def test_split_cutoff_beyond_max_is_data_error(tmp_path):
    run("generate", "--states", 5, "--seed", 2, "--out", tmp_path / "m.sfst")
    run("sample", "--machine", tmp_path / "m.sfst", "--pairs", 50, "--seed", 2,
        "--out", tmp_path / "d.tsv")
    assert run("split", "--data", tmp_path / "d.tsv", "--kind", "by_length",
               "--cutoff", 999, "--train-out", tmp_path / "a", "--test-out",
               tmp_path / "b") == 2


def test_sample_exhaustion_exit_code(tmp_path):
    machine = "SFST v1\nSTATES 1\nSTART 0\nFINAL 0 -1\nTRANS 0 0 0 5\n"
    (tmp_path / "loop.sfst").write_text(machine)
    assert run("sample", "--machine", tmp_path / "loop.sfst", "--pairs", 100,
               "--max-attempts", 500, "--seed", 1, "--out", tmp_path / "d.tsv") == 3


def test_malformed_dataset_is_data_error(tmp_path):
    (tmp_path / "bad.tsv").write_text("0 1 2\n")
    run("generate", "--states", 5, "--seed", 2, "--out", tmp_path / "m.sfst")
    assert run("coverage", "--machine", tmp_path / "m.sfst",
               "--data", tmp_path / "bad.tsv", "--out", tmp_path / "c.txt") == 2


def test_ostia_and_eval_round_trip(tmp_path, capsys):
    run("generate", "--states", 2, "--sigma", 2, "--gamma", 3, "--seed", 13,
        "--out", tmp_path / "target.sfst")
    run("sample", "--machine", tmp_path / "target.sfst", "--pairs", 120,
        "--max-steps", 8, "--seed", 13, "--out", tmp_path / "d.tsv")
    assert run("ostia", "--data", tmp_path / "d.tsv", "--cap", 1000, "--seed", 0,
               "--report", tmp_path / "r.txt", "--out", tmp_path / "learned.sfst") == 0
    report = (tmp_path / "r.txt").read_text()
    assert "states=" in report and "merge_attempts=" in report
    assert run("eval", "--learned", tmp_path / "learned.sfst",
               "--target", tmp_path / "target.sfst",
               "--test", tmp_path / "d.tsv", "--out", tmp_path / "eval.txt") == 0
    text = (tmp_path / "eval.txt").read_text()
    assert "exact_match=1.0000" in text  # consistent with every training pair


def test_eval_identical_machines_full_accuracy(tmp_path):
    run("generate", "--states", 6, "--seed", 4, "--out", tmp_path / "m.sfst")
    run("sample", "--machine", tmp_path / "m.sfst", "--pairs", 50, "--seed", 4,
        "--out", tmp_path / "d.tsv")
    assert run("eval", "--learned", tmp_path / "m.sfst", "--target", tmp_path / "m.sfst",
               "--test", tmp_path / "d.tsv", "--out", tmp_path / "e.txt") == 0
    text = (tmp_path / "e.txt").read_text()
    assert "equivalent=true" in text and "exact_match=1.0000" in text


def test_ostia_cap_subsamples(tmp_path):
    run("generate", "--states", 3, "--sigma", 2, "--seed", 9, "--out", tmp_path / "m.sfst")
    run("sample", "--machine", tmp_path / "m.sfst", "--pairs", 100, "--seed", 9,
        "--out", tmp_path / "d.tsv")
    assert run("ostia", "--data", tmp_path / "d.tsv", "--cap", 40, "--seed", 1,
               "--out", tmp_path / "l.sfst") == 0
    learned = sk.parse_machine((tmp_path / "l.sfst").read_text())
    pairs, _ = sk.parse_pairs((tmp_path / "d.tsv").read_text())
    # learned from a 40-pair subsample, so consistent on at least those
    hits = sum(sk.transduce(learned, i) == o for i, o in pairs if
               set(i) <= learned.input_alphabet)
    assert hits >= 40


def test_scan_command_writes_machine_and_symbols(tmp_path):
    assert run("scan", "--primitive", "jump", "--repetition",
               "--symbols", tmp_path / "syms.txt", "--out", tmp_path / "scan.sfst") == 0
    m = sk.parse_machine((tmp_path / "scan.sfst").read_text())
    tab = sk.SymbolTable.from_text((tmp_path / "syms.txt").read_text())
    got = sk.transduce(m, tab.encode(["jump", "right", "twice"]))
    assert tab.decode(got) == ["RTURN", "JUMP", "RTURN", "JUMP"]


def test_scan_replicate_command(tmp_path):
    assert run("scan", "--replicate", 3, "--symbols", tmp_path / "syms.txt",
               "--out", tmp_path / "rep.sfst") == 0
    m = sk.parse_machine((tmp_path / "rep.sfst").read_text())
    tab = sk.SymbolTable.from_text((tmp_path / "syms.txt").read_text())
    assert m.n_states == 3 * 10 + 1
    base = tab.encode(["jump", "right"])
    outs = {sk.transduce(m, (tab.id(f"variant{i}"),) + base) for i in range(3)}
    assert outs == {tab.encode(["RTURN", "JUMP"])}


def test_minimize_command(tmp_path):
    text = (
        "SFST v1\nSTATES 3\nSTART 0\nFINAL 1 -1\nFINAL 2 -1\n"
        "TRANS 0 0 1 5\nTRANS 0 1 2 5\nTRANS 1 0 0 6\nTRANS 2 0 0 6\n"
    )
    (tmp_path / "m.sfst").write_text(text)
    assert run("minimize", "--machine", tmp_path / "m.sfst",
               "--out", tmp_path / "min.sfst") == 0
    small = sk.parse_machine((tmp_path / "min.sfst").read_text())
    assert small.n_states == 2
