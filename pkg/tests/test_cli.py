import json

import pytest

from unihyper import budgets
from unihyper.cli import RunConfig, UsageError, main, parse_family
from unihyper.core import build_cycle_power, cycle_graph, hypergraph
from unihyper.decomposition import verify_krl
from unihyper.io import (format_hypergraph, parse_decomp, parse_hit, parse_hypergraph, parse_p3, parse_report,
                         parse_verify_report)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def c8sq(tmp_path):
    p = tmp_path / "c8sq.hg"
    p.write_text(format_hypergraph(build_cycle_power(8, 2)))
    return p


@pytest.fixture
def triples(tmp_path):
    p = tmp_path / "t.hg"
    p.write_text(format_hypergraph(hypergraph(6, [(0, 1, 2), (2, 3, 4), (0, 4, 5)], 3)))
    return p


def test_parse_family():
    p = parse_family("r=3, n=9, delta=2")
    assert (p.r, p.n, p.delta) == (3, 9, 2)
    with pytest.raises(UsageError):
        parse_family("r=3,n=9")
    with pytest.raises(UsageError):
        parse_family("r=3,n=x,delta=2")


def test_config_rejects_bad_budgets():
    with pytest.raises(ValueError):
        RunConfig("check", 0, (), None, False, budgets.default_budgets(), -1.0, {})


def test_construct_writes_hypergraph(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "--strategy", "even_r_matching", "--r", 4, "--n", 8,
                       "--out", tmp_path / "h")
    assert code == 0
    rep = parse_report(out)
    h = parse_hypergraph((tmp_path / "h.hg").read_text())
    assert rep["edges"] == h.m == 62 and rep["hypergraph_written"] is True
    assert parse_report((tmp_path / "h.report").read_text()) == rep


def test_construct_layered_skips_huge_file(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "--strategy", "delta2_layered", "--r", 5, "--n", 10,
                       "--surrogate", "k3", "--out", tmp_path / "l")
    assert code == 0
    rep = parse_report(out)
    assert rep["hypergraph_written"] is False and not (tmp_path / "l.hg").exists()


def test_verify_exit_codes(tmp_path, c8sq, capsys):
    code, out, _ = run(capsys, "verify", "--family", "r=2,n=7,delta=2", "--host", c8sq, "--mode", "exhaustive")
    assert code == 0 and parse_report(out)["universal"] is True
    c8 = tmp_path / "c8.hg"
    c8.write_text(format_hypergraph(cycle_graph(8)))
    code, out, _ = run(capsys, "verify", "--family", "r=2,n=8,delta=2", "--host", c8, "--mode", "exhaustive",
                       "--max-failures", 2, "--out", tmp_path / "v")
    assert code == 1
    head, wits = parse_verify_report((tmp_path / "v.report").read_text())
    assert head["universal"] is False and len(wits) == 2


def test_verify_json(c8sq, capsys):
    code, out, _ = run(capsys, "verify", "--family", "r=2,n=8,delta=2", "--host", c8sq, "--samples", 10,
                       "--json")
    d = json.loads(out)
    assert code == 0 and d["tested"] == 10 and d["witnesses"] == []


def test_decompose_two_cover_and_check(tmp_path, c8sq, capsys):
    code, out, _ = run(capsys, "decompose", "two-cover", "--in", c8sq, "--homs", "--out", tmp_path / "d")
    assert code == 0 and parse_report(out)["valid"] is True
    cert, host = parse_decomp((tmp_path / "d.cert").read_text())
    assert verify_krl(cert, host)
    code, out, _ = run(capsys, "check", "--in", tmp_path / "d.cert")
    assert code == 0 and parse_report(out)["kind"] == "krl"


def test_decompose_p3_and_check(tmp_path, triples, capsys):
    code, _, _ = run(capsys, "decompose", "p3", "--in", triples, "--out", tmp_path / "p")
    assert code == 0
    dec, h = parse_p3((tmp_path / "p.cert").read_text())
    assert not dec.violations(h)
    assert run(capsys, "check", "--in", tmp_path / "p.cert")[0] == 0


def test_hit_and_tampered_certificate(tmp_path, triples, capsys):
    code, _, _ = run(capsys, "hit", "--in", triples, "--pattern", "matching_path", "--out", tmp_path / "x")
    assert code == 0
    text = (tmp_path / "x.cert").read_text()
    g, h, cert = parse_hit(text)
    assert cert.is_valid(g, h)
    # drop one hitting edge; the placement using it no longer holds
    lines = text.splitlines()
    at = lines.index("[hitting_graph]") + 1
    bad = tmp_path / "bad.cert"
    bad.write_text("\n".join(lines[:at] + lines[at + 1:]) + "\n")
    code, out, _ = run(capsys, "check", "--in", bad)
    assert code == 1 and parse_report(out)["valid"] is False


def test_expand_and_budget_exit(tmp_path, c8sq, capsys):
    code, out, _ = run(capsys, "expand", "--in", c8sq, "--pattern", "p3", "--r", 3)
    assert code == 0 and parse_report(out)["edges"] > 0
    code, _, err = run(capsys, "expand", "--in", c8sq, "--pattern", "matching", "--r", 4, "--budget-rsets", 5)
    assert code == 2 and "budget" in err.lower()
    assert budgets.DEFAULT == budgets.default_budgets()


def test_scaling_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "scaling", "--r", 4, "--ns", "8,12,16", "--out", tmp_path / "s")
    assert code == 0
    rows = (tmp_path / "s.csv").read_text().splitlines()
    assert rows[0] == "n,vertices,edges" and rows[1] == "8,8,62"
    assert parse_report(out)["target_exponent"] == 2.0


def test_aa_small_exact(capsys):
    code, out, _ = run(capsys, "aa", "--m", 64, "--seeds", 2, "--exact", "--pair-samples", 2000)
    rep = parse_report(out)
    assert code == 0 and rep["within_bound"] is True and rep["count_method"] == "exact"


@pytest.mark.parametrize("argv", [
    ["construct", "--strategy", "even_r_matching", "--r", "3", "--n", "8"],     # odd r
    ["verify", "--family", "bogus", "--host", "nowhere.hg"],
    ["check", "--in", "/nonexistent/file.hg"],
    ["expand", "--in", "/nonexistent", "--r", "3"],
])
def test_usage_errors_exit_3(argv, capsys):
    assert main(argv) == 3


def test_argparse_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["construct", "--r", "4"])
    assert ei.value.code == 3


def test_malformed_input_reports_line(tmp_path, capsys):
    p = tmp_path / "bad.hg"
    p.write_text("2 4 2\n0 1\n1 9\n")
    code, _, err = run(capsys, "check", "--in", p)
    assert code == 3 and f"{p}:3:" in err


@pytest.mark.parametrize("argv", [
    ["construct", "--strategy", "odd_r_path", "--r", "3", "--n", "6", "--seed", "5"],
    ["verify", "--family", "r=3,n=9,delta=2", "--host", "HOST", "--samples", "8", "--seed", "3"],
    ["decompose", "p3", "--in", "TRIPLES", "--seed", "9"],
])
def test_outputs_are_deterministic(argv, tmp_path, triples, capsys):
    host = tmp_path / "k.hg"
    main(["construct", "--strategy", "delta2_product", "--r", "3", "--n", "9", "--out", str(tmp_path / "k")])
    capsys.readouterr()
    argv = [str(host) if a == "HOST" else str(triples) if a == "TRIPLES" else a for a in argv]
    outs = []
    for i in range(2):
        run(capsys, *argv, "--out", tmp_path / f"run{i}")
        outs.append(sorted((p.suffix, p.read_bytes()) for p in tmp_path.glob(f"run{i}.*")))
    assert outs[0] == outs[1] and outs[0]
