import pytest
from hypothesis import given, strategies as st

from unihyper.core import FamilyParams, build_cycle_power, complete_graph, cycle_graph, hypergraph, sample_family
from unihyper.decomposition import p3_hitting_decomposition, two_cover_decompose, verify_krl
from unihyper.hitting import hit_matching_path, hit_perfect_matching
from unihyper.io import (ParseError, format_decomp, format_hit, format_hypergraph, format_p3, format_report,
                         format_verify_report, parse_decomp, parse_hit, parse_hypergraph, parse_p3, parse_report,
                         parse_verify_report, read_hypergraph, write_hypergraph)


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(0, 9))
    r = draw(st.integers(1, 4))
    if n < r:
        return hypergraph(n, [], r)
    import itertools
    pool = list(itertools.combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=12))
    return hypergraph(n, edges, r)


@given(hypergraphs())
def test_hypergraph_round_trip(h):
    back = parse_hypergraph(format_hypergraph(h))
    assert back.n == h.n and set(back.edges) == set(h.edges)


def test_mixed_edges_round_trip(tmp_path):
    h = hypergraph(5, [(0, 1), (1, 2, 3), (4,)])
    write_hypergraph(h, tmp_path / "m.hg")
    back = read_hypergraph(tmp_path / "m.hg")
    assert set(back.edges) == set(h.edges) and back.uniformity is None


def test_comments_and_blank_lines():
    h = parse_hypergraph("# header comment\n\n2 3 2\n0 1  # first\n1 2\n")
    assert h.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("text,line", [
    ("2 3 2\n0 1\n", 1),          # declared 2 edges, one present
    ("2 3 1\n0 5\n", 2),          # out of range
    ("2 3 1\n0 0\n", 2),          # repeated vertex
    ("3 4 1\n0 1\n", 2),          # wrong size
    ("2 3 2\n0 1\n1 0\n", 3),     # duplicate after sorting
    ("2 x 1\n0 1\n", 1),          # not an integer
    ("2 3\n", 1),                 # short header
])
def test_parse_errors_cite_lines(text, line):
    with pytest.raises(ParseError) as ei:
        parse_hypergraph(text, "f.hg")
    assert ei.value.line == line and str(ei.value).startswith(f"f.hg:{line}:")


def test_empty_text_is_an_error():
    with pytest.raises(ParseError):
        parse_hypergraph("# nothing\n")


def test_report_round_trip():
    d = {"construction": "x", "n": 12, "rate": 0.5, "ok": True, "none": None, "pts": [[1, 2.5]], "s": "a b", "empty": ""}
    assert parse_report(format_report(d)) == d


def test_report_rejects_garbage():
    with pytest.raises(ParseError) as ei:
        parse_report("a = 1\nbogus\n")
    assert ei.value.line == 2


def test_decomp_round_trip():
    f = build_cycle_power(9, 2)
    cert = two_cover_decompose(f, 4).with_homs()
    back, host = parse_decomp(format_decomp(cert, f))
    assert set(host.edges) == set(f.edges)
    assert [set(p.edges) for p in back.parts] == [set(p.edges) for p in cert.parts]
    assert back.homs == cert.homs and back.path_power == cert.path_power
    assert verify_krl(back, host).ok


def test_decomp_missing_part():
    cert = two_cover_decompose(cycle_graph(6), 2)
    text = format_decomp(cert, cycle_graph(6)).replace("[part 1]", "[other]")
    with pytest.raises(ParseError, match="part 1"):
        parse_decomp(text)


def test_decomp_wrong_kind():
    with pytest.raises(ParseError, match="kind"):
        parse_decomp("kind = p3\nn = 3\n")


def test_p3_round_trip():
    h = sample_family(FamilyParams(3, 12, 2), 3, 1)[0]
    dec = p3_hitting_decomposition(h)
    back, h2 = parse_p3(format_p3(dec, h))
    assert set(h2.edges) == set(h.edges)
    assert set(back.hitting_graph.edges) == set(dec.hitting_graph.edges)
    assert back.matching == dec.matching and back.deleted_set == dec.deleted_set
    assert back.certificate.placements == dec.certificate.placements
    assert not back.violations(h2)


def test_hit_round_trip_both_patterns():
    h = hypergraph(6, [(0, 1, 2), (2, 3, 4), (0, 4, 5)], 3)
    g, cert = hit_matching_path(h)
    g2, h2, cert2 = parse_hit(format_hit(g, h, cert, "matching_path"))
    assert set(g2.edges) == set(g.edges) and cert2.is_valid(g2, h2)
    h4 = hypergraph(7, [(0, 1, 2, 3), (0, 4, 5, 6)], 4)
    g, cert = hit_perfect_matching(h4, 2)
    g2, h2, cert2 = parse_hit(format_hit(g, h4, cert, "matching"))
    assert cert2.placements == cert.placements and cert2.is_valid(g2, h2)


def test_hit_unknown_pattern():
    h = hypergraph(3, [(0, 1, 2)], 3)
    g, cert = hit_matching_path(h)
    with pytest.raises(ParseError, match="pattern"):
        parse_hit(format_hit(g, h, cert, "star"))


def test_verify_report_round_trip():
    summary = {"mode": "exhaustive", "tested": 3, "universal": False}
    wits = [cycle_graph(4), complete_graph(3)]
    head, back = parse_verify_report(format_verify_report(summary, wits))
    assert head == summary
    assert [set(w.edges) for w in back] == [set(w.edges) for w in wits]
