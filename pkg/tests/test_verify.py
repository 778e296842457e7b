import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st
from networkx.algorithms import isomorphism

from unihyper.constructions import clique_hypergraph
from unihyper.core import (FamilyParams, Hypergraph, build_cycle_power, complete_graph, complete_hypergraph,
                           cycle_graph, graph, hypergraph, path_graph)
from unihyper.hitting import ExpansionMembership
from unihyper.verify import (EmbedResult, count_cliques, embed_hypergraph, mapping_valid, scaling_fit,
                             verify_universal, wilson_interval)

from conftest import graph_from_bits


def nx_embeds(small, big) -> bool:
    a, b = nx.Graph(), nx.Graph()
    a.add_nodes_from(range(small.n))
    a.add_edges_from(small.edges)
    b.add_nodes_from(range(big.n))
    b.add_edges_from(big.edges)
    return isomorphism.GraphMatcher(b, a).subgraph_is_monomorphic()


# -- embedding search --------------------------------------------------------

def test_c4_into_tree_is_absent():
    tree = graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert embed_hypergraph(cycle_graph(4), tree).status == "absent"


def test_any_delta2_graph_embeds_into_c8_square():
    host = build_cycle_power(8, 2)
    for g in (cycle_graph(8), graph(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 7), (3, 7)]),
              graph(8, [(0, 1), (2, 3)]), graph(8, [])):
        res = embed_hypergraph(g, host)
        assert res.found and mapping_valid(g, host, res.mapping)


def test_empty_and_oversized():
    assert embed_hypergraph(hypergraph(0, []), path_graph(3)) == EmbedResult("found", (), 0)
    assert embed_hypergraph(path_graph(5), path_graph(4)).status == "absent"


def test_timeout_is_not_absence():
    res = embed_hypergraph(complete_graph(6), complete_graph(30).remove_edges([(0, 1)]), node_budget=3)
    assert res.status == "timeout"


@given(st.integers(0, 2 ** 10 - 1), st.integers(0, 2 ** 15 - 1))
def test_embedding_matches_networkx(sbits, bbits):
    small = graph_from_bits(5, sbits)
    big = graph_from_bits(6, bbits)
    res = embed_hypergraph(small, big)
    assert res.found == nx_embeds(small, big)
    if res.found:
        assert mapping_valid(small, big, res.mapping)


@given(st.integers(0, 2 ** 10 - 1), st.integers(0, 2 ** 20 - 1))
def test_hypergraph_embedding_against_permutations(sbits, bbits):
    trip5 = list(itertools.combinations(range(5), 3))
    trip6 = list(itertools.combinations(range(6), 3))
    small = hypergraph(5, [t for i, t in enumerate(trip5) if sbits >> i & 1], 3)
    big = hypergraph(6, [t for i, t in enumerate(trip6) if bbits >> i & 1], 3)
    want = any(all(tuple(sorted(p[v] for v in e)) in big.edge_set for e in small.edges)
               for p in itertools.permutations(range(6), 5))
    res = embed_hypergraph(small, big)
    assert res.found == want


def test_embed_into_lazy_oracle():
    g = build_cycle_power(7, 2)
    mem = ExpansionMembership(g, path_graph(3), 3)
    small = hypergraph(5, [(0, 1, 2), (2, 3, 4)], 3)
    res = embed_hypergraph(small, mem)
    assert res.found and mapping_valid(small, mem, res.mapping)


# -- universality runs --------------------------------------------------------

def test_complete_host_embeds_everything():
    rep = verify_universal(complete_hypergraph(5, 3), FamilyParams(3, 4, 2), "exhaustive")
    assert rep.tested == rep.embedded > 0 and rep.universal


@pytest.mark.parametrize("n", [6, 7])
def test_cycle_square_universal(n):
    rep = verify_universal(build_cycle_power(n, 2), FamilyParams(2, n, 2), "exhaustive")
    assert rep.rate == 1.0 and rep.universal and not rep.failures


def test_plain_cycle_has_witness():
    rep = verify_universal(cycle_graph(8), FamilyParams(2, 8, 2), "exhaustive", max_failures=1)
    assert rep.universal is False
    w = rep.failures[0]
    assert embed_hypergraph(w, cycle_graph(8)).status == "absent"


def test_sampled_report_and_determinism():
    host = build_cycle_power(10, 2)
    a = verify_universal(host, FamilyParams(2, 10, 2), "sampled", seed=4, sample_count=30)
    b = verify_universal(host, FamilyParams(2, 10, 2), "sampled", seed=4, sample_count=30)
    assert a.summary() == b.summary()
    s = a.summary()
    assert s["tested"] == 30 and s["wilson_low"] <= a.rate <= s["wilson_high"]
    assert a.embedded <= a.tested


def test_bad_mode():
    with pytest.raises(ValueError):
        verify_universal(path_graph(3), FamilyParams(2, 3, 2), "both")


@pytest.mark.parametrize("k,n", [(0, 10), (3, 10), (10, 10), (47, 100)])
def test_wilson_matches_statsmodels(k, n):
    proportion = pytest.importorskip("statsmodels.stats.proportion")
    lo, hi = proportion.proportion_confint(k, n, method="wilson")
    got = wilson_interval(k, n, z=1.959963984540054)  # exact 97.5% normal quantile
    assert got[0] == pytest.approx(lo, abs=1e-9) and got[1] == pytest.approx(hi, abs=1e-9)


# -- cliques and scaling ------------------------------------------------------

@given(st.integers(0, 2 ** 21 - 1), st.integers(2, 5))
def test_count_cliques_matches_hypergraph(bits, r):
    g = graph_from_bits(7, bits)
    c = count_cliques(g, r)
    if r >= 3:
        assert c == clique_hypergraph(g, r).m
    brute = sum(1 for s in itertools.combinations(range(7), r)
                if all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)))
    assert c == brute


def test_scaling_fit_exact_power():
    fit = scaling_fit([(n, 3 * n ** 1.5) for n in (4, 8, 16, 32)], 1.5)
    assert fit.fitted_exponent == pytest.approx(1.5)
    assert fit.intercept == pytest.approx(math.log(3))
    assert max(abs(x) for x in fit.residuals) < 1e-9


@pytest.mark.parametrize("pts", [[(4, 1), (8, 2)], [(4, 1), (4, 2), (4, 3)], [(4, 1), (8, 0), (16, 3)]])
def test_scaling_fit_rejects_degenerate(pts):
    with pytest.raises(ValueError):
        scaling_fit(pts)


@given(st.lists(st.tuples(st.integers(2, 10 ** 4), st.integers(1, 10 ** 6)), min_size=3, max_size=8))
def test_scaling_fit_residuals_sum_to_zero(pts):
    if len({x for x, _ in pts}) < 2:
        return
    fit = scaling_fit(pts)
    assert abs(sum(fit.residuals)) < 1e-6


def test_hypergraph_type_is_accepted():
    assert isinstance(complete_hypergraph(4, 3), Hypergraph)
