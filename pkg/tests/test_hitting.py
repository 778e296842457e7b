import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st
from networkx.algorithms import isomorphism

from unihyper.core import (FamilyParams, Graph, complete_graph, cycle_graph, graph, hypergraph, matching_plus_path,
                           path_graph, perfect_matching_pattern, sample_family, star_graph)
from unihyper.errors import BudgetExceeded
from unihyper.hitting import (ExpansionMembership, NotHit, check_hits, expand, expand_bruteforce, hit_matching_path,
                              hit_perfect_matching, path_centres)

from conftest import graph_from_bits


def nx_has_copy(pattern: Graph, host: Graph, verts) -> bool:
    """Independent oracle: subgraph monomorphism of the pattern's non-isolated part in host[verts]."""
    hs = nx.Graph()
    hs.add_nodes_from(verts)
    hs.add_edges_from(e for e in host.edges if set(e) <= set(verts))
    ps = nx.Graph(list(pattern.edges))
    if ps.number_of_nodes() == 0:
        return True
    return isomorphism.GraphMatcher(hs, ps).subgraph_is_monomorphic()


# -- check_hits -------------------------------------------------------------

def test_check_hits_identity_path():
    cert = check_hits(path_graph(3), hypergraph(3, [(0, 1, 2)], 3), path_graph(3))
    assert cert.placements[(0, 1, 2)][1] == 1


def test_check_hits_empty_graph_fails_on_edge():
    with pytest.raises(NotHit) as ex:
        check_hits(graph(3, []), hypergraph(3, [(0, 1, 2)], 3), complete_graph(2))
    assert tuple(ex.value.edge) == (0, 1, 2)


def test_check_hits_star_centre_in_middle():
    h = hypergraph(4, [(0, 1, 2), (0, 2, 3)], 3)
    cert = check_hits(star_graph(3), h, path_graph(3))
    assert all(pl[1] == 0 for pl in cert.placements.values())
    assert cert.is_valid(star_graph(3), h)


def test_check_hits_pattern_too_large():
    with pytest.raises(ValueError):
        check_hits(path_graph(3), hypergraph(3, [(0, 1, 2)], 3), path_graph(4))


# -- expand -----------------------------------------------------------------

def test_expand_examples():
    assert expand(path_graph(3), path_graph(3), 3).edges == ((0, 1, 2),)
    assert expand(path_graph(4), perfect_matching_pattern(4, 2), 4).edges == ((0, 1, 2, 3),)
    assert set(expand(star_graph(3), path_graph(3), 3).edges) == {(0, 1, 2), (0, 1, 3), (0, 2, 3)}


def test_expand_budget():
    with pytest.raises(BudgetExceeded):
        expand(cycle_graph(20), path_graph(3), 3, budget=100)


def test_expand_rejects_bad_uniformity():
    with pytest.raises(ValueError):
        expand(cycle_graph(5), path_graph(3), 2)


@given(st.integers(0, 2 ** 15 - 1), st.sampled_from(["p3", "match", "mp5", "k3"]))
def test_expand_matches_oracles(bits, which):
    g = graph_from_bits(6, bits)
    f, r = {"p3": (path_graph(3), 3), "match": (perfect_matching_pattern(4, 2), 4),
            "mp5": (matching_plus_path(5), 5), "k3": (complete_graph(3), 4)}[which]
    got = set(expand(g, f, r).edges)
    assert got == set(expand_bruteforce(g, f, r).edges)
    want = {e for e in itertools.combinations(range(6), r) if nx_has_copy(f, g, e)}
    assert got == want
    mem = ExpansionMembership(g, f, r)
    assert all(mem(e) == (e in got) for e in itertools.combinations(range(6), r))


def test_expand_of_3_uniform_host():
    g = hypergraph(6, [(0, 1, 2), (3, 4, 5)], 3)
    h = expand(g, perfect_matching_pattern(6, 3), 6)
    assert h.edges == ((0, 1, 2, 3, 4, 5),)


# -- edge-count inequality --------------------------------------------------

@given(st.integers(0, 2 ** 21 - 1))
def test_matching_expansion_edge_bound(bits):
    g = graph_from_bits(7, bits)
    if g.m > 12:
        return
    assert expand(g, perfect_matching_pattern(4, 2), 4).m <= g.m ** 2


# -- composition (identity embedding into expand of a supergraph) -----------

@given(st.integers(0, 10 ** 6))
def test_hitting_graph_composes_with_supergraph(seed):
    rng = random.Random(seed)
    h = sample_family(FamilyParams(3, 9, 2), seed, 1, regular=True, linear=True)[0]
    g, cert = hit_matching_path(h)
    extra = [e for e in itertools.combinations(range(9), 2) if rng.random() < 0.2]
    g2 = graph(9, set(g.edges) | set(extra))
    big = expand(g2, path_graph(3), 3)
    assert set(h.edges) <= set(big.edges)


# -- explicit hitting graphs -------------------------------------------------

def test_hit_perfect_matching_examples():
    g, _ = hit_perfect_matching(hypergraph(4, [(0, 1, 2, 3)], 4), 2)
    assert set(g.edges) == {(0, 1), (2, 3)}
    h = hypergraph(7, [(0, 1, 2, 3), (0, 4, 5, 6)], 4)
    g, cert = hit_perfect_matching(h, 2)
    assert set(g.edges) == {(0, 1), (2, 3), (0, 4), (5, 6)}
    assert g.max_degree == 2 == h.max_degree
    assert cert.is_valid(g, h)
    g, _ = hit_perfect_matching(hypergraph(6, [tuple(range(6))], 6), 3)
    assert set(g.edges) == {(0, 1, 2), (3, 4, 5)}


def test_hit_perfect_matching_divisibility():
    with pytest.raises(ValueError):
        hit_perfect_matching(hypergraph(5, [(0, 1, 2, 3, 4)], 5), 2)


def test_hit_matching_path_examples():
    assert math.ceil(4 * 2 / 3) == 3
    g, cert = hit_matching_path(hypergraph(3, [(0, 1, 2)], 3))
    assert g.m == 2 and g.max_degree == 2
    h = hypergraph(6, [(0, 1, 2), (2, 3, 4), (0, 4, 5)], 3)
    g, cert = hit_matching_path(h)
    assert g.max_degree <= 3 and cert.is_valid(g, h)


def test_hit_matching_path_rejects_even_r():
    with pytest.raises(ValueError):
        hit_matching_path(hypergraph(4, [(0, 1, 2, 3)], 4))


@given(st.sampled_from([(3, 12, 2), (3, 15, 3), (5, 20, 2), (5, 15, 3), (7, 35, 2), (3, 12, 4)]),
       st.integers(0, 10 ** 6))
def test_hit_matching_path_degree_bound(params, seed):
    r, n, d = params
    for h in sample_family(FamilyParams(r, n, d), seed, 2):
        g, cert = hit_matching_path(h)
        assert cert.is_valid(g, h)
        assert g.max_degree <= math.ceil((r + 1) * h.max_degree / r) if h.m else g.m == 0
        centres = path_centres(h) if h.m else {}
        cap = math.ceil(h.max_degree / r) if h.m else 0
        assert all(list(centres.values()).count(v) <= cap for v in set(centres.values()))


@given(st.sampled_from([(4, 12, 2), (6, 12, 3), (4, 10, 3), (6, 18, 2)]), st.integers(0, 10 ** 6),
       st.sampled_from([2, 3]))
def test_hit_perfect_matching_degree(params, seed, rp):
    r, n, d = params
    if r % rp:
        return
    for h in sample_family(FamilyParams(r, n, d), seed, 2):
        g, cert = hit_perfect_matching(h, rp)
        assert cert.is_valid(g, h)
        assert g.max_degree <= h.max_degree
