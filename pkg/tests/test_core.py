import itertools

import pytest
from hypothesis import given, strategies as st

from unihyper.core import (EdgeFamilyParams, FamilyParams, Graph, build_cycle_power,
                           build_path_power, enumerate_edge_family, enumerate_family, hypergraph, in_family,
                           line_graph, sample_family)
from unihyper.errors import BudgetExceeded

from conftest import as_set, brute_family


# -- types -----------------------------------------------------------------

def test_graph_rejects_loops_duplicates_and_range():
    with pytest.raises(ValueError):
        Graph(3, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(3, ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        Graph(3, ((0, 3),))


def test_hypergraph_uniformity_enforced():
    with pytest.raises(ValueError):
        hypergraph(5, [(0, 1, 2), (3, 4)], 3)
    h = hypergraph(5, [(2, 1, 0), (3, 4)])
    assert h.edges[0] == (0, 1, 2)
    assert h.rank == 3 and not h.is_uniform()


def test_family_params_invariants():
    for bad in ((1, 3, 1), (3, 2, 1), (2, 3, 0)):
        with pytest.raises(ValueError):
            FamilyParams(*bad)
    with pytest.raises(ValueError):
        EdgeFamilyParams(2, 0)


# -- powers ----------------------------------------------------------------

@pytest.mark.parametrize("n,ell,m", [(4, 1, 3), (4, 2, 5), (10, 4, 30), (1, 3, 0)])
def test_path_power_examples(n, ell, m):
    assert build_path_power(n, ell).m == m


def test_path_power_square_edges():
    assert set(build_path_power(4, 2).edges) == {(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)}


@pytest.mark.parametrize("n,ell,m,reg", [(5, 2, 10, 4), (8, 2, 16, 4), (12, 4, 48, 8)])
def test_cycle_power_examples(n, ell, m, reg):
    g = build_cycle_power(n, ell)
    assert g.m == m and set(g.degrees()) == {reg}


@given(st.integers(1, 30), st.integers(1, 6))
def test_path_power_edge_count(n, ell):
    assert build_path_power(n, ell).m == sum(max(0, n - d) for d in range(1, ell + 1))


@given(st.integers(3, 30), st.integers(1, 6))
def test_cycle_power_regular(n, ell):
    g = build_cycle_power(n, ell)
    for i, j in g.edges:
        assert 1 <= min(j - i, n - (j - i)) <= ell
    if 2 * ell < n:
        assert set(g.degrees()) == {2 * ell} and g.m == n * ell


# -- line graph ------------------------------------------------------------

def test_line_graph_examples():
    assert line_graph(hypergraph(5, [(0, 1, 2), (2, 3, 4)], 3)).edges == ((0, 1),)
    lg = line_graph(hypergraph(6, [(0, 1, 2), (3, 4, 5)], 3))
    assert lg.n == 2 and lg.m == 0


def test_line_graph_of_linear_2_regular_is_3_regular():
    h = sample_family(FamilyParams(3, 9, 2), 1, 1, regular=True, linear=True)[0]
    lg = line_graph(h)
    assert lg.n == 6 and set(lg.degrees()) == {3}


@given(st.integers(1, 2 ** 20 - 1))
def test_line_graph_degree_counts_intersections(bits):
    triples = list(itertools.combinations(range(6), 3))
    h = hypergraph(6, [t for i, t in enumerate(triples) if bits >> i & 1], 3)
    lg = line_graph(h)
    for i, e in enumerate(h.edges):
        assert lg.degree(i) == sum(1 for j, f in enumerate(h.edges) if j != i and set(e) & set(f))


# -- family enumeration ----------------------------------------------------

@pytest.mark.parametrize("r,n,delta,count", [(2, 3, 2, 8), (3, 4, 1, 5), (2, 2, 1, 2)])
def test_enumerate_family_examples(r, n, delta, count):
    assert sum(1 for _ in enumerate_family(FamilyParams(r, n, delta))) == count


@pytest.mark.parametrize("r,n,delta", [(2, 4, 1), (2, 4, 2), (2, 5, 2), (2, 5, 3), (3, 5, 2), (3, 5, 1),
                                       (2, 4, 3), (3, 4, 2)])
def test_enumerate_family_matches_bruteforce(r, n, delta):
    got = [as_set(h) for h in enumerate_family(FamilyParams(r, n, delta))]
    assert len(got) == len(set(got))
    assert set(got) == set(brute_family(r, n, delta))


def test_enumerate_family_deterministic_and_budgeted():
    p = FamilyParams(2, 5, 2)
    a = [h.edges for h in enumerate_family(p)]
    assert a == [h.edges for h in enumerate_family(p)]
    with pytest.raises(BudgetExceeded) as ex:
        list(enumerate_family(p, budget=10))
    assert ex.value.estimate == 11


def test_enumerate_edge_family_examples():
    one = list(enumerate_edge_family(EdgeFamilyParams(3, 1)))
    assert [h.edges for h in one] == [((0, 1, 2),)]


def _brute_edge_family(r, m):
    out = set()
    for v in range(r, r * m + 1):
        cands = list(itertools.combinations(range(v), r))
        for k in range(1, m + 1):
            for es in itertools.combinations(cands, k):
                if set(itertools.chain.from_iterable(es)) == set(range(v)):
                    out.add((v, frozenset(es)))
    return out


@pytest.mark.parametrize("r,m", [(2, 2), (3, 2), (2, 3)])
def test_enumerate_edge_family_bruteforce(r, m):
    got = [(h.n, as_set(h)) for h in enumerate_edge_family(EdgeFamilyParams(r, m))]
    assert len(got) == len(set(got))
    assert set(got) == _brute_edge_family(r, m)
    # (2, 2): a single edge on 2 vertices, a path on 3, and 3 perfect matchings on 4
    if (r, m) == (2, 2):
        assert len(got) == 1 + 3 + 3


# -- sampling --------------------------------------------------------------

def test_sample_family_regular_linear_example():
    out = sample_family(FamilyParams(3, 9, 2), 1, 5, regular=True, linear=True)
    assert len(out) == 5
    for h in out:
        assert h.is_uniform(3) and h.is_regular(2) and h.is_linear()


def test_sample_family_deterministic():
    p = FamilyParams(2, 5, 2)
    a = sample_family(p, 7, 3)
    assert [h.edges for h in a] == [h.edges for h in sample_family(p, 7, 3)]
    assert all(in_family(h, p) for h in a)


def test_sample_family_single_edge_option():
    (h,) = sample_family(FamilyParams(4, 4, 1), 3, 1)
    assert h.edges in ((), ((0, 1, 2, 3),))


@given(st.sampled_from([(3, 9), (3, 12), (3, 15), (4, 12), (5, 15), (3, 30)]), st.integers(0, 10 ** 6),
       st.booleans(), st.booleans())
def test_sample_family_always_in_family(rn, seed, regular, linear):
    r, n = rn
    p = FamilyParams(r, n, 2)
    for h in sample_family(p, seed, 2, regular=regular, linear=linear):
        assert in_family(h, p)
        if regular:
            assert h.is_regular(2)
        if linear:
            assert h.is_linear()


def test_line_graph_requires_edges():
    with pytest.raises(ValueError):
        line_graph(hypergraph(3, [], 3))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_empty_hypergraph_is_member(r):
    assert in_family(hypergraph(r + 1, [], r), FamilyParams(r, r + 1, 1))
