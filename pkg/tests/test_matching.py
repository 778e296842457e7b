import networkx as nx
from hypothesis import given, strategies as st

from unihyper.matching import hopcroft_karp, matching_size


@given(st.integers(0, 8), st.integers(0, 8), st.data())
def test_matches_networkx_maximum(nl, nr, data):
    adj = [sorted(data.draw(st.sets(st.integers(0, nr - 1), max_size=nr))) if nr else [] for _ in range(nl)]
    match = hopcroft_karp(adj, nr)
    # a valid matching: distinct partners, all along listed edges
    partners = [y for y in match if y >= 0]
    assert len(partners) == len(set(partners))
    assert all(y in adj[x] for x, y in enumerate(match) if y >= 0)
    b = nx.Graph()
    b.add_nodes_from(("L", x) for x in range(nl))
    b.add_nodes_from(("R", y) for y in range(nr))
    b.add_edges_from((("L", x), ("R", y)) for x in range(nl) for y in adj[x])
    want = len(nx.bipartite.hopcroft_karp_matching(b, top_nodes=[("L", x) for x in range(nl)])) // 2
    assert matching_size(match) == want
