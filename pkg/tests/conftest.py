import itertools

from hypothesis import HealthCheck, settings

from unihyper.core import Graph, hypergraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def brute_family(r, n, delta):
    """All labeled r-uniform edge sets on [n] with max degree <= delta, by plain subset filtering."""
    cands = list(itertools.combinations(range(n), r))
    out = []
    for mask in range(1 << len(cands)):
        es = [cands[i] for i in range(len(cands)) if mask >> i & 1]
        deg = [0] * n
        for e in es:
            for v in e:
                deg[v] += 1
        if max(deg, default=0) <= delta:
            out.append(frozenset(es))
    return out


def graph_from_bits(n, bits):
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, tuple(p for i, p in enumerate(pairs) if bits >> i & 1))


def as_set(h):
    return frozenset(h.edges)


__all__ = ["brute_family", "graph_from_bits", "as_set", "hypergraph"]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i, (out, secs) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(mod.line(i, out, secs))
