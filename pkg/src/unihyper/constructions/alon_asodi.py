"""The layered random graph for few-edge universality and its clique hypergraph.

Vertices split into V_0..V_k. V_0 is joined to everything, V_1 is a clique,
and u in V_i (i >= 2) meets each v in V_1..V_i independently with probability
min(1, 8^(3-i)). Coins come from a counter-based hash of (seed, u, v), so the
graph is a pure function of the seed and never needs to be stored.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .. import budgets as _budgets
from ..core import Graph, Hypergraph

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = x + np.uint64(0x9E3779B97F4A7C15)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


@dataclass(frozen=True)
class AAParams:
    m: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.m < 4:
            raise ValueError("need m >= 4 so that k >= 1")

    @property
    def log_m(self) -> float:
        return math.log2(self.m)

    @property
    def k(self) -> int:
        return math.ceil(math.log2(self.log_m))

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        lg = self.log_m
        sizes = [math.ceil(4 * self.m / lg ** 2)]
        sizes += [math.ceil(4 * self.m * 2 ** i / lg) for i in range(1, self.k + 1)]
        return tuple(sizes)


def layer_probability(i: int) -> float:
    """Edge probability between V_i (i >= 2) and V_j, 1 <= j <= i."""
    return min(1.0, 8.0 ** (3 - i))


def pair_probability(i: int, j: int) -> float:
    if i == 0 or j == 0:
        return 1.0
    top = max(i, j)
    return 1.0 if top == 1 else layer_probability(top)


class AlonAsodiGraph:
    """Lazy adjacency for one sample of the layered random graph."""

    def __init__(self, p: AAParams):
        self.params = p
        self.sizes = p.layer_sizes
        self.starts = tuple(itertools.accumulate((0,) + self.sizes[:-1]))
        self.n = sum(self.sizes)
        self._key = splitmix64(p.seed ^ 0x5DEECE66D)

    def layer(self, v: int) -> int:
        return bisect_right(self.starts, v) - 1

    def layer_vertices(self, i: int) -> range:
        return range(self.starts[i], self.starts[i] + self.sizes[i])

    def _uniform(self, u: int, v: int) -> float:
        a, b = (u, v) if u < v else (v, u)
        x = splitmix64(self._key ^ splitmix64((a << 32) | b))
        return (x >> 11) * 2.0 ** -53

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        p = pair_probability(self.layer(u), self.layer(v))
        return p >= 1.0 or self._uniform(u, v) < p

    def has_edges(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Vectorized ``has_edge`` over paired arrays."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        starts = np.array(self.starts)
        lu = np.searchsorted(starts, us, side="right") - 1
        lv = np.searchsorted(starts, vs, side="right") - 1
        top = np.maximum(lu, lv)
        prob = np.where((lu == 0) | (lv == 0) | (top <= 1), 1.0, np.minimum(1.0, 8.0 ** (3 - top)))
        a = np.minimum(us, vs).astype(np.uint64)
        b = np.maximum(us, vs).astype(np.uint64)
        x = _splitmix64_np(np.uint64(self._key) ^ _splitmix64_np((a << np.uint64(32)) | b))
        unif = (x >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
        return (us != vs) & ((prob >= 1.0) | (unif < prob))

    def induced(self, verts: Sequence[int]) -> Graph:
        verts = list(verts)
        edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2) if self.has_edge(verts[i], verts[j])]
        return Graph(len(verts), tuple(edges))

    def adjacency_matrix(self, budget: int | None = None) -> np.ndarray:
        limit = _budgets.DEFAULT.vertices if budget is None else budget
        _budgets.check("vertex", self.n, limit)
        a = np.zeros((self.n, self.n), dtype=np.float32)
        idx = np.arange(self.n)
        for u in range(self.n):
            row = self.has_edges(np.full(self.n - u - 1, u), idx[u + 1:])
            a[u, u + 1:] = row
        return a + a.T

    def materialize(self, budget: int | None = None) -> Graph:
        a = self.adjacency_matrix(budget)
        us, vs = np.nonzero(np.triu(a, 1))
        return Graph(self.n, tuple(zip(us.tolist(), vs.tolist())))


def alon_asodi_graph(p: AAParams) -> AlonAsodiGraph:
    return AlonAsodiGraph(p)


# ---------------------------------------------------------------------------
# clique counts
# ---------------------------------------------------------------------------

def iter_cliques(g: Graph, r: int) -> Iterator[tuple[int, ...]]:
    """r-cliques as increasing tuples, by ordered extension."""
    up = [sorted(w for w in g.adj[v] if w > v) for v in range(g.n)]

    def extend(clique: list[int], cands: list[int]) -> Iterator[tuple[int, ...]]:
        if len(clique) == r:
            yield tuple(clique)
            return
        for i, v in enumerate(cands):
            nxt = [w for w in cands[i + 1:] if w in g.adj[v]]
            if len(clique) + 1 + len(nxt) < r:
                continue
            clique.append(v)
            yield from extend(clique, nxt)
            clique.pop()

    if r == 1:
        yield from ((v,) for v in range(g.n))
        return
    for v in range(g.n):
        yield from extend([v], up[v])


def clique_hypergraph(g: Graph, r: int, budget: int | None = None) -> Hypergraph:
    """K_r(g): the vertex sets of r-cliques of g."""
    if r < 2:
        raise ValueError("r must be >= 2")
    limit = _budgets.DEFAULT.rsets if budget is None else budget
    out = []
    for c in iter_cliques(g, r):
        out.append(c)
        if len(out) > limit:
            _budgets.check("clique", len(out), limit)
    return Hypergraph(g.n, tuple(out), r)


def expected_cliques(p: AAParams, r: int) -> float:
    """Exact expectation of the number of r-cliques (linearity over layer types)."""
    sizes = p.layer_sizes
    total = 0.0
    for combo in itertools.combinations_with_replacement(range(len(sizes)), r):
        count = 1
        for layer, mult in _multiplicities(combo):
            count *= math.comb(sizes[layer], mult)
        if not count:
            continue
        prob = 1.0
        for a, b in itertools.combinations(combo, 2):
            prob *= pair_probability(a, b)
        total += count * prob
    return total


def _multiplicities(combo: Sequence[int]):
    out: dict[int, int] = {}
    for x in combo:
        out[x] = out.get(x, 0) + 1
    return out.items()


def clique_bound(m: int, r: int) -> float:
    """r * 2^(21+5r) * (4m / log2 m)^r."""
    return r * 2.0 ** (21 + 5 * r) * (4 * m / math.log2(m)) ** r


@dataclass(frozen=True)
class TriangleEstimate:
    estimate: float
    exact_part: float      # strata whose triangles are all certain
    sampled_part: float
    std_error: float
    trivial_upper: int     # C(|V|, 3)
    meta: dict = field(default_factory=dict, compare=False)


def estimate_triangles(g: AlonAsodiGraph, samples_per_stratum: int = 20000, seed: int = 0) -> TriangleEstimate:
    """Unbiased stratified estimate of the triangle count.

    Strata are layer-type triples; strata whose three pair probabilities are
    all 1 are counted exactly, the others by uniform sampling of vertex triples.
    """
    rng = np.random.default_rng(seed)
    sizes = g.sizes
    exact = 0.0
    sampled = 0.0
    var = 0.0
    for combo in itertools.combinations_with_replacement(range(len(sizes)), 3):
        count = 1
        for layer, mult in _multiplicities(combo):
            count *= math.comb(sizes[layer], mult)
        if not count:
            continue
        if all(pair_probability(a, b) >= 1.0 for a, b in itertools.combinations(combo, 2)):
            exact += count
            continue
        picks = []
        for layer, mult in _multiplicities(combo):
            base = g.starts[layer]
            # sample `mult` distinct vertices from the layer (rejection on collisions)
            x = rng.integers(0, sizes[layer], size=(samples_per_stratum, mult))
            picks.append(x + base)
        trip = np.concatenate(picks, axis=1)
        distinct = (trip[:, 0] != trip[:, 1]) & (trip[:, 0] != trip[:, 2]) & (trip[:, 1] != trip[:, 2])
        trip = trip[distinct]
        hit = (g.has_edges(trip[:, 0], trip[:, 1]) & g.has_edges(trip[:, 1], trip[:, 2])
               & g.has_edges(trip[:, 0], trip[:, 2]))
        frac = float(hit.mean()) if len(hit) else 0.0
        sampled += count * frac
        var += count ** 2 * frac * (1 - frac) / max(1, len(hit))
    return TriangleEstimate(exact + sampled, exact, sampled, math.sqrt(var), math.comb(g.n, 3),
                            {"samples_per_stratum": samples_per_stratum})


def exact_triangles(g: AlonAsodiGraph, budget: int | None = None) -> int:
    """trace(A^3) / 6 on the dense adjacency matrix (small m only)."""
    a = g.adjacency_matrix(budget)
    a64 = a.astype(np.float64)
    return int(round(float(np.einsum("ij,ji->", a64 @ a64, a64)) / 6))


def pair_density(g: AlonAsodiGraph, i: int, j: int, samples: int, rng: np.random.Generator) -> tuple[float, float, int]:
    """Empirical edge density between V_i and V_j: (density, standard error at the model p, trials)."""
    us = rng.integers(0, g.sizes[i], size=samples) + g.starts[i]
    vs = rng.integers(0, g.sizes[j], size=samples) + g.starts[j]
    keep = us != vs
    us, vs = us[keep], vs[keep]
    hits = g.has_edges(us, vs)
    p = pair_probability(i, j)
    return float(hits.mean()), math.sqrt(p * (1 - p) / len(us)), len(us)


__all__ = [
    "AAParams", "AlonAsodiGraph", "TriangleEstimate", "alon_asodi_graph", "clique_bound", "clique_hypergraph",
    "estimate_triangles", "exact_triangles", "expected_cliques", "iter_cliques", "layer_probability",
    "pair_density", "pair_probability",
]
