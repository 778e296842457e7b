"""Product graphs on k-tuples of base vertices and embeddings of decomposable graphs into them.

Two distinct tuples are adjacent when at least ``r_indices`` coordinates are
within base-graph distance ``ell`` (equal coordinates count, distance 0).
Tuple ``(c_0, ..., c_{k-1})`` has index ``sum c_i * m^(k-1-i)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import budgets as _budgets
from ..core import Graph
from ..decomposition.thin import DecompCertificate, verify_krl


@dataclass(frozen=True)
class ProductParams:
    k: int
    r_indices: int
    ell: int

    def __post_init__(self) -> None:
        if not 1 <= self.r_indices <= self.k:
            raise ValueError(f"need 1 <= r_indices <= k, got r_indices={self.r_indices}, k={self.k}")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")


def within_matrix(base: Graph, ell: int) -> np.ndarray:
    """Boolean m x m matrix: base distance <= ell (diagonal included)."""
    w = np.zeros((base.n, base.n), dtype=bool)
    for s in range(base.n):
        for t in base.distances_from(s, cutoff=ell):
            w[s, t] = True
    return w


def tuple_of(index: int, m: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        index, c = divmod(index, m)
        out.append(c)
    return tuple(reversed(out))


def index_of(t: Sequence[int], m: int) -> int:
    x = 0
    for c in t:
        x = x * m + c
    return x


def product_graph(base: Graph, p: ProductParams, budget: int | None = None) -> Graph:
    """``G_{k,r,ell}`` over ``base`` (vectorized per coordinate)."""
    m, k = base.n, p.k
    n = m ** k
    _budgets.check("vertex", n, _budgets.DEFAULT.vertices if budget is None else budget)
    w = within_matrix(base, p.ell)
    coords = np.array(list(itertools.product(range(m), repeat=k)), dtype=np.int64).reshape(n, k)
    edges = []
    block = max(1, 4_000_000 // max(n, 1))
    for lo in range(0, n, block):
        hi = min(n, lo + block)
        cnt = np.zeros((hi - lo, n), dtype=np.int16)
        for i in range(k):
            cnt += w[coords[lo:hi, i][:, None], coords[None, :, i]]
        rows, cols = np.nonzero(cnt >= p.r_indices)
        rows = rows + lo
        keep = rows < cols
        edges.extend(zip(rows[keep].tolist(), cols[keep].tolist()))
    return Graph(n, tuple(edges))


class ProductAdjacency:
    """Adjacency of the product graph without materializing its edges."""

    def __init__(self, base: Graph, p: ProductParams):
        self.base, self.params = base, p
        self.m = base.n
        self.n = base.n ** p.k
        self.within = within_matrix(base, p.ell)

    def tuple_of(self, v: int) -> tuple[int, ...]:
        return tuple_of(v, self.m, self.params.k)

    def has_edge(self, u, v=None) -> bool:
        if v is None:
            u, v = u
        if u == v:
            return False
        a, b = self.tuple_of(u), self.tuple_of(v)
        return sum(bool(self.within[x, y]) for x, y in zip(a, b)) >= self.params.r_indices

    def close_pair_counts(self) -> list[int]:
        """coef[j] = number of ordered tuple pairs (a, b) with exactly j close coordinates."""
        balls = self.within.sum(axis=1)
        per = [int(self.m * self.m - balls.sum()), int(balls.sum())]   # (far, close) summed over a_i
        coef = [1]
        for _ in range(self.params.k):
            nxt = [0] * (len(coef) + 1)
            for j, c in enumerate(coef):
                nxt[j] += c * per[0]
                nxt[j + 1] += c * per[1]
            coef = nxt
        return coef

    def edge_count(self) -> int:
        coef = self.close_pair_counts()
        return (sum(coef[self.params.r_indices:]) - self.n) // 2

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def materialize(self, budget: int | None = None) -> Graph:
        return product_graph(self.base, self.params, budget)


def product_graph_bruteforce(base: Graph, p: ProductParams) -> Graph:
    """Reference route: test every pair of tuples with plain BFS distances."""
    m, k = base.n, p.k
    dist = [base.distances_from(s) for s in range(m)]
    tuples = list(itertools.product(range(m), repeat=k))
    edges = []
    for a in range(len(tuples)):
        for b in range(a + 1, len(tuples)):
            close = sum(1 for x, y in zip(tuples[a], tuples[b]) if dist[x].get(y, p.ell + 1) <= p.ell)
            if close >= p.r_indices:
                edges.append((a, b))
    return Graph(len(tuples), tuple(edges))


def degree_bound(base: Graph, p: ProductParams) -> int:
    """C(k, r) * (largest ball)^r * m^(k-r): caps the degree of every tuple."""
    from math import comb

    ball = int(within_matrix(base, p.ell).sum(axis=1).max())
    return comb(p.k, p.r_indices) * ball ** p.r_indices * base.n ** (p.k - p.r_indices)


def _level_bound(n: int, k: int, i: int) -> int:
    """Largest integer b with b^k <= n^(k-i), i.e. floor(n^((k-i)/k)) exactly."""
    target = n ** (k - i)
    b = int(round(target ** (1.0 / k))) if k else 0
    while b ** k > target:
        b -= 1
    while (b + 1) ** k <= target:
        b += 1
    return b


@dataclass(frozen=True)
class WalkEmbedding:
    vertex_map: tuple[int, ...]       # F-vertex -> product vertex index
    walks: tuple[tuple[int, ...], ...]
    level_max: tuple[int, ...]        # largest level set after each stage
    level_bounds: tuple[int, ...]
    non_returning: bool = True


def embed_decomposed(f: Graph, cert: DecompCertificate, base: Graph, p: ProductParams,
                     node_budget: int | None = None, non_returning: bool = True) -> WalkEmbedding | None:
    """Injective map of f into the product graph, one base-graph walk per coordinate.

    Vertex v goes to ``(w_1[g_1(v)], ..., w_k[g_k(v)])`` where g_i are the
    certificate's path-power maps and w_i are walks in ``base``. Walk steps are
    chosen greedily to keep level sets below floor(n^((k-i)/k)), backtracking
    on stalls. Non-returning walks are tried first; if that search fails,
    walks may step back. Returns None when both searches fail or the node
    budget runs out.
    """
    budget = _budgets.DEFAULT.search_nodes if node_budget is None else node_budget
    out = _walk_search(f, cert, base, p, budget, non_returning)
    if out is None and non_returning:
        out = _walk_search(f, cert, base, p, budget, False)
    return out


def _walk_search(f: Graph, cert: DecompCertificate, base: Graph, p: ProductParams, budget: int,
                 non_returning: bool) -> WalkEmbedding | None:
    if cert.homs is None:
        raise ValueError("certificate has no path-power maps")
    if cert.k != p.k or cert.multiplicity < p.r_indices or cert.path_power > p.ell:
        raise ValueError("certificate parameters do not match the product")
    check = verify_krl(cert, f)
    if not check:
        raise ValueError(f"invalid certificate: {check.violation}")
    n, k, m = f.n, p.k, base.n
    if n == 0:
        return WalkEmbedding((), tuple(() for _ in range(k)), (), ())
    at = [[0] * n for _ in range(k)]
    for i, hom in enumerate(cert.homs):
        for v, x in enumerate(hom):
            at[i][x] = v
    bounds = [_level_bound(n, k, i + 1) for i in range(k)]
    walks = [[-1] * n for _ in range(k)]
    prefix: list[tuple[int, ...]] = [()] * n
    counts = [Counter() for _ in range(k)]
    nbrs = [sorted(base.adj[c]) for c in range(m)]
    total = k * n
    cands: list = [None] * total
    t = 0
    while 0 <= t < total:
        i, j = divmod(t, n)
        v = at[i][j]
        if cands[t] is None:
            if j == 0:
                pool = list(range(m))
            else:
                prev = walks[i][j - 1]
                pool = [c for c in nbrs[prev] if not (non_returning and j >= 2 and c == walks[i][j - 2])]
            pool.sort(key=lambda c: (counts[i][prefix[v] + (c,)], c))
            cands[t] = iter(pool)
        placed = False
        for c in cands[t]:
            budget -= 1
            if budget < 0:
                return None
            key = prefix[v] + (c,)
            if counts[i][key] < bounds[i]:
                counts[i][key] += 1
                walks[i][j] = c
                prefix[v] = key
                placed = True
                break
        if placed:
            t += 1
            continue
        cands[t] = None
        t -= 1
        if t >= 0:
            i, j = divmod(t, n)
            v = at[i][j]
            counts[i][prefix[v]] -= 1
            prefix[v] = prefix[v][:-1]
            walks[i][j] = -1
    if t < 0:
        return None
    level_max = tuple(max(c.values()) for c in counts)
    assert all(a <= b for a, b in zip(level_max, bounds)), "level-set bound violated"
    vmap = tuple(index_of(prefix[v], m) for v in range(n))
    return WalkEmbedding(vmap, tuple(tuple(w) for w in walks), level_max, tuple(bounds), non_returning)


def embedding_valid(f: Graph, host: Graph, vmap: Sequence[int]) -> bool:
    if len(vmap) != f.n or len(set(vmap)) != len(vmap) or any(not 0 <= x < host.n for x in vmap):
        return False
    return all(host.has_edge(vmap[u], vmap[v]) for u, v in f.edges)
