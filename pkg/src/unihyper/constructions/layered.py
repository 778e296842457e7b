"""The odd-r layered hypergraph and the matching layer decomposition of inputs.

The layered hypergraph lives on t+1 disjoint vertex blocks: t copies of C_n^4
and one product graph, with t = (r-3)/2. An r-set is an edge when its trace
on every block spans a path in that block's graph; traces on the cycle-power
blocks have at most 3 vertices.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .. import budgets as _budgets
from ..core import Graph, Hypergraph, build_cycle_power, line_graph
from ..decomposition.factors import spanning_23
from ..errors import SearchExhausted
from .product import ProductAdjacency, ProductParams, product_graph

PATH_LAYER_MAX = 3


def spans_path(g: Graph, verts: Sequence[int]) -> bool:
    """Whether g[verts] has a Hamiltonian path (bitmask DP)."""
    k = len(verts)
    if k <= 1:
        return True
    if k == 2:
        return g.has_edge(verts[0], verts[1])
    if k == 3:
        a, b, c = verts
        return g.has_edge(a, b) + g.has_edge(b, c) + g.has_edge(a, c) >= 2
    adj = [sum(1 << j for j in range(k) if g.has_edge(verts[i], verts[j])) for i in range(k)]
    reach = [0] * (1 << k)   # reach[mask] = endpoints of paths covering mask
    for i in range(k):
        reach[1 << i] = 1 << i
    for mask in range(1, 1 << k):
        ends = reach[mask]
        if not ends:
            continue
        for i in range(k):
            if ends >> i & 1:
                nxt = adj[i] & ~mask
                while nxt:
                    j = (nxt & -nxt).bit_length() - 1
                    reach[mask | 1 << j] |= 1 << j
                    nxt &= nxt - 1
    return reach[(1 << k) - 1] != 0


def spans_path_bruteforce(g: Graph, verts: Sequence[int]) -> bool:
    """Reference route: try every ordering."""
    if len(verts) <= 1:
        return True
    return any(all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)) for p in itertools.permutations(verts))


@dataclass(frozen=True)
class LayeredHypergraph:
    r: int
    layers: tuple[Graph, ...]
    offsets: tuple[int, ...]

    @property
    def t(self) -> int:
        return (self.r - 3) // 2

    @property
    def n(self) -> int:
        return self.offsets[-1] + self.layers[-1].n

    def layer_of(self, v: int) -> int:
        for i in range(len(self.offsets) - 1, -1, -1):
            if v >= self.offsets[i]:
                return i
        raise ValueError(v)

    def split(self, f: Iterable[int]) -> list[list[int]]:
        parts: list[list[int]] = [[] for _ in self.layers]
        for v in f:
            i = self.layer_of(v)
            parts[i].append(v - self.offsets[i])
        return parts

    def has_edge(self, f: Iterable[int]) -> bool:
        f = sorted(set(f))
        if len(f) != self.r or f[0] < 0 or f[-1] >= self.n:
            return False
        parts = self.split(f)
        for i, (g, part) in enumerate(zip(self.layers, parts)):
            if i < self.t and len(part) > PATH_LAYER_MAX:
                return False
            if not spans_path(g, part):
                return False
        return True

    __call__ = has_edge

    def has_edge_bruteforce(self, f: Iterable[int]) -> bool:
        f = sorted(set(f))
        if len(f) != self.r:
            return False
        parts = self.split(f)
        return all((i == self.t or len(p) <= PATH_LAYER_MAX) and spans_path_bruteforce(g, p)
                   for i, (g, p) in enumerate(zip(self.layers, parts)))

    def _path_sets(self, i: int, size: int) -> list[tuple[int, ...]]:
        g = self.layers[i]
        if not isinstance(g, Graph):
            g = g.materialize()
        if size == 0:
            return [()]
        out = set()

        def grow(path: list[int]) -> None:
            if len(path) == size:
                out.add(tuple(sorted(path)))
                return
            for w in g.adj[path[-1]]:
                if w not in path:
                    path.append(w)
                    grow(path)
                    path.pop()

        for v in range(g.n):
            grow([v])
        return sorted(out)

    def _path_set_count(self, i: int, size: int) -> int | None:
        g = self.layers[i]
        gn = g.n
        complete = (g.edge_count() if isinstance(g, ProductAdjacency) else g.m) == gn * (gn - 1) // 2
        if complete or size <= 1:
            return math.comb(gn, size)
        if not isinstance(g, Graph):
            return None
        return len(self._path_sets(i, size))

    def edge_count(self) -> int | None:
        """Exact edge count, or None when a lazy non-complete layer would need enumeration."""
        per: dict[tuple[int, int], int | None] = {}
        total = 0
        for sizes in self._compositions():
            prod = 1
            for i, s in enumerate(sizes):
                if (i, s) not in per:
                    per[(i, s)] = self._path_set_count(i, s)
                if per[(i, s)] is None:
                    return None
                prod *= per[(i, s)]
            total += prod
        return total

    def edge_upper_bound(self) -> int:
        """Sum over layer-size compositions of products of binomials."""
        total = 0
        for sizes in self._compositions():
            prod = 1
            for i, s in enumerate(sizes):
                prod *= math.comb(self.layers[i].n, s)
            total += prod
        return total

    def _compositions(self):
        caps = [PATH_LAYER_MAX] * self.t + [self.r]
        for sizes in itertools.product(*(range(c + 1) for c in caps)):
            if sum(sizes) == self.r:
                yield sizes

    def materialize(self, budget: int | None = None) -> Hypergraph:
        """All edges, by combining path vertex-sets per layer (budgeted)."""
        limit = _budgets.DEFAULT.rsets if budget is None else budget
        _budgets.check("r-set", self.edge_upper_bound(), limit)
        cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        edges = set()
        for sizes in self._compositions():
            pools = []
            for i, s in enumerate(sizes):
                if (i, s) not in cache:
                    cache[(i, s)] = [tuple(v + self.offsets[i] for v in p) for p in self._path_sets(i, s)]
                pools.append(cache[(i, s)])
            for combo in itertools.product(*pools):
                edges.add(tuple(sorted(itertools.chain(*combo))))
        return Hypergraph(self.n, tuple(edges), self.r)


def layered_hypergraph(n: int, r: int, base: Graph, product: ProductParams = ProductParams(4, 3, 8),
                       power: int = 4, lazy: bool | None = None) -> LayeredHypergraph:
    """t copies of C_n^power followed by the product graph over ``base``.

    With ``lazy`` (default: when the product has more than 2000 vertices) the
    product layer answers adjacency queries without storing its edges.
    """
    if r < 5 or r % 2 == 0:
        raise ValueError("layered construction needs odd r >= 5 (r = 3 uses the product graph directly)")
    t = (r - 3) // 2
    cyc = build_cycle_power(n, power)
    if lazy is None:
        lazy = base.n ** product.k > 2000
    top = ProductAdjacency(base, product) if lazy else product_graph(base, product)
    layers = [cyc] * t + [top]
    offsets, acc = [], 0
    for g in layers:
        offsets.append(acc)
        acc += g.n
    return LayeredHypergraph(r, tuple(layers), tuple(offsets))


# ---------------------------------------------------------------------------
# layer decomposition of an input hypergraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayerDecomposition:
    classes: tuple[tuple[int, ...], ...]
    layers: tuple[Hypergraph, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def violations(self, h: Hypergraph, r: int) -> list[str]:
        t = (r - 3) // 2
        out = []
        if len(self.classes) != t + 1:
            out.append(f"expected {t + 1} classes, got {len(self.classes)}")
            return out
        where: dict[int, int] = {}
        for i, cls in enumerate(self.classes):
            for v in cls:
                if v in where:
                    out.append(f"vertex {v} in classes {where[v]} and {i}")
                where[v] = i
        if sorted(where) != list(range(h.n)):
            out.append("classes do not partition the vertex set")
        for f in h.edges:
            if sum(len(set(f) & set(c)) for c in self.classes) != len(f):
                out.append(f"edge {list(f)} is not the disjoint union of its restrictions")
        for i, layer in enumerate(self.layers):
            if layer.m and layer.rank > 3:
                out.append(f"layer {i + 1} has an edge with more than 3 vertices")
            if layer.max_degree > 2:
                out.append(f"layer {i + 1} has max degree {layer.max_degree}")
            if i < t:
                for comp, threes in _three_edges_per_component(layer):
                    if threes > 2:
                        out.append(f"layer {i + 1} component at {comp} has {threes} edges of size 3")
                        break
        return out


def restriction(h: Hypergraph, cls: Iterable[int]) -> Hypergraph:
    s = set(cls)
    edges = {tuple(v for v in f if v in s) for f in h.edges}
    edges.discard(())
    return Hypergraph(h.n, tuple(edges))


def _three_edges_per_component(h: Hypergraph):
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        for v in e[1:]:
            a, b = find(e[0]), find(v)
            if a != b:
                parent[a] = b
    threes: dict[int, int] = {}
    for e in h.edges:
        if len(e) == 3:
            threes[find(e[0])] = threes.get(find(e[0]), 0) + 1
    return [(root, c) for root, c in threes.items()]


def _pad_copies(edges: list[tuple[int, ...]], n: int, s: int) -> tuple[list[tuple[int, ...]], int]:
    """s copies plus an s-edge through every copy of each degree-1 vertex (linear, 2-regular)."""
    deg: dict[int, int] = {}
    for e in edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    ones = sorted(v for v, d in deg.items() if d == 1)
    if not ones:
        return edges, n
    out = [tuple(v + c * n for v in e) for c in range(s) for e in edges]
    out += [tuple(v + c * n for c in range(s)) for v in ones]
    return out, s * n


def _linear(edges: Sequence[tuple[int, ...]]) -> bool:
    seen = set()
    for e in edges:
        for p in itertools.combinations(e, 2):
            if p in seen:
                return False
            seen.add(p)
    return True


def _choose_by_matching(edges: list[tuple[int, ...]], n: int, s: int, seed: int, steps: int) -> set[int]:
    """Linear s-uniform edges: vertices shared along a spanning {2,3}-subgraph of the line graph."""
    big, big_n = _pad_copies(edges, n, s)
    h = Hypergraph(big_n, tuple(big), s)
    lg = line_graph(h)
    sub = spanning_23(lg, seed=seed, steps=steps)
    y = set()
    for a, b in sub.edges:
        (v,) = set(h.edges[a]) & set(h.edges[b])
        if v < n:
            y.add(v)
    return y


def _choose_by_search(edges: list[tuple[int, ...]], lo: list[int], rng: random.Random, steps: int,
                      init: set[int] | None = None) -> set[int] | None:
    """Local search for Y with lo_f <= |f & Y| <= 3 and at most two 3-traces per component."""
    verts = sorted({v for e in edges for v in e})
    inc: dict[int, list[int]] = {v: [] for v in verts}
    for i, e in enumerate(edges):
        for v in e:
            inc[v].append(i)
    y = set(init) if init is not None else set()
    if init is None:
        for e, need in zip(edges, lo):
            have = sum(1 for v in e if v in y)
            for v in e:
                if have >= need:
                    break
                if v not in y:
                    y.add(v)
                    have += 1

    def penalty():
        bad = []
        total = 0
        traces = []
        for i, e in enumerate(edges):
            k = sum(1 for v in e if v in y)
            p = max(0, lo[i] - k) + 2 * max(0, k - 3)
            if p:
                bad.append(i)
                total += p
            traces.append(tuple(v for v in e if v in y))
        parent = {v: v for v in y}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for tr in set(traces):
            for v in tr[1:]:
                a, b = find(tr[0]), find(v)
                if a != b:
                    parent[a] = b
        groups: dict[int, list[int]] = {}
        for i, tr in enumerate(traces):
            if len(tr) == 3:
                groups.setdefault(find(tr[0]), []).append(i)
        seen_tr = set()
        for root, idx in groups.items():
            uniq = []
            for i in idx:
                if traces[i] not in seen_tr:
                    seen_tr.add(traces[i])
                    uniq.append(i)
            if len(uniq) > 2:
                total += len(uniq) - 2
                bad.extend(uniq)
        return total, bad

    cur, bad = penalty()
    temp = 0.5
    for _ in range(steps):
        if cur == 0:
            return y
        i = rng.choice(bad)
        e = edges[i]
        k = sum(1 for v in e if v in y)
        if k < lo[i]:
            v = rng.choice([v for v in e if v not in y])
        else:
            v = rng.choice([v for v in e if v in y])
        y.symmetric_difference_update({v})
        new, newbad = penalty()
        if new <= cur or rng.random() < math.exp((cur - new) / temp):
            cur, bad = new, newbad
        else:
            y.symmetric_difference_update({v})
    return y if cur == 0 else None


def layer_decompose(h: Hypergraph, r: int, seed: int = 0, steps: int | None = None) -> LayerDecomposition:
    """Partition V(h) into X_1..X_{t+1} with structured restrictions (validated)."""
    if r < 5 or r % 2 == 0:
        raise ValueError("needs odd r >= 5")
    if h.m and not h.is_uniform(r):
        raise ValueError(f"needs an {r}-uniform hypergraph")
    if h.max_degree > 2:
        raise ValueError(f"max degree {h.max_degree} exceeds 2")
    steps = _budgets.DEFAULT.local_search_steps if steps is None else steps
    t = (r - 3) // 2
    rng = random.Random(seed)
    n = h.n
    cur = [tuple(e) for e in h.edges]   # current edges, may contain dummy vertices >= n
    next_id = n
    classes: list[set[int]] = []
    methods = []
    for i in range(1, t + 1):
        q = t - i + 1
        s = r - 2 * (i - 1)
        y = None
        if cur and all(len(e) == s for e in cur) and _linear(cur):
            try:
                y = _choose_by_matching(cur, next_id, s, seed, steps)
                methods.append("matching")
            except SearchExhausted:
                y = None
        if y is None:
            lo = [max(0, len(e) - 1 - 2 * q) for e in cur]
            y = _choose_by_search(cur, lo, rng, steps)
            if y is None:
                raise SearchExhausted("layer_decompose", f"step {i} of {t}")
            methods.append("search")
        classes.append({v for v in y if v < n})
        rest = []
        for e in cur:
            e2 = [v for v in e if v not in y]
            # pad back to uniform size s - 2 with fresh degree-1 dummies
            while len(e2) < s - 2:
                e2.append(next_id)
                next_id += 1
            rest.append(tuple(sorted(e2)))
        cur = rest
    used = set().union(*classes) if classes else set()
    classes.append({v for v in range(n) if v not in used})
    cls = tuple(tuple(sorted(c)) for c in classes)
    dec = LayerDecomposition(cls, tuple(restriction(h, c) for c in cls), {"methods": methods})
    bad = dec.violations(h, r)
    if bad:
        raise RuntimeError("layer decomposition failed validation: " + "; ".join(bad[:3]))
    return dec
