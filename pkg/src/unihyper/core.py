"""Hypergraph and graph types, standard graph powers, and family enumeration.

Vertices are always the dense integers ``0..n-1``. Edges are stored as sorted
tuples and the edge list itself is sorted, so two structurally equal objects
compare equal and serialize identically.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import budgets as _budgets
from .errors import GenerationFailure

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Edge system over ``0..n-1``; ``uniformity`` is ``None`` for mixed sizes."""

    n: int
    edges: tuple[Edge, ...] = ()
    uniformity: int | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        for e in self.edges:
            t = tuple(sorted(e))
            if not t:
                raise ValueError("edges must be nonempty")
            if len(set(t)) != len(t):
                raise ValueError(f"repeated vertex in edge {t}")
            if t[0] < 0 or t[-1] >= self.n:
                raise ValueError(f"edge {t} out of range for n={self.n}")
            if self.uniformity is not None and len(t) != self.uniformity:
                raise ValueError(f"edge {t} has size {len(t)}, expected {self.uniformity}")
            canon.append(t)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    # -- basic queries ---------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self.edge_set

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists indices (into ``edges``) of edges containing v."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_uniform(self, r: int | None = None) -> bool:
        sizes = {len(e) for e in self.edges}
        if r is None:
            return len(sizes) <= 1
        return sizes <= {r}

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def is_linear(self) -> bool:
        """Any two edges share at most one vertex."""
        seen: dict[tuple[int, int], int] = {}
        for i, e in enumerate(self.edges):
            for pair in itertools.combinations(e, 2):
                if pair in seen:
                    return False
                seen[pair] = i
        return True

    def is_regular(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        target = degs[0] if d is None else d
        return all(x == target for x in degs)

    def non_isolated(self) -> list[int]:
        return [v for v in range(self.n) if self.incidence[v]]

    # -- derived objects -------------------------------------------------
    def relabel(self, mapping: Sequence[int] | dict[int, int], n: int | None = None) -> "Hypergraph":
        n = self.n if n is None else n
        edges = [tuple(mapping[v] for v in e) for e in self.edges]
        return type(self)._make(n, edges, self.uniformity)

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        """Sub-hypergraph on the given vertices, relabelled to ``0..k-1`` in ascending order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        edges = [tuple(index[v] for v in e) for e in self.edges if all(v in index for v in e)]
        return type(self)._make(len(vs), edges, self.uniformity)

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return type(self)._make(self.n, [tuple(e) for e in edges], self.uniformity)

    @classmethod
    def _make(cls, n: int, edges, uniformity):
        if cls is Graph:
            return Graph(n, tuple(edges))
        return cls(n, tuple(edges), uniformity)

    def __repr__(self) -> str:
        r = self.uniformity if self.uniformity is not None else "mixed"
        return f"{type(self).__name__}(n={self.n}, r={r}, edges={list(self.edges)})"


@dataclass(frozen=True, repr=False)
class Graph(Hypergraph):
    """Simple graph; the 2-uniform case."""

    uniformity: int | None = field(default=2)

    def __post_init__(self) -> None:
        if self.uniformity != 2:
            raise ValueError("Graph is 2-uniform")
        super().__post_init__()

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def has_edge(self, u, v=None) -> bool:  # type: ignore[override]
        if v is None:
            u, v = u
        return v in self.adj[u]

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            q = deque([s])
            while q:
                u = q.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        q.append(w)
            comps.append(sorted(comp))
        return comps

    def distances_from(self, s: int, cutoff: int | None = None) -> dict[int, int]:
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            if cutoff is not None and dist[u] >= cutoff:
                continue
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def remove_edges(self, edges: Iterable[Iterable[int]]) -> "Graph":
        drop = {tuple(sorted(e)) for e in edges}
        return Graph(self.n, tuple(e for e in self.edges if e not in drop))

    def union(self, other: "Graph") -> "Graph":
        n = max(self.n, other.n)
        return Graph(n, tuple(set(self.edges) | set(other.edges)))


def graph(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Build a graph, silently merging duplicate edges given in either orientation."""
    return Graph(n, tuple({tuple(sorted(e)) for e in edges}))


def hypergraph(n: int, edges: Iterable[Iterable[int]], r: int | None = None) -> Hypergraph:
    es = {tuple(sorted(e)) for e in edges}
    if r == 2:
        return Graph(n, tuple(es))
    return Hypergraph(n, tuple(es), r)


def as_hypergraph(g: Hypergraph) -> Hypergraph:
    """View a graph as a plain 2-uniform Hypergraph (drops the Graph helpers)."""
    return Hypergraph(g.n, g.edges, g.uniformity)


def as_graph(h: Hypergraph) -> Graph:
    if isinstance(h, Graph):
        return h
    return Graph(h.n, h.edges)


# ---------------------------------------------------------------------------
# Standard graphs
# ---------------------------------------------------------------------------

def build_path_power(n: int, ell: int) -> Graph:
    """``P_n^ell``: i ~ j iff ``0 < |i - j| <= ell``."""
    if n < 1 or ell < 1:
        raise ValueError("need n >= 1 and ell >= 1")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, min(n, i + ell + 1))))


def build_cycle_power(n: int, ell: int) -> Graph:
    """``C_n^ell``: i ~ j iff their circular distance lies in ``1..ell``."""
    if n < 3 or ell < 1:
        raise ValueError("need n >= 3 and ell >= 1")
    edges = set()
    for i in range(n):
        for d in range(1, ell + 1):
            j = (i + d) % n
            if j != i:
                edges.add((min(i, j), max(i, j)))
    return Graph(n, tuple(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, tuple(itertools.combinations(range(n), r)), r)


def cycle_graph(n: int) -> Graph:
    return build_cycle_power(n, 1)


def path_graph(n: int) -> Graph:
    return build_path_power(n, 1) if n >= 1 else Graph(0)


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph(10, outer + spokes + inner)


def perfect_matching_pattern(r: int, s: int = 2) -> Hypergraph:
    """The s-uniform perfect matching on r vertices (blocks of consecutive labels)."""
    if r % s:
        raise ValueError(f"{s} does not divide {r}")
    blocks = [tuple(range(i, i + s)) for i in range(0, r, s)]
    return Graph(r, tuple(blocks)) if s == 2 else Hypergraph(r, tuple(blocks), s)


def matching_plus_path(r: int) -> Graph:
    """P_3 on 0-1-2 (centre 1) together with a perfect matching on ``3..r-1``."""
    if r < 3 or (r - 3) % 2:
        raise ValueError("need odd r >= 3")
    edges = [(0, 1), (1, 2)] + [(i, i + 1) for i in range(3, r, 2)]
    return Graph(r, tuple(edges))


# ---------------------------------------------------------------------------
# Line graph
# ---------------------------------------------------------------------------

def line_graph(h: Hypergraph) -> Graph:
    """One vertex per edge of ``h`` (in canonical edge order); adjacent iff they intersect."""
    if h.m == 0:
        raise ValueError("line graph of an edgeless hypergraph")
    pairs = set()
    for inc in h.incidence:
        for a, b in itertools.combinations(inc, 2):
            pairs.add((a, b))
    return Graph(h.m, tuple(pairs))


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyParams:
    """``F^(r)(n, delta)``: r-uniform, at most n vertices, max degree <= delta."""

    r: int
    n: int
    delta: int

    def __post_init__(self) -> None:
        if self.r < 2 or self.n < self.r or self.delta < 1:
            raise ValueError(f"invalid family parameters {self}")


@dataclass(frozen=True)
class EdgeFamilyParams:
    """``E^(r)(m)``: r-uniform, at most m edges, no isolated vertices."""

    r: int
    m: int

    def __post_init__(self) -> None:
        if self.r < 2 or self.m < 1:
            raise ValueError(f"invalid family parameters {self}")


def in_family(h: Hypergraph, p: FamilyParams) -> bool:
    return h.n <= p.n and h.is_uniform(p.r) and h.max_degree <= p.delta


def _bounded_degree_subsets(cands: Sequence[Edge], n: int, delta: int) -> Iterator[list[Edge]]:
    """All subsets of ``cands`` with max degree <= delta, in lexicographic include-first order."""
    deg = [0] * n
    chosen: list[Edge] = []

    def rec(i: int) -> Iterator[list[Edge]]:
        if i == len(cands):
            yield list(chosen)
            return
        e = cands[i]
        yield from rec(i + 1)
        if all(deg[v] < delta for v in e):
            for v in e:
                deg[v] += 1
            chosen.append(e)
            yield from rec(i + 1)
            chosen.pop()
            for v in e:
                deg[v] -= 1

    yield from rec(0)


def enumerate_family(p: FamilyParams, budget: int | None = None) -> Iterator[Hypergraph]:
    """Every labeled member of ``F^(r)(n, delta)`` on vertex set ``0..n-1``, exactly once.

    Degree pruning happens during the search, so the budget caps the number
    of members produced; BudgetExceeded is raised once it is passed.
    """
    limit = _budgets.DEFAULT.candidate_subsets if budget is None else budget
    cands = list(itertools.combinations(range(p.n), p.r))
    for i, es in enumerate(_bounded_degree_subsets(cands, p.n, p.delta), 1):
        _budgets.check("family-member", i, limit)
        yield hypergraph(p.n, es, p.r)


def enumerate_edge_family(p: EdgeFamilyParams, budget: int | None = None) -> Iterator[Hypergraph]:
    """Every labeled member of ``E^(r)(m)`` whose support is exactly ``0..v-1``.

    Vertex counts v run from r to r*m; members are grouped by v, then by edge count.
    """
    limit = _budgets.DEFAULT.candidate_subsets if budget is None else budget
    total = sum(math.comb(math.comb(v, p.r), k)
                for v in range(p.r, p.r * p.m + 1) for k in range(1, p.m + 1))
    _budgets.check("candidate-subset", total, limit)
    for v in range(p.r, p.r * p.m + 1):
        cands = list(itertools.combinations(range(v), p.r))
        for k in range(1, p.m + 1):
            if k * p.r < v:
                continue
            for es in itertools.combinations(cands, k):
                if len(set().union(*es)) == v:
                    yield hypergraph(v, es, p.r)


def _linear_2regular(rng: random.Random, p: FamilyParams) -> list[Edge] | None:
    """Dual of a random simple r-regular graph: its edges become the vertices."""
    import networkx as nx

    m = 2 * p.n // p.r
    if m <= p.r:
        return None
    g = nx.random_regular_graph(p.r, m, seed=rng.randrange(1 << 30))
    label = list(range(p.n))
    rng.shuffle(label)
    members: list[list[int]] = [[] for _ in range(m)]
    for idx, (a, b) in enumerate(g.edges()):
        members[a].append(label[idx])
        members[b].append(label[idx])
    return [tuple(sorted(e)) for e in members]


def _try_regular(rng: random.Random, p: FamilyParams, linear: bool) -> list[Edge] | None:
    if linear and p.delta == 2:
        return _linear_2regular(rng, p)
    stubs = [v for v in range(p.n) for _ in range(p.delta)]
    rng.shuffle(stubs)
    edges = []
    seen = set()
    pairs = set()
    for i in range(0, len(stubs), p.r):
        e = tuple(sorted(stubs[i:i + p.r]))
        if len(set(e)) != p.r or e in seen:
            return None
        if linear:
            ps = list(itertools.combinations(e, 2))
            if any(q in pairs for q in ps):
                return None
            pairs.update(ps)
        seen.add(e)
        edges.append(e)
    return edges


def _try_bounded(rng: random.Random, p: FamilyParams, linear: bool) -> list[Edge]:
    cap = (p.n * p.delta) // p.r
    target = rng.randint(0, cap)
    deg = [0] * p.n
    edges: set[Edge] = set()
    pairs: set[tuple[int, int]] = set()
    for _ in range(20 * (target + 1)):
        if len(edges) >= target:
            break
        free = [v for v in range(p.n) if deg[v] < p.delta]
        if len(free) < p.r:
            break
        e = tuple(sorted(rng.sample(free, p.r)))
        if e in edges:
            continue
        ps = list(itertools.combinations(e, 2))
        if linear and any(q in pairs for q in ps):
            continue
        edges.add(e)
        pairs.update(ps)
        for v in e:
            deg[v] += 1
    return sorted(edges)


def sample_family(p: FamilyParams, seed: int, count: int, regular: bool = False,
                  linear: bool = False, max_attempts: int | None = None) -> list[Hypergraph]:
    """Random members of ``F^(r)(n, delta)``, deterministic in ``seed``.

    ``regular`` uses configuration-model assembly with rejection (every vertex
    gets degree exactly delta); ``linear`` rejects pairs of edges sharing two
    vertices.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    attempts_cap = _budgets.DEFAULT.retries if max_attempts is None else max_attempts
    if regular and (p.n * p.delta) % p.r:
        raise GenerationFailure("regular hypergraph", 0, f"r={p.r} does not divide n*delta={p.n * p.delta}")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if not regular:
            out.append(hypergraph(p.n, _try_bounded(rng, p, linear), p.r))
            continue
        for attempt in range(1, attempts_cap + 1):
            es = _try_regular(rng, p, linear)
            if es is not None:
                out.append(hypergraph(p.n, es, p.r))
                break
        else:
            raise GenerationFailure("regular hypergraph", attempts_cap, f"params {p}")
    return out


def random_graph(n: int, prob: float, rng: random.Random) -> Graph:
    return Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < prob))
