"""Hitting graphs and the expansion ``H_(F,r)(G)``.

A graph (or s-uniform hypergraph) G *hits* an r-uniform H on a pattern F when
every edge f of H carries a copy of F inside G[f]. ``expand`` goes the other
way: it collects every r-set of V(G) that carries a copy of F.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import budgets as _budgets
from .core import Edge, Graph, Hypergraph, hypergraph, matching_plus_path, perfect_matching_pattern
from .matching import hopcroft_karp


class NotHit(Exception):
    """Raised by :func:`check_hits` for the first hyperedge without a copy of the pattern."""

    def __init__(self, edge: Edge):
        self.edge = edge
        super().__init__(f"no copy of the pattern inside G[{list(edge)}]")


def _pattern_order(pattern: Hypergraph) -> list[int]:
    """Pattern vertices in an order where each vertex (bar component roots) touches an earlier one."""
    nbrs: list[set[int]] = [set() for _ in range(pattern.n)]
    for e in pattern.edges:
        for v in e:
            nbrs[v].update(e)
    for v in range(pattern.n):
        nbrs[v].discard(v)
    order: list[int] = []
    seen: set[int] = set()
    roots = sorted(range(pattern.n), key=lambda v: (-len(nbrs[v]), v))
    for root in roots:
        if root in seen:
            continue
        seen.add(root)
        frontier = [root]
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for w in sorted(nbrs[v]):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
    return order


def _edge_checks(pattern: Hypergraph, order: list[int]) -> list[list[Edge]]:
    """checks[i] = pattern edges completed once ``order[i]`` is assigned."""
    pos = {v: i for i, v in enumerate(order)}
    checks: list[list[Edge]] = [[] for _ in order]
    for e in pattern.edges:
        checks[max(pos[v] for v in e)].append(e)
    return checks


def find_copy(pattern: Hypergraph, host: Hypergraph, within: Iterable[int]) -> tuple[int, ...] | None:
    """Injective placement of ``pattern`` into ``host`` using only vertices in ``within``.

    Returns the images of pattern vertices ``0..k-1`` (in that order), or None.
    """
    verts = sorted(set(within))
    if pattern.n > len(verts):
        return None
    order = _pattern_order(pattern)
    checks = _edge_checks(pattern, order)
    image = [-1] * pattern.n
    used: set[int] = set()
    es = host.edge_set

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        for v in verts:
            if v in used:
                continue
            image[p] = v
            if all(tuple(sorted(image[x] for x in e)) in es for e in checks[i]):
                used.add(v)
                if rec(i + 1):
                    return True
                used.discard(v)
        image[p] = -1
        return False

    return tuple(image) if rec(0) else None


def contains_copy(pattern: Hypergraph, host: Hypergraph, within: Iterable[int]) -> bool:
    return find_copy(pattern, host, within) is not None


@dataclass(frozen=True)
class HitCertificate:
    """For each hyperedge, the images of the pattern's vertices inside that hyperedge."""

    pattern: Hypergraph
    placements: dict[Edge, tuple[int, ...]]

    def violations(self, g: Hypergraph, h: Hypergraph) -> list[str]:
        out = []
        for f in h.edges:
            pl = self.placements.get(f)
            if pl is None:
                out.append(f"edge {list(f)} has no placement")
                continue
            if len(pl) != self.pattern.n or len(set(pl)) != len(pl):
                out.append(f"placement for {list(f)} is not injective")
                continue
            if not set(pl) <= set(f):
                out.append(f"placement for {list(f)} leaves the edge")
                continue
            for e in self.pattern.edges:
                if not g.has_edge(tuple(pl[v] for v in e)):
                    out.append(f"pattern edge {list(e)} not present on {list(f)}")
                    break
        return out

    def is_valid(self, g: Hypergraph, h: Hypergraph) -> bool:
        return not self.violations(g, h)


def check_hits(g: Hypergraph, h: Hypergraph, f: Hypergraph) -> HitCertificate:
    """Certificate that ``g`` hits ``h`` on ``f``; raises :class:`NotHit` otherwise."""
    if g.n != h.n:
        raise ValueError(f"vertex sets differ: {g.n} vs {h.n}")
    r = h.uniformity if h.uniformity is not None else h.rank
    if f.n > r:
        raise ValueError(f"pattern has {f.n} vertices, more than the uniformity {r}")
    placements = {}
    for e in h.edges:
        pl = find_copy(f, g, e)
        if pl is None:
            raise NotHit(e)
        placements[e] = pl
    return HitCertificate(f, placements)


# ---------------------------------------------------------------------------
# H_(F,r)(G)
# ---------------------------------------------------------------------------

def _iter_copies(pattern: Hypergraph, host: Hypergraph) -> Iterator[tuple[int, ...]]:
    """All injective maps of the pattern's non-isolated part into the host (as image tuples)."""
    support = [v for v in range(pattern.n) if pattern.incidence[v]]
    sub = pattern.induced(support)
    order = _pattern_order(sub)
    checks = _edge_checks(sub, order)
    # an earlier pattern neighbour for each non-root position
    anchor: list[int | None] = []
    placed: set[int] = set()
    for v in order:
        nb = [w for e in sub.edges if v in e for w in e if w in placed]
        anchor.append(nb[0] if nb else None)
        placed.add(v)
    host_nbrs: list[set[int]] = [set() for _ in range(host.n)]
    for e in host.edges:
        for v in e:
            host_nbrs[v].update(e)
    all_v = list(range(host.n))
    es = host.edge_set
    image = [-1] * sub.n
    used: set[int] = set()

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(image)
            return
        p = order[i]
        a = anchor[i]
        cands = all_v if a is None else sorted(host_nbrs[image[a]])
        for v in cands:
            if v in used:
                continue
            image[p] = v
            if all(tuple(sorted(image[x] for x in e)) in es for e in checks[i]):
                used.add(v)
                yield from rec(i + 1)
                used.discard(v)
        image[p] = -1

    yield from rec(0)


def expand(g: Hypergraph, f: Hypergraph, r: int, budget: int | None = None) -> Hypergraph:
    """The r-uniform hypergraph on V(g) whose edges are r-sets e with a copy of f in g[e].

    Copies of f's non-isolated part are enumerated by backtracking in g and
    padded with arbitrary further vertices; equivalent to (and checked in the
    tests against) the scan over all r-subsets in :func:`expand_bruteforce`.
    """
    s = g.uniformity if g.uniformity is not None else g.rank
    if g.m and r <= s:
        raise ValueError(f"target uniformity {r} must exceed host uniformity {s}")
    if f.n > r:
        raise ValueError(f"pattern has {f.n} vertices, more than r={r}")
    limit = _budgets.DEFAULT.rsets if budget is None else budget
    _budgets.check("r-set", math.comb(g.n, r), limit)
    k = sum(1 for v in range(f.n) if f.incidence[v])
    out: set[Edge] = set()
    if k == 0:
        out.update(itertools.combinations(range(g.n), r))
    else:
        for img in _iter_copies(f, g):
            base = set(img)
            rest = [v for v in range(g.n) if v not in base]
            for extra in itertools.combinations(rest, r - k):
                out.add(tuple(sorted(base.union(extra))))
    return hypergraph(g.n, out, r)


def expand_bruteforce(g: Hypergraph, f: Hypergraph, r: int, budget: int | None = None) -> Hypergraph:
    """Reference route for :func:`expand`: test every r-subset independently."""
    limit = _budgets.DEFAULT.rsets if budget is None else budget
    _budgets.check("r-set", math.comb(g.n, r), limit)
    out = [e for e in itertools.combinations(range(g.n), r) if find_copy(f, g, e) is not None]
    return hypergraph(g.n, out, r)


class ExpansionMembership:
    """Lazy edge-membership predicate for ``H_(F,r)(G)`` without materializing it."""

    def __init__(self, g: Hypergraph, f: Hypergraph, r: int):
        self.g, self.f, self.r = g, f, r
        self.n = g.n

    def __call__(self, e: Iterable[int]) -> bool:
        e = tuple(sorted(e))
        return len(e) == self.r and len(set(e)) == self.r and find_copy(self.f, self.g, e) is not None

    has_edge = __call__


# ---------------------------------------------------------------------------
# Explicit hitting graphs
# ---------------------------------------------------------------------------

def _require_uniform(h: Hypergraph) -> int:
    if h.uniformity is None and not h.is_uniform():
        raise ValueError("mixed-cardinality hypergraphs are not supported here")
    return h.uniformity if h.uniformity is not None else h.rank


def hit_perfect_matching(h: Hypergraph, r_prime: int) -> tuple[Hypergraph, HitCertificate]:
    """Replace each edge by its ascending r'-blocks; the blocks hit h on the r'-uniform perfect matching."""
    r = _require_uniform(h)
    if r_prime < 2 or r % r_prime:
        raise ValueError(f"r'={r_prime} must divide r={r}")
    pattern = perfect_matching_pattern(r, r_prime)
    blocks = {tuple(e[i:i + r_prime]) for e in h.edges for i in range(0, r, r_prime)}
    out = hypergraph(h.n, blocks, r_prime)
    return out, HitCertificate(pattern, {e: tuple(e) for e in h.edges})


def path_centres(h: Hypergraph) -> dict[Edge, int]:
    """Assign every edge a centre vertex so that no vertex is used more than ceil(D/r) times.

    Maximum matching between edges and ceil(D/r) copies of each vertex; a
    complete assignment always exists by Hall's condition.
    """
    r = _require_uniform(h)
    copies = max(1, math.ceil(h.max_degree / r))
    adj = [[v * copies + j for v in e for j in range(copies)] for e in h.edges]
    match = hopcroft_karp(adj, h.n * copies)
    missing = [h.edges[i] for i, v in enumerate(match) if v == -1]
    if missing:
        raise RuntimeError(f"incidence matching left edges uncovered: {missing[:3]} (violates Hall's condition)")
    return {e: match[i] // copies for i, e in enumerate(h.edges)}


def hit_matching_path(h: Hypergraph) -> tuple[Graph, HitCertificate]:
    """Low-degree hitting graph on (P_3 + matching on r-3 vertices) for odd r.

    Output max degree is at most ceil((r+1) D / r).
    """
    r = _require_uniform(h)
    if r < 3 or r % 2 == 0:
        raise ValueError(f"uniformity must be odd and >= 3, got {r}")
    pattern = matching_plus_path(r)
    centres = path_centres(h)
    placements = {}
    edges = set()
    for e in h.edges:
        c = centres[e]
        rest = [v for v in e if v != c]
        pl = (rest[0], c, rest[1], *rest[2:])
        placements[e] = pl
        for a, b in pattern.edges:
            edges.add(tuple(sorted((pl[a], pl[b]))))
    return Graph(h.n, tuple(edges)), HitCertificate(pattern, placements)
