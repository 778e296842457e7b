"""Spanning {2,3}-subgraphs and two-cover decompositions into thin graphs.

Existence is guaranteed by the underlying structure theorems; here every
object is found by an exact matching step where one applies, otherwise by a
seeded local search, and always validated before it is returned.
"""

from __future__ import annotations

import math
import random
from collections import deque
from typing import Sequence

import networkx as nx

from .. import budgets as _budgets
from ..core import Graph
from ..errors import SearchExhausted
from .thin import DecompCertificate, classify_thin, cover_counts

Adj = list[set[int]]


# ---------------------------------------------------------------------------
# penalties on adjacency-set representations
# ---------------------------------------------------------------------------

def _components(adj: Adj, verts: Sequence[int]) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in verts:
        if s in seen or not adj[s]:
            continue
        seen.add(s)
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    q.append(w)
        out.append(comp)
    return out


def _comp_penalty(adj: Adj, comp: list[int], skip: frozenset[int] = frozenset()) -> int:
    deg = {v: sum(1 for w in adj[v] if w not in skip) for v in comp}
    over = sum(d - 3 for d in deg.values() if d > 3)
    if over:
        return 4 * over + sum(1 for d in deg.values() if d == 3)
    deg3 = sum(1 for d in deg.values() if d == 3)
    if deg3 <= 2:
        return 0
    n, m = len(comp), sum(deg.values()) // 2
    leaves = {v for v in comp if deg[v] == 1}
    core = [v for v in comp if v not in leaves]
    core_deg = [sum(1 for w in adj[v] if w not in skip and w not in leaves) for v in core]
    if m == n - 1 and max(core_deg, default=0) <= 2:
        return 0
    if m == n and core and all(d == 2 for d in core_deg):
        return 0
    return deg3 - 2


def thin_penalty(adj: Adj, verts: Sequence[int]) -> tuple[int, list[list[int]]]:
    """Total non-thinness and the offending components."""
    total, bad = 0, []
    for comp in _components(adj, verts):
        p = _comp_penalty(adj, comp)
        if p:
            total += p
            bad.append(comp)
    return total, bad


def _pendants(adj: Adj, verts: Sequence[int]) -> frozenset[int]:
    chosen: set[int] = set()
    for v in verts:
        if v in chosen:
            continue
        for w in sorted(adj[v]):
            if len(adj[w]) == 1 and w not in chosen:
                chosen.add(w)
                break
    return frozenset(chosen)


def augmented_thin_penalty(adj: Adj, verts: Sequence[int]) -> tuple[int, list[list[int]]]:
    pend = _pendants(adj, verts)
    stripped = [set(w for w in adj[v] if w not in pend) if v not in pend else set() for v in range(len(adj))]
    return thin_penalty(stripped, verts)


def _adj_from_edges(n: int, edges) -> Adj:
    adj: Adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


# ---------------------------------------------------------------------------
# spanning subgraphs with degrees in {2,3}
# ---------------------------------------------------------------------------

def two_factor(g: Graph) -> Graph | None:
    """A 2-regular spanning subgraph via the Tutte gadget and a perfect matching, or None."""
    if g.n == 0:
        return g
    if min(g.degrees()) < 2:
        return None
    gad = nx.Graph()
    for v in range(g.n):
        ports = [("p", v, w) for w in sorted(g.adj[v])]
        gad.add_nodes_from(ports)
        for j in range(len(ports) - 2):
            for p in ports:
                gad.add_edge(("c", v, j), p)
    for u, v in g.edges:
        gad.add_edge(("p", u, v), ("p", v, u))
    mate = nx.max_weight_matching(gad, maxcardinality=True)
    if 2 * len(mate) != gad.number_of_nodes():
        return None
    chosen = []
    for a, b in mate:
        if a[0] == "p" and b[0] == "p":
            chosen.append((a[1], b[1]))
    return Graph(g.n, tuple(tuple(sorted(e)) for e in chosen))


def _matching_removal_search(g: Graph, rng: random.Random, steps: int) -> set[tuple[int, int]] | None:
    """Matching M with every component of g - M having at most two degree-3 vertices (Δ(g) <= 3)."""
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges)
    mate: dict[int, int] = {}
    for a, b in nx.max_weight_matching(ng, maxcardinality=True):
        mate[a], mate[b] = b, a
    adj = [set(s) for s in g.adj]
    for a, b in mate.items():
        adj[a].discard(b)
    verts = list(range(g.n))

    def penalty():
        return thin_deg3_penalty(adj, verts)

    cur, bad = penalty()
    temp = 0.6
    for _ in range(steps):
        if cur == 0:
            return {tuple(sorted((a, b))) for a, b in mate.items()}
        comp = rng.choice(bad)
        heavy = [v for v in comp if len(adj[v]) == 3]
        v = rng.choice(heavy)
        w = rng.choice(sorted(g.adj[v]))
        undo = []
        if w in mate:
            x = mate.pop(w)
            del mate[x]
            adj[w].add(x)
            adj[x].add(w)
            undo.append((w, x))
        mate[v], mate[w] = w, v
        adj[v].discard(w)
        adj[w].discard(v)
        new, newbad = penalty()
        if new <= cur or rng.random() < math.exp((cur - new) / temp):
            cur, bad = new, newbad
            continue
        del mate[v], mate[w]
        adj[v].add(w)
        adj[w].add(v)
        for a, b in undo:
            mate[a], mate[b] = b, a
            adj[a].discard(b)
            adj[b].discard(a)
    return None


def thin_deg3_penalty(adj: Adj, verts: Sequence[int]) -> tuple[int, list[list[int]]]:
    """Components with more than two degree-3 vertices (or any degree above 3)."""
    total, bad = 0, []
    for comp in _components(adj, verts):
        degs = [len(adj[v]) for v in comp]
        p = sum(4 * (d - 3) for d in degs if d > 3) + max(0, sum(1 for d in degs if d == 3) - 2)
        if p:
            total += p
            bad.append(comp)
    return total, bad


def _subset_23_search(g: Graph, rng: random.Random, steps: int) -> Graph | None:
    """Local search for S ⊆ E(g) with all degrees in {2,3}, components with <= two degree-3 vertices."""
    adj = [set(s) for s in g.adj]
    verts = list(range(g.n))

    def penalty():
        low = sum(2 * max(0, 2 - len(adj[v])) for v in verts)
        over, bad = thin_deg3_penalty(adj, verts)
        lows = [[v] for v in verts if len(adj[v]) < 2]
        return low + over, bad + lows

    cur, bad = penalty()
    temp = 0.6
    for _ in range(steps):
        if cur == 0:
            return Graph(g.n, tuple((u, v) for u in verts for v in adj[u] if u < v))
        comp = rng.choice(bad)
        v = rng.choice(comp)
        if len(adj[v]) < 2:
            choices = [w for w in g.adj[v] if w not in adj[v]]
            if not choices:
                continue
            w = rng.choice(sorted(choices))
            adj[v].add(w)
            adj[w].add(v)
            added = True
        else:
            if len(adj[v]) < 3:
                continue
            w = rng.choice(sorted(adj[v], key=lambda x: (-len(adj[x]), x))[:2])
            adj[v].discard(w)
            adj[w].discard(v)
            added = False
        new, newbad = penalty()
        if new <= cur or rng.random() < math.exp((cur - new) / temp):
            cur, bad = new, newbad
            continue
        if added:
            adj[v].discard(w)
            adj[w].discard(v)
        else:
            adj[v].add(w)
            adj[w].add(v)
    return None


def spanning_23_valid(g: Graph, s: Graph) -> bool:
    if s.n != g.n or not set(s.edges) <= g.edge_set:
        return False
    if any(d not in (2, 3) for d in s.degrees()):
        return False
    return all(sum(1 for v in comp if s.degree(v) == 3) <= 2 for comp in s.components())


def spanning_23(h: Graph, seed: int = 0, steps: int | None = None) -> Graph:
    """Spanning subgraph of an odd-regular graph: degrees 2 or 3, <= two degree-3 vertices per component."""
    degs = set(h.degrees())
    if len(degs) != 1 or (d := degs.pop()) < 3 or d % 2 == 0:
        raise ValueError("spanning_23 needs a regular graph of odd degree >= 3")
    s = two_factor(h)
    if s is None:
        steps = _budgets.DEFAULT.local_search_steps if steps is None else steps
        rng = random.Random(seed)
        if d == 3:
            m = _matching_removal_search(h, rng, steps)
            s = None if m is None else h.remove_edges(m)
        else:
            s = _subset_23_search(h, rng, steps)
        if s is None:
            raise SearchExhausted("spanning_23", f"{h.n} vertices, degree {d}")
    if not spanning_23_valid(h, s):
        raise RuntimeError("spanning_23 produced an invalid subgraph")
    return s


def sparse_matching_removal(g: Graph, seed: int = 0, steps: int | None = None) -> set[tuple[int, int]]:
    """For Δ(g) <= 3: a matching whose removal leaves <= two degree-3 vertices per component."""
    if g.max_degree > 3:
        raise ValueError("needs max degree <= 3")
    steps = _budgets.DEFAULT.local_search_steps if steps is None else steps
    m = _matching_removal_search(g, random.Random(seed), steps)
    if m is None:
        raise SearchExhausted("matching removal", f"{g.n}-vertex line graph")
    return m


# ---------------------------------------------------------------------------
# Euler split and bipartite edge colouring
# ---------------------------------------------------------------------------

def euler_orientation(g: Graph) -> list[tuple[int, int]]:
    """Orient every edge so that in- and out-degree differ by at most one at each vertex."""
    n = g.n
    virtual = n
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n + 1)}
    edges = list(g.edges)
    odd = [v for v in range(n) if g.degree(v) % 2]
    all_edges = edges + [(v, virtual) for v in odd]
    for i, (u, v) in enumerate(all_edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    used = [False] * len(all_edges)
    ptr = {v: 0 for v in adj}
    oriented: list[tuple[int, int]] = []
    for start in range(n + 1):
        # Hierholzer; record each edge in traversal direction
        stack = [(start, -1)]
        while stack:
            v, _ = stack[-1]
            while ptr[v] < len(adj[v]) and used[adj[v][ptr[v]][1]]:
                ptr[v] += 1
            if ptr[v] == len(adj[v]):
                stack.pop()
                continue
            w, i = adj[v][ptr[v]]
            used[i] = True
            if i < len(edges):
                oriented.append((v, w))
            stack.append((w, i))
    return oriented


def bipartite_edge_colouring(n_left: int, n_right: int, edges: list[tuple[int, int]], k: int) -> list[int]:
    """Proper k-edge-colouring of a bipartite multigraph with max degree <= k (alternating paths)."""
    at_l: list[dict[int, int]] = [dict() for _ in range(n_left)]   # colour -> edge index
    at_r: list[dict[int, int]] = [dict() for _ in range(n_right)]
    colour = [-1] * len(edges)
    for i, (u, v) in enumerate(edges):
        a = next(c for c in range(k) if c not in at_l[u])
        b = next(c for c in range(k) if c not in at_r[v])
        if a not in at_r[v]:
            c = a
        else:
            # flip the a/b alternating path starting at v so that a becomes free at v
            path = []
            side, x, want = "r", v, a
            while True:
                tbl = at_r if side == "r" else at_l
                j = tbl[x].get(want)
                if j is None:
                    break
                path.append(j)
                lu, rv = edges[j]
                side, x = ("l", lu) if side == "r" else ("r", rv)
                want = b if want == a else a
            for j in path:
                lu, rv = edges[j]
                del at_l[lu][colour[j]]
                del at_r[rv][colour[j]]
            for j in path:
                lu, rv = edges[j]
                colour[j] = b if colour[j] == a else a
                at_l[lu][colour[j]] = j
                at_r[rv][colour[j]] = j
            c = a
        colour[i] = c
        at_l[u][c] = i
        at_r[v][c] = i
    return colour


def euler_split(g: Graph) -> list[Graph]:
    """Partition E(g) into ceil(Δ/2) spanning subgraphs of max degree <= 2."""
    k = max(1, math.ceil(g.max_degree / 2))
    arcs = euler_orientation(g)
    colours = bipartite_edge_colouring(g.n, g.n, arcs, k)
    classes: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for (u, v), c in zip(arcs, colours):
        classes[c].append((min(u, v), max(u, v)))
    return [Graph(g.n, tuple(sorted(c))) for c in classes]


# ---------------------------------------------------------------------------
# two-cover decomposition
# ---------------------------------------------------------------------------

def pair_search(g: Graph, k: int, init: list[tuple[int, ...]], rng: random.Random, steps: int,
                penalty=thin_penalty, base: Sequence[tuple[int, int]] = ()) -> list[tuple[int, ...]] | None:
    """Local search over assignments edge -> (k-1)-or-fewer parts so that every part has zero penalty.

    Each edge keeps the number of parts it starts with; a move swaps one of its
    parts for another. ``base`` edges sit in every part and never move.
    """
    edges = list(g.edges)
    assign = list(init)
    parts: list[Adj] = [[set() for _ in range(g.n)] for _ in range(k)]
    for u, v in base:
        for p in range(k):
            parts[p][u].add(v)
            parts[p][v].add(u)
    for (u, v), pr in zip(edges, assign):
        for p in pr:
            parts[p][u].add(v)
            parts[p][v].add(u)
    verts = list(range(g.n))
    cost = [penalty(parts[p], verts) for p in range(k)]
    total = sum(c for c, _ in cost)
    index = {e: i for i, e in enumerate(edges)}
    temp = 0.5
    for _ in range(steps):
        if total == 0:
            return assign
        p = rng.choice([i for i in range(k) if cost[i][0]])
        comp = rng.choice(cost[p][1])
        heavy = [v for v in comp if len(parts[p][v]) >= 3] or comp
        v = rng.choice(heavy)
        if not parts[p][v]:
            continue
        movable = [w for w in sorted(parts[p][v]) if (min(v, w), max(v, w)) in index]
        if not movable:
            continue
        w = rng.choice(movable)
        i = index[(min(v, w), max(v, w))]
        other = [q for q in range(k) if q not in assign[i]]
        if not other:
            continue
        q = rng.choice(other)
        keep = tuple(x for x in assign[i] if x != p)
        parts[p][v].discard(w); parts[p][w].discard(v)
        parts[q][v].add(w); parts[q][w].add(v)
        cp, cq = penalty(parts[p], verts), penalty(parts[q], verts)
        delta = cp[0] + cq[0] - cost[p][0] - cost[q][0]
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            cost[p], cost[q] = cp, cq
            total += delta
            assign[i] = tuple(sorted(keep + (q,)))
            continue
        parts[q][v].discard(w); parts[q][w].discard(v)
        parts[p][v].add(w); parts[p][w].add(v)
    return assign if total == 0 else None


def _cubic_init(g: Graph) -> list[tuple[int, int]]:
    """Matching edges excluded from part 0; the rest alternate between parts 1 and 2."""
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges)
    m = {tuple(sorted(e)) for e in nx.max_weight_matching(ng, maxcardinality=True)}
    rest = g.remove_edges(m)
    side: dict[tuple[int, int], int] = {}
    used_at: list[set[int]] = [set() for _ in range(g.n)]
    for comp in rest.components():
        for s in comp:
            stack = [s]
            while stack:
                u = stack.pop()
                for w in sorted(rest.adj[u]):
                    e = (min(u, w), max(u, w))
                    if e in side:
                        continue
                    free = [c for c in (1, 2) if c not in used_at[u] and c not in used_at[w]]
                    c = free[0] if free else (1 if 1 not in used_at[u] else 2)
                    side[e] = c
                    used_at[u].add(c)
                    used_at[w].add(c)
                    stack.append(w)
    out = []
    for e in g.edges:
        if e in m:
            out.append((1, 2))
        else:
            out.append((0, side[e]))
    return out


def _validate_two_cover(g: Graph, parts: Sequence[Graph], mult: int = 2) -> bool:
    counts = cover_counts(parts)
    if any(counts[e] != mult for e in g.edges) or sum(counts.values()) != mult * g.m:
        return False
    return all(classify_thin(p).kind == "thin" for p in parts)


def two_cover_decompose(f: Graph, delta: int, seed: int = 0, steps: int | None = None) -> DecompCertificate:
    """``delta`` thin spanning subgraphs of f covering every edge exactly twice."""
    d = f.max_degree
    if d > delta:
        raise ValueError(f"max degree {d} exceeds delta={delta}")
    if f.m and delta < 2:
        raise ValueError("a graph with edges needs delta >= 2 for a two-cover")
    steps = _budgets.DEFAULT.local_search_steps if steps is None else steps
    rng = random.Random(seed)
    empty = Graph(f.n)
    method = ""
    if d <= 2:
        parts = [f, f] if f.m else [empty, empty]
        method = "direct"
    elif d % 2 == 0:
        parts = [c for c in euler_split(f) for _ in range(2)]
        method = "euler-split"
    elif f.is_regular(d) and d >= 5:
        s = spanning_23(f, seed=seed, steps=steps)
        inner = two_cover_decompose(f.remove_edges(s.edges), d - 2, seed=seed, steps=steps)
        parts = list(inner.parts[: d - 2]) + [s, s]
        method = "spanning-23+" + inner.meta.get("method", "")
    else:
        if d == 3:
            init = _cubic_init(f)
        else:
            classes = euler_split(f)
            init = []
            where = {}
            for ci, c in enumerate(classes):
                for e in c.edges:
                    where[e] = ci
            last = len(classes) - 1
            for e in f.edges:
                ci = where[e]
                init.append((2 * ci, 2 * ci + 1) if ci < last else (rng.randrange(d - 1), d - 1))
        assign = pair_search(f, d, init, rng, steps)
        if assign is None:
            raise SearchExhausted("two_cover_decompose", f"{f.n} vertices, max degree {d}")
        parts = [Graph(f.n, tuple(e for e, pr in zip(f.edges, assign) if p in pr)) for p in range(d)]
        method = "local-search"
    parts = list(parts) + [empty] * (delta - len(parts))
    if not _validate_two_cover(f, parts):
        raise RuntimeError("two-cover decomposition failed validation")
    return DecompCertificate(tuple(parts), 2, 4, None, {"method": method})
