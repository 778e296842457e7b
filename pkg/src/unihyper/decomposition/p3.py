"""Hitting graphs on P_3 for 3-uniform hypergraphs of max degree 2, with a 4-part decomposition.

The output graph F hits H on P_3, has a matching M, and comes with spanning
subgraphs F_1..F_4 (each an augmentation of a thin graph) covering every edge
of F exactly three times, where F_4 = F - M. Construction: pad H to a
2-regular hypergraph, pick a matching M* in its line graph, turn M* into the
deleted set D and the matching M, contract M, split the contraction with the
two-cover decomposition and undo the contraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .. import budgets as _budgets
from ..core import Edge, Graph, Hypergraph, line_graph, path_graph
from ..errors import SearchExhausted
from ..hitting import HitCertificate
from ..matching import hopcroft_karp
from .factors import augmented_thin_penalty, pair_search, sparse_matching_removal, two_cover_decompose
from .thin import classify_thin, cover_counts


@dataclass(frozen=True)
class P3HitDecomposition:
    hitting_graph: Graph
    parts: tuple[Graph, Graph, Graph, Graph]
    matching: tuple[tuple[int, int], ...]
    deleted_set: tuple[int, ...]
    certificate: HitCertificate
    meta: dict = field(default_factory=dict, compare=False)

    def violations(self, h: Hypergraph) -> list[str]:
        """Every invariant that fails, as readable messages (empty when valid)."""
        f = self.hitting_graph
        out = list(self.certificate.violations(f, h))
        if len(self.parts) != 4:
            out.append(f"expected 4 parts, got {len(self.parts)}")
            return out
        counts = cover_counts(self.parts)
        for e in f.edges:
            if counts[e] != 3:
                out.append(f"edge {list(e)} lies in {counts[e]} parts, expected 3")
                break
        stray = [e for e in counts if e not in f.edge_set]
        if stray:
            out.append(f"part edge {list(stray[0])} is not an edge of F")
        for i, p in enumerate(self.parts):
            if classify_thin(p).kind == "neither":
                out.append(f"part {i + 1} is not an augmentation of a thin graph")
        m = set(self.matching)
        if not m <= f.edge_set:
            out.append("M is not a subset of E(F)")
        touched = [v for e in m for v in e]
        if len(touched) != len(set(touched)):
            out.append("M is not a matching")
        if set(self.parts[3].edges) != f.edge_set - m:
            out.append("F_4 differs from F - M")
        d = set(self.deleted_set)
        if any(u in d and v in d for u, v in f.edges):
            out.append("D is not independent in F")
        if not d <= set(touched):
            out.append("M does not saturate D")
        return out

    def is_valid(self, h: Hypergraph) -> bool:
        return not self.violations(h)


def _pad_to_2_regular(h: Hypergraph) -> Hypergraph:
    """Three disjoint copies of h plus an edge {v, v', v''} per degree-1 vertex v.

    Vertices of h keep their indices; copies live at v + n and v + 2n.
    """
    n = h.n
    ones = [v for v in range(n) if h.degree(v) == 1]
    if not ones:
        return h
    edges = [tuple(x + c * n for x in e) for c in range(3) for e in h.edges]
    edges += [(v, v + n, v + 2 * n) for v in ones]
    return Hypergraph(3 * n, tuple(edges), 3)


def _choose_paths(h: Hypergraph, mstar: set[tuple[int, int]], seed: int):
    """Centres for each hyperedge, the deleted set D and the nonlinear matching edges."""
    edges = h.edges
    centre: dict[int, int] = {}
    d_vertex: dict[int, int] = {}   # edge index -> its D vertex
    nonlinear: list[tuple[int, int]] = []
    for i, j in sorted(mstar):
        common = sorted(set(edges[i]) & set(edges[j]))
        if len(common) == 1:
            d_vertex[i] = d_vertex[j] = common[0]
        else:
            b, c = common
            centre[i], centre[j] = b, c
            nonlinear.append((b, c))
    deleted = sorted(set(d_vertex.values()))
    dset = set(deleted)
    # remaining centres: a matching from edges into non-deleted vertices, each used once
    todo = [i for i in range(len(edges)) if i not in centre]
    taken = set(centre.values())
    slots = sorted(v for v in range(h.n) if v not in dset and v not in taken)
    slot_ix = {v: k for k, v in enumerate(slots)}
    adj = [[slot_ix[v] for v in edges[i] if v in slot_ix] for i in todo]
    match = hopcroft_karp(adj, len(slots))
    if any(x == -1 for x in match):
        raise SearchExhausted("P_3 centre assignment", "no centre matching covers every edge")
    for i, x in zip(todo, match):
        centre[i] = slots[x]
    return centre, d_vertex, deleted, nonlinear


def _path_of(e: Edge, c: int, dv: int | None, nonlinear_pair: tuple[int, int] | None) -> tuple[int, int, int]:
    rest = [v for v in e if v != c]
    if nonlinear_pair is not None:
        # e = {a, b, c} with bc the nonlinear edge: path a - b - c (b the centre)
        other = nonlinear_pair[0] if nonlinear_pair[1] == c else nonlinear_pair[1]
        a = next(v for v in rest if v != other)
        return (a, c, other)
    if dv is not None:
        y = next(v for v in rest if v != dv)
        return (dv, c, y)
    return (rest[0], c, rest[1])


def _contract(f: Graph, m: list[tuple[int, int]]):
    """F/M with the merged vertex taking the smaller index; also the map back to F-edges."""
    rep = list(range(f.n))
    for u, v in m:
        rep[max(u, v)] = min(u, v)
    mset = set(m)
    back: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in f.edges:
        if e in mset:
            continue
        a, b = rep[e[0]], rep[e[1]]
        key = (min(a, b), max(a, b))
        back.setdefault(key, []).append(e)
    return Graph(f.n, tuple(back)), back


def p3_hitting_decomposition(h: Hypergraph, seed: int = 0, steps: int | None = None) -> P3HitDecomposition:
    """Graph F hitting h on P_3 plus its validated 4-part exactly-3 decomposition."""
    if h.uniformity != 3 and not (h.m and h.is_uniform(3)):
        if h.m:
            raise ValueError("needs a 3-uniform hypergraph")
    if h.max_degree > 2:
        raise ValueError(f"max degree {h.max_degree} exceeds 2")
    steps = _budgets.DEFAULT.local_search_steps if steps is None else steps
    n = h.n
    if h.m == 0:
        empty = Graph(n)
        return P3HitDecomposition(empty, (empty,) * 4, (), (), HitCertificate(path_graph(3), {}), {"method": "empty"})

    big = _pad_to_2_regular(h)
    lg = line_graph(big)
    mstar = sparse_matching_removal(lg, seed=seed, steps=steps)
    centre, d_vertex, deleted, nonlinear = _choose_paths(big, mstar, seed)
    nl_of: dict[int, tuple[int, int]] = {}
    for i, j in mstar:
        if len(set(big.edges[i]) & set(big.edges[j])) == 2:
            pair = tuple(sorted(set(big.edges[i]) & set(big.edges[j])))
            nl_of[i] = nl_of[j] = pair

    paths = {}
    f_edges: set[tuple[int, int]] = set()
    for i, e in enumerate(big.edges):
        p = _path_of(e, centre[i], d_vertex.get(i), nl_of.get(i))
        paths[i] = p
        f_edges.add(tuple(sorted(p[:2])))
        f_edges.add(tuple(sorted(p[1:])))
    f_big = Graph(big.n, tuple(f_edges))

    # M: each deleted vertex joined to the centre of its lower-index edge, plus nonlinear edges
    m = set(tuple(sorted(e)) for e in nonlinear)
    for v in deleted:
        i = min(k for k, dv in d_vertex.items() if dv == v)
        m.add(tuple(sorted((v, centre[i]))))

    method = "contraction"
    try:
        fm, back = _contract(f_big, sorted(m))
        cert = two_cover_decompose(fm, 3, seed=seed, steps=steps)
        big_parts = []
        for part in cert.parts[:3]:
            es = set(m)
            for e in part.edges:
                es.update(back[e])
            big_parts.append(es)
    except SearchExhausted:
        big_parts = None

    # strip the padding copies
    def keep(e):
        return e[0] < n and e[1] < n

    f = Graph(n, tuple(e for e in f_big.edges if keep(e)))
    m_final = tuple(sorted(e for e in m if keep(e)))
    d_final = tuple(v for v in deleted if v < n)
    rest = f.remove_edges(m_final)
    parts: list[Graph] | None = None
    if big_parts is not None:
        parts = [Graph(n, tuple(e for e in es if keep(e))) for es in big_parts] + [rest]
        if any(classify_thin(p).kind == "neither" for p in parts):
            parts = None
    if parts is None:
        parts = _repair(f, m_final, big_parts, seed, steps)
        method = "local-search"

    placements = {}
    for i, e in enumerate(big.edges):
        if all(v < n for v in e):
            placements[e] = paths[i]
    result = P3HitDecomposition(f, tuple(parts), m_final, d_final, HitCertificate(path_graph(3), placements),
                                {"method": method, "padded": big.n != n, "mstar": len(mstar)})
    bad = result.violations(h)
    if bad:
        raise RuntimeError("P_3 decomposition failed validation: " + "; ".join(bad[:3]))
    return result


def _repair(f: Graph, m: tuple[tuple[int, int], ...], start, seed: int, steps: int) -> list[Graph]:
    """Search for F_1..F_3: M in all three, every other edge in exactly two, all augmented thin."""
    rest = f.remove_edges(m)
    if classify_thin(rest).kind == "neither":
        raise SearchExhausted("P_3 decomposition", "F - M is not an augmentation of a thin graph")
    rng = random.Random(seed)
    init = []
    for e in rest.edges:
        if start is not None:
            pr = tuple(p for p in range(3) if e in start[p])
            init.append(pr if len(pr) == 2 else (0, 1))
        else:
            init.append(tuple(sorted(rng.sample(range(3), 2))))
    assign = pair_search(rest, 3, init, rng, steps, penalty=augmented_thin_penalty, base=m)
    if assign is None:
        raise SearchExhausted("P_3 decomposition", f"repair search on {f.n} vertices")
    parts = [Graph(f.n, tuple(sorted(set(m) | {e for e, pr in zip(rest.edges, assign) if p in pr})))
             for p in range(3)]
    return parts + [rest]
