"""Thin graphs, augmentations, path-power embeddings and (k, r, l) certificates."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .. import budgets as _budgets
from ..core import Graph
from ..errors import SearchExhausted

ThinKind = Literal["thin", "augmented_thin", "neither"]


@dataclass(frozen=True)
class ThinWitness:
    kind: ThinKind
    pendants: tuple[int, ...] = ()
    # per component of the (pendant-stripped) graph: "path", "cycle", "caterpillar",
    # "pendant-cycle", "deg3<=2" or "bad"
    components: tuple[tuple[tuple[int, ...], str], ...] = ()

    @property
    def ok(self) -> bool:
        return self.kind != "neither"


def _component_shape(g: Graph, comp: Sequence[int], alive: set[int]) -> str:
    """Why a single component (restricted to ``alive``) is thin, or "bad"."""
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in comp}
    if max(deg.values(), default=0) > 3:
        return "bad"
    n_edges = sum(deg.values()) // 2
    n = len(comp)
    if n <= 2:
        return "path"
    if max(deg.values()) <= 2:
        return "path" if n_edges == n - 1 else "cycle"
    # subgraph of an augmented path or cycle: stripping leaves leaves a path / the cycle
    leaves = {v for v in comp if deg[v] == 1}
    core = [v for v in comp if v not in leaves]
    core_deg = {v: sum(1 for w in g.adj[v] if w in alive and w not in leaves) for v in core}
    if n_edges == n - 1 and max(core_deg.values(), default=0) <= 2:
        return "caterpillar"
    if n_edges == n and core and all(d == 2 for d in core_deg.values()):
        return "pendant-cycle"
    if sum(1 for d in deg.values() if d == 3) <= 2:
        return "deg3<=2"
    return "bad"


def _components_within(g: Graph, alive: set[int]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(alive):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if w in alive and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    q.append(w)
        comps.append(sorted(comp))
    return comps


def _thin_shapes(g: Graph, alive: set[int]):
    return tuple((tuple(c), _component_shape(g, c, alive)) for c in _components_within(g, alive))


def max_pendant_set(g: Graph) -> tuple[int, ...]:
    """A maximal set of leaves, at most one per neighbour, none adjacent to another chosen leaf.

    Removing more pendants never hurts (thinness is closed under subgraphs),
    and leaves hanging off the same vertex are interchangeable, so this single
    choice decides whether g is an augmentation of a thin graph.
    """
    chosen: set[int] = set()
    for v in range(g.n):
        if v in chosen:
            continue
        for w in sorted(g.adj[v]):
            if len(g.adj[w]) == 1 and w not in chosen:
                chosen.add(w)
                break
    return tuple(sorted(chosen))


def classify_thin(g: Graph) -> ThinWitness:
    """Classify g as thin, an augmentation of a thin graph, or neither.

    A component is thin if it is a subgraph of an augmented path or cycle, or
    has max degree <= 3 with at most two vertices of degree 3.
    """
    everything = set(range(g.n))
    shapes = _thin_shapes(g, everything)
    if all(s != "bad" for _, s in shapes):
        return ThinWitness("thin", (), shapes)
    pend = max_pendant_set(g)
    rest = everything - set(pend)
    shapes2 = _thin_shapes(g, rest)
    if all(s != "bad" for _, s in shapes2):
        return ThinWitness("augmented_thin", pend, shapes2)
    return ThinWitness("neither", pend, shapes2)


def is_thin(g: Graph) -> bool:
    return classify_thin(g).kind == "thin"


def is_augmented_thin(g: Graph) -> bool:
    return classify_thin(g).kind != "neither"


# ---------------------------------------------------------------------------
# Path-power embeddings (bandwidth <= ell)
# ---------------------------------------------------------------------------

def _bfs_order(g: Graph, comp: Sequence[int]) -> list[int]:
    start = min(comp, key=lambda v: (len(g.adj[v]), v))
    order = [start]
    seen = {start}
    q = deque([start])
    while q:
        u = q.popleft()
        for w in sorted(g.adj[u], key=lambda x: (len(g.adj[x]), x)):
            if w not in seen:
                seen.add(w)
                order.append(w)
                q.append(w)
    return order


def _order_ok(g: Graph, order: Sequence[int], ell: int) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    return all(abs(pos[u] - pos[v]) <= ell for u in order for v in g.adj[u])


def _search_component(g: Graph, comp: list[int], ell: int, budget: list[int]) -> list[int] | None:
    if len(comp) == 1:
        return comp
    for order in (sorted(comp), _bfs_order(g, comp)):
        if _order_ok(g, order, ell):
            return order
    pos: dict[int, int] = {}
    order: list[int] = []
    left = {v: len(g.adj[v]) for v in comp}  # unplaced neighbours
    failed: set = set()

    def feasible(p: int) -> bool:
        # every placed vertex still owing neighbours must reach them within the window
        for q in range(max(0, p - ell), p + 1):
            u = order[q]
            if left[u] > q + ell - p:
                return False
        return True

    def rec() -> bool:
        p = len(order)
        if p == len(comp):
            return True
        key = (frozenset(order), tuple(order[max(0, p - ell):]))
        if key in failed:
            return False
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchExhausted("embed_path_power", f"{len(comp)}-vertex component, ell={ell}")
        lo = p - ell
        # a placed vertex at position lo with outstanding neighbours forces one of them now
        forced = None
        if lo >= 0 and left[order[lo]] > 0:
            forced = [w for w in g.adj[order[lo]] if w not in pos]
        cands = forced if forced is not None else [v for v in comp if v not in pos]
        if p:
            cands = sorted(cands, key=lambda v: (-sum(1 for w in g.adj[v] if w in pos), v))
        for v in cands:
            if any(pos[w] < lo for w in g.adj[v] if w in pos):
                continue
            pos[v] = p
            order.append(v)
            for w in g.adj[v]:
                left[w] -= 1
            if feasible(p) and rec():
                return True
            for w in g.adj[v]:
                left[w] += 1
            order.pop()
            del pos[v]
        failed.add(key)
        return False

    if rec():
        return order
    return None


def embed_path_power(g: Graph, ell: int, node_budget: int | None = None) -> list[int] | None:
    """Injective homomorphism of g into ``P_n^ell`` (n = |V(g)|), as ``pos[v]``.

    Returns None when exhaustive search proves none exists; raises
    SearchExhausted when the node budget runs out first.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if g.n == 0:
        return []
    if g.max_degree > 2 * ell:
        return None
    budget = [_budgets.DEFAULT.search_nodes if node_budget is None else node_budget]
    pos = [-1] * g.n
    offset = 0
    for comp in g.components():
        order = _search_component(g, comp, ell, budget)
        if order is None:
            return None
        for i, v in enumerate(order):
            pos[v] = offset + i
        offset += len(comp)
    return pos


def is_path_power_hom(g: Graph, pos: Sequence[int], ell: int, n: int | None = None) -> bool:
    n = g.n if n is None else n
    if len(pos) != g.n or len(set(pos)) != len(pos) or any(not 0 <= p < n for p in pos):
        return False
    return all(abs(pos[u] - pos[v]) <= ell for u, v in g.edges)


# ---------------------------------------------------------------------------
# (k, r, ell)-decomposition certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompCertificate:
    """Spanning subgraphs covering every host edge exactly ``multiplicity`` times."""

    parts: tuple[Graph, ...]
    multiplicity: int
    path_power: int
    homs: tuple[tuple[int, ...], ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.parts)

    def with_homs(self, node_budget: int | None = None) -> "DecompCertificate":
        """Attach path-power embeddings of every part (raises if one does not exist)."""
        homs = []
        for i, part in enumerate(self.parts):
            pos = embed_path_power(part, self.path_power, node_budget)
            if pos is None:
                raise ValueError(f"part {i} does not embed into a path power {self.path_power}")
            homs.append(tuple(pos))
        return DecompCertificate(self.parts, self.multiplicity, self.path_power, tuple(homs), dict(self.meta))


@dataclass(frozen=True)
class KRLResult:
    ok: bool
    violation: str = ""

    def __bool__(self) -> bool:
        return self.ok


def cover_counts(parts: Sequence[Graph]) -> Counter:
    c: Counter = Counter()
    for p in parts:
        c.update(p.edges)
    return c


def verify_krl(cert: DecompCertificate, f: Graph) -> KRLResult:
    """Check exact cover multiplicity and, if present, every path-power hom."""
    host = f.edge_set
    for i, part in enumerate(cert.parts):
        if part.n != f.n:
            return KRLResult(False, f"part {i} has {part.n} vertices, host has {f.n}")
        extra = [e for e in part.edges if e not in host]
        if extra:
            return KRLResult(False, f"part {i} edge {list(extra[0])} is not a host edge")
    counts = cover_counts(cert.parts)
    for e in f.edges:
        if counts[e] != cert.multiplicity:
            return KRLResult(False, f"edge {list(e)} lies in {counts[e]} parts, expected {cert.multiplicity}")
    if cert.homs is not None:
        if len(cert.homs) != len(cert.parts):
            return KRLResult(False, "number of homs differs from number of parts")
        for i, (part, hom) in enumerate(zip(cert.parts, cert.homs)):
            if len(hom) != f.n:
                return KRLResult(False, f"hom {i} has length {len(hom)}, expected {f.n}")
            seen: dict[int, int] = {}
            for v, x in enumerate(hom):
                if not 0 <= x < f.n:
                    return KRLResult(False, f"hom {i} maps {v} outside 0..{f.n - 1}")
                if x in seen:
                    return KRLResult(False, f"hom {i} is not injective: {seen[x]} and {v} both map to {x}")
                seen[x] = v
            for u, v in part.edges:
                if abs(hom[u] - hom[v]) > cert.path_power:
                    return KRLResult(False, f"hom {i} stretches edge {[u, v]} to distance {abs(hom[u] - hom[v])}")
    return KRLResult(True)
