"""Embedding search, universality checks over families, clique counts and scaling fits."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Literal, Protocol, Sequence

import numpy as np

from . import budgets as _budgets
from .constructions.alon_asodi import iter_cliques
from .core import FamilyParams, Graph, Hypergraph, enumerate_family, sample_family

Status = Literal["found", "absent", "timeout"]


class EdgeOracle(Protocol):
    n: int

    def has_edge(self, e: Iterable[int]) -> bool: ...


@dataclass(frozen=True)
class EmbedResult:
    status: Status
    mapping: tuple[int, ...] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def _search_order(small: Hypergraph) -> list[int]:
    """Descending degree, then most links to already ordered vertices."""
    nb: list[set[int]] = [set() for _ in range(small.n)]
    for e in small.edges:
        for v in e:
            nb[v].update(w for w in e if w != v)
    left = set(range(small.n))
    order: list[int] = []
    placed: set[int] = set()
    while left:
        best = max(left, key=lambda v: (len(nb[v] & placed), small.degree(v), -v))
        order.append(best)
        placed.add(best)
        left.discard(best)
    return order


def mapping_valid(small: Hypergraph, big: EdgeOracle, mapping: Sequence[int]) -> bool:
    """Independent re-check: injective and edge preserving."""
    if len(mapping) != small.n or len(set(mapping)) != len(mapping):
        return False
    if any(not 0 <= x < big.n for x in mapping):
        return False
    return all(big.has_edge(tuple(sorted(mapping[v] for v in e))) for e in small.edges)


def embed_hypergraph(small: Hypergraph, big: EdgeOracle, node_budget: int | None = None) -> EmbedResult:
    """Injective edge-preserving map of ``small`` into ``big`` by backtracking.

    ``big`` may be a Hypergraph (candidates are pruned through co-occurrence
    and degrees) or any object with ``n`` and ``has_edge``. ``absent`` is only
    returned after exhausting the search.
    """
    if small.n > big.n:
        return EmbedResult("absent")
    budget = _budgets.DEFAULT.search_nodes if node_budget is None else node_budget
    order = _search_order(small)
    pos = {v: i for i, v in enumerate(order)}
    checks: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in small.edges:
        checks[max(pos[v] for v in e)].append(e)
    anchors: list[int | None] = []
    for i, v in enumerate(order):
        earlier = [w for e in small.edges if v in e for w in e if pos[w] < i]
        anchors.append(min(earlier, key=lambda w: pos[w]) if earlier else None)
    is_hyper = isinstance(big, Hypergraph)
    if is_hyper:
        co: list[set[int]] = [set() for _ in range(big.n)]
        for e in big.edges:
            for v in e:
                co[v].update(e)
        for v in range(big.n):
            co[v].discard(v)
        need = [small.degree(v) for v in range(small.n)]
        bdeg = [big.degree(v) for v in range(big.n)]
        everything = [v for v in range(big.n)]
    image = [-1] * small.n
    used: set[int] = set()
    nodes = 0
    has_edge = big.has_edge

    def candidates(i: int) -> Iterable[int]:
        v = order[i]
        a = anchors[i]
        if is_hyper:
            pool = sorted(co[image[a]]) if a is not None else everything
            return (y for y in pool if y not in used and bdeg[y] >= need[v])
        return (y for y in range(big.n) if y not in used)

    stack = [candidates(0)] if small.n else []
    i = 0
    while stack:
        it = stack[-1]
        v = order[i]
        advanced = False
        for y in it:
            nodes += 1
            if nodes > budget:
                return EmbedResult("timeout", None, nodes)
            image[v] = y
            if all(has_edge(tuple(sorted(image[x] for x in e))) for e in checks[i]):
                used.add(y)
                advanced = True
                break
        if not advanced:
            image[v] = -1
            stack.pop()
            i -= 1
            if i >= 0:
                used.discard(image[order[i]])
            continue
        if i + 1 == small.n:
            mapping = tuple(image)
            assert mapping_valid(small, big, mapping), "embedding failed re-validation"
            return EmbedResult("found", mapping, nodes)
        i += 1
        stack.append(candidates(i))
    if small.n == 0:
        return EmbedResult("found", (), 0)
    return EmbedResult("absent", None, nodes)


# ---------------------------------------------------------------------------
# universality over a family
# ---------------------------------------------------------------------------

def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class VerifyReport:
    mode: Literal["exhaustive", "sampled"]
    tested: int = 0
    embedded: int = 0
    timeouts: int = 0
    failures: list[Hypergraph] = field(default_factory=list)
    timings: list[float] = field(default_factory=list)
    seed: int = 0
    invalid: int = 0   # successes that failed re-validation (should stay 0)
    truncated: bool = False

    @property
    def rate(self) -> float:
        return self.embedded / self.tested if self.tested else 0.0

    @property
    def universal(self) -> bool | None:
        """True/False only when exhaustive and conclusive; None otherwise."""
        if self.mode != "exhaustive" or self.timeouts or self.truncated:
            return None if not self.failures else False
        return not self.failures

    def summary(self, timings: bool = False) -> dict:
        lo, hi = wilson_interval(self.embedded, self.tested)
        d = {"mode": self.mode, "seed": self.seed, "tested": self.tested, "embedded": self.embedded,
             "absent": len(self.failures), "timeouts": self.timeouts, "rate": round(self.rate, 6),
             "invalid_successes": self.invalid, "truncated": self.truncated}
        if timings:
            d["total_seconds"] = round(sum(self.timings), 3)
        if self.mode == "sampled":
            d["wilson_low"], d["wilson_high"] = round(lo, 6), round(hi, 6)
        else:
            d["universal"] = self.universal
        return d


def verify_universal(big: EdgeOracle, p: FamilyParams, mode: Literal["exhaustive", "sampled"] = "sampled",
                     seed: int = 0, sample_count: int = 100, node_budget: int | None = None,
                     regular: bool = False, linear: bool = False, max_failures: int | None = None,
                     enum_budget: int | None = None, time_limit: float | None = None) -> VerifyReport:
    """Try to embed every (or every sampled) member of F^(r)(n, delta) into ``big``.

    ``time_limit`` (seconds) stops the run between members; the report is then
    marked truncated and says nothing about the members never tried.
    """
    rep = VerifyReport(mode, seed=seed)
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    if mode == "exhaustive":
        members: Iterable[Hypergraph] = enumerate_family(p, enum_budget)
    elif mode == "sampled":
        members = sample_family(p, seed, sample_count, regular=regular, linear=linear)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for h in members:
        if deadline is not None and time.perf_counter() > deadline:
            rep.truncated = True
            break
        t0 = time.perf_counter()
        res = embed_hypergraph(h, big, node_budget)
        rep.timings.append(time.perf_counter() - t0)
        rep.tested += 1
        if res.status == "found":
            if mapping_valid(h, big, res.mapping):
                rep.embedded += 1
            else:
                rep.invalid += 1
        elif res.status == "timeout":
            rep.timeouts += 1
        else:
            rep.failures.append(h)
            if max_failures is not None and len(rep.failures) >= max_failures:
                break
    return rep


# ---------------------------------------------------------------------------
# cliques and scaling
# ---------------------------------------------------------------------------

def count_cliques(g: Graph, r: int, budget: int | None = None) -> int:
    """Number of r-cliques by ordered extension."""
    limit = _budgets.DEFAULT.rsets if budget is None else budget
    c = 0
    for _ in iter_cliques(g, r):
        c += 1
        if c > limit:
            _budgets.check("clique", c, limit)
    return c


@dataclass(frozen=True)
class ScalingFit:
    points: tuple[tuple[float, float], ...]
    fitted_exponent: float
    intercept: float
    target_exponent: float | None
    residuals: tuple[float, ...]

    def summary(self) -> dict:
        return {"points": [list(p) for p in self.points], "fitted_exponent": round(self.fitted_exponent, 6),
                "target_exponent": self.target_exponent, "intercept": round(self.intercept, 6),
                "max_abs_residual": round(max(abs(x) for x in self.residuals), 6)}


def scaling_fit(points: Sequence[tuple[float, float]], target: float | None = None) -> ScalingFit:
    """Least-squares slope of log(edges) against log(n)."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("points must be positive")
    if np.unique(xs).size < 2:
        raise ValueError("degenerate fit: all n values identical")
    lx, ly = np.log(xs), np.log(ys)
    slope, icept = np.polyfit(lx, ly, 1)
    res = ly - (slope * lx + icept)
    return ScalingFit(tuple((float(a), float(b)) for a, b in points), float(slope), float(icept), target,
                      tuple(float(x) for x in res))


def random_seed_list(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(1 << 30) for _ in range(count)]
