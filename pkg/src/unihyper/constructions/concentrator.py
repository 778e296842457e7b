"""Shrinking a universal hypergraph's vertex set through a bipartite concentrator.

Left side: V(h). Right side: a target set Q of size ceil((1+eps) n). If every
left set S with |S| <= n has |N(S)| >= |S|, any n-vertex image in h can be
matched into Q, so the hypergraph of all r-sets perfectly matchable from an
edge of h is again universal for n-vertex members.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .. import budgets as _budgets
from ..core import Hypergraph
from ..errors import GenerationFailure


def default_left_degree(epsilon: float) -> int:
    """Empirical choice of the constant left degree for a given epsilon."""
    return max(3, math.ceil(2 / epsilon))


def random_concentrator(n_left: int, n_right: int, c: int, rng: random.Random, tries: int = 1000) -> list[list[int]]:
    """Left-regular (degree c), right degrees as even as possible, no repeated neighbours."""
    if c > n_right:
        raise ValueError("left degree exceeds the right side")
    for _ in range(tries):
        stubs = [i % n_right for i in range(n_left * c)]
        rng.shuffle(stubs)
        nb = [stubs[i * c:(i + 1) * c] for i in range(n_left)]
        if all(len(set(x)) == c for x in nb):
            return [sorted(x) for x in nb]
    # fall back to independent uniform choices (still left-regular)
    return [sorted(rng.sample(range(n_right), c)) for _ in range(n_left)]


@dataclass(frozen=True)
class ExpansionCheck:
    ok: bool
    exhaustive_up_to: int
    sampled: int
    witness: tuple[int, ...] | None = None


def check_expansion(nb: Sequence[Sequence[int]], s_max: int, exhaustive_up_to: int, samples: int,
                    rng: random.Random, budget: int | None = None) -> ExpansionCheck:
    """|N(S)| >= |S| for all S up to ``exhaustive_up_to``, and on random S up to ``s_max``."""
    limit = _budgets.DEFAULT.candidate_subsets if budget is None else budget
    n_left = len(nb)
    total = sum(math.comb(n_left, k) for k in range(1, exhaustive_up_to + 1))
    _budgets.check("candidate-subset", total, limit)
    sets = [frozenset(x) for x in nb]
    for k in range(1, exhaustive_up_to + 1):
        for s in itertools.combinations(range(n_left), k):
            if len(frozenset().union(*(sets[v] for v in s))) < k:
                return ExpansionCheck(False, exhaustive_up_to, 0, s)
    done = 0
    if s_max > exhaustive_up_to:
        for _ in range(samples):
            k = rng.randint(exhaustive_up_to + 1, s_max)
            s = tuple(sorted(rng.sample(range(n_left), k)))
            done += 1
            if len(frozenset().union(*(sets[v] for v in s))) < k:
                return ExpansionCheck(False, exhaustive_up_to, done, s)
    return ExpansionCheck(True, exhaustive_up_to, done)


def matchable_images(f: Sequence[int], nb: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """All r-sets on the right reachable from f by a perfect matching (distinct representatives)."""
    out = set()
    for img in itertools.product(*(nb[v] for v in f)):
        if len(set(img)) == len(img):
            out.add(tuple(sorted(img)))
    return out


@dataclass(frozen=True)
class ConcentratorResult:
    hypergraph: Hypergraph
    neighbours: tuple[tuple[int, ...], ...]
    expansion: ExpansionCheck
    meta: dict = field(default_factory=dict, compare=False)


def concentrator_reduce(h: Hypergraph, n: int, epsilon: float, seed: int = 0, c: int | None = None,
                        exhaustive_up_to: int | None = None, samples: int = 2000,
                        explicit: Sequence[Sequence[int]] | None = None, retries: int = 20) -> ConcentratorResult:
    """Hypergraph on ceil((1+eps) n) vertices whose edges are matchable from edges of h."""
    r = h.uniformity if h.uniformity is not None else h.rank
    rng = random.Random(seed)
    if explicit is not None:
        nb = [sorted(set(x)) for x in explicit]
        if len(nb) != h.n:
            raise ValueError("explicit concentrator must list neighbours for every vertex of h")
        q = 1 + max((v for x in nb for v in x), default=-1)
        c = max((len(x) for x in nb), default=0)
        attempts = [nb]
    else:
        q = math.ceil((1 + epsilon) * n)
        if q >= h.n:
            raise ValueError(f"target size {q} is not smaller than |V(h)| = {h.n}")
        c = default_left_degree(epsilon) if c is None else c
        c = min(c, q)
        attempts = (random_concentrator(h.n, q, c, rng) for _ in range(retries))
    upto = min(n, 4) if exhaustive_up_to is None else exhaustive_up_to
    tried = 0
    for nb in attempts:
        tried += 1
        chk = check_expansion(nb, n, upto, samples, rng)
        if chk.ok:
            break
    else:
        raise GenerationFailure("concentrator", tried, f"expansion fails on {chk.witness}")
    _budgets.check("r-set", h.m * c ** r, _budgets.DEFAULT.rsets)
    edges = set()
    for f in h.edges:
        edges |= matchable_images(f, nb)
    out = Hypergraph(q, tuple(edges), r if h.uniformity is not None else None)
    return ConcentratorResult(out, tuple(tuple(x) for x in nb), chk, {"c": c, "q": q, "attempts": tried})
