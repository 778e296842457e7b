"""Surrogate expanders: regular graphs checked for spectral gap and girth."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Literal

import networkx as nx
import numpy as np

from .. import budgets as _budgets
from ..core import Graph, complete_graph, cycle_graph, graph, petersen_graph
from ..errors import GenerationFailure

Generator = Literal["complete", "random_regular", "explicit_file", "petersen", "cycle"]


@dataclass(frozen=True)
class ExpanderSpec:
    m: int
    d: int
    lambda_bound: float
    girth_bound: int = 0
    generator: Generator = "random_regular"
    path: str | None = None

    def __post_init__(self) -> None:
        if self.generator != "explicit_file" and not 0 < self.d < self.m:
            raise ValueError(f"need 0 < d < m, got d={self.d}, m={self.m}")
        if self.lambda_bound <= 0:
            raise ValueError("lambda_bound must be positive")

    @staticmethod
    def ramanujan(m: int, d: int, generator: Generator = "random_regular", girth_bound: int = 0) -> "ExpanderSpec":
        return ExpanderSpec(m, d, 2 * math.sqrt(d - 1), girth_bound, generator)


def second_eigenvalue(g: Graph) -> float:
    """Largest absolute adjacency eigenvalue after dropping the top one."""
    if g.n < 2:
        return 0.0
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    ev = np.sort(np.linalg.eigvalsh(a))
    return float(np.max(np.abs(ev[:-1])))


def girth(g: Graph) -> float:
    """Length of a shortest cycle (inf for forests)."""
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class ExpanderCheck:
    regular: bool
    lam: float
    girth: float
    ok: bool


def check_expander(g: Graph, spec: ExpanderSpec) -> ExpanderCheck:
    regular = g.is_regular(spec.d)
    lam = second_eigenvalue(g)
    gi = girth(g)
    ok = regular and lam <= spec.lambda_bound + 1e-9 and gi >= spec.girth_bound
    return ExpanderCheck(regular, lam, gi, ok)


def make_expander(spec: ExpanderSpec, seed: int = 0, retries: int | None = None) -> Graph:
    """A d-regular graph on m vertices passing the spectral and girth checks."""
    if spec.generator == "complete":
        if spec.m != spec.d + 1:
            raise ValueError("complete generator needs m = d + 1")
        cands = iter([complete_graph(spec.m)])
    elif spec.generator == "petersen":
        cands = iter([petersen_graph()])
    elif spec.generator == "cycle":
        cands = iter([cycle_graph(spec.m)])
    elif spec.generator == "explicit_file":
        from ..io import read_hypergraph

        if spec.path is None:
            raise ValueError("explicit_file generator needs a path")
        h = read_hypergraph(spec.path)
        cands = iter([graph(h.n, h.edges)])
    else:
        if (spec.m * spec.d) % 2:
            raise ValueError("random_regular needs m*d even")
        tries = _budgets.DEFAULT.retries if retries is None else retries
        cands = (graph(spec.m, nx.random_regular_graph(spec.d, spec.m, seed=seed * 1_000_003 + i).edges())
                 for i in range(tries))
    best = math.inf
    attempts = 0
    for g in cands:
        attempts += 1
        c = check_expander(g, spec)
        if c.ok:
            return g
        if c.regular:
            best = min(best, c.lam)
    raise GenerationFailure(f"({spec.m},{spec.d},{spec.lambda_bound:.3f})-expander", attempts,
                            f"best lambda {best:.4f}")
