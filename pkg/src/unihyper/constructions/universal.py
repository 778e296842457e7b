"""End-to-end universal hypergraphs for F^(r)(n, delta), dispatched by strategy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Literal

from ..core import (FamilyParams, Graph, Hypergraph, build_cycle_power, complete_graph, cycle_graph,
                    matching_plus_path, path_graph, perfect_matching_pattern, petersen_graph)
from ..errors import OpenCase
from ..hitting import expand
from .expanders import ExpanderSpec, make_expander
from .layered import LayeredHypergraph, layered_hypergraph
from .product import ProductAdjacency, ProductParams, product_graph

Strategy = Literal["even_r_matching", "divisor_composition", "odd_r_path", "delta2_product", "delta2_layered"]
STRATEGIES = ("even_r_matching", "divisor_composition", "odd_r_path", "delta2_product", "delta2_layered")

SURROGATES = {
    "k2": lambda: complete_graph(2),
    "k3": lambda: complete_graph(3),
    "k4": lambda: complete_graph(4),
    "c5": lambda: cycle_graph(5),
    "petersen": petersen_graph,
}

DELTA2_PRODUCT = ProductParams(4, 3, 8)


def resolve_surrogate(s: str | ExpanderSpec | Graph, seed: int = 0) -> Graph:
    if isinstance(s, Graph):
        return s
    if isinstance(s, ExpanderSpec):
        return make_expander(s, seed)
    if s in SURROGATES:
        return SURROGATES[s]()
    raise ValueError(f"unknown surrogate {s!r}; choose from {sorted(SURROGATES)} or pass an ExpanderSpec")


@dataclass(frozen=True)
class Report:
    construction: str
    params: dict[str, Any]
    seed: int
    vertices: int
    edges: int | None
    predicted_exponent: float
    extra: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        d = {"construction": self.construction, "seed": self.seed, "vertices": self.vertices,
             "edges": self.edges, "predicted_exponent": self.predicted_exponent}
        d.update({f"param.{k}": v for k, v in self.params.items()})
        d.update(self.extra)
        return d


def delta_prime(r: int, delta: int) -> int:
    """Max degree of the matching-plus-P_3 hitting graph: ceil((r+1) delta / r)."""
    return math.ceil((r + 1) * delta / r)


def base_graph(n: int, delta: int, surrogate: Graph, product: ProductParams | None = None) -> tuple[Graph, str]:
    """A graph standing in for an F^(2)(n, delta)-universal graph."""
    if delta <= 2:
        return build_cycle_power(n, 2), "square of a Hamilton cycle"
    p = product or ProductParams(2, 1, 1)
    return product_graph(surrogate, p), f"surrogate product {p}"


def build_universal(p: FamilyParams, strategy: Strategy, surrogate: str | ExpanderSpec | Graph = "k3",
                    seed: int = 0, r_prime: int | None = None, product: ProductParams | None = None,
                    budget: int | None = None) -> tuple[Hypergraph | LayeredHypergraph, Report]:
    r, n, delta = p.r, p.n, p.delta
    target = r - r / delta
    params = {"r": r, "n": n, "delta": delta, "strategy": strategy}
    base = resolve_surrogate(surrogate, seed)
    params["surrogate_vertices"] = base.n
    if strategy == "even_r_matching":
        if r % 2:
            raise ValueError("even_r_matching needs even r")
        g, kind = base_graph(n, delta, base, product)
        h = expand(g, perfect_matching_pattern(r, 2), r, budget)
        rep = Report(strategy, params, seed, h.n, h.m, target,
                     {"base": kind, "base_edges": g.m, "edge_bound": g.m ** (r // 2)})
        return h, rep
    if strategy == "divisor_composition":
        rp = r_prime if r_prime is not None else 2
        if rp < 2 or r % rp:
            raise ValueError(f"r'={rp} must divide r={r}")
        params["r_prime"] = rp
        if rp == 2:
            g, kind = base_graph(n, delta, base, product)
        elif rp == 3 and delta <= 2:
            g, _ = build_universal(FamilyParams(3, n, delta), "delta2_product", base, seed, budget=budget)
            kind = "P_3 expansion of the product graph"
        else:
            raise OpenCase(f"no base construction for r'={rp}, delta={delta}")
        h = expand(g, perfect_matching_pattern(r, rp), r, budget)
        return h, Report(strategy, params, seed, h.n, h.m, target, {"base": kind, "base_edges": g.m})
    if strategy == "odd_r_path":
        if r % 2 == 0 or r < 3:
            raise ValueError("odd_r_path needs odd r >= 3")
        dp = delta_prime(r, delta)
        g, kind = base_graph(n, dp, base, product)
        h = expand(g, matching_plus_path(r), r, budget)
        return h, Report(strategy, params, seed, h.n, h.m, target,
                         {"delta_prime": dp, "base": kind, "base_edges": g.m})
    if strategy == "delta2_product":
        if r != 3 or delta > 2:
            raise ValueError("delta2_product covers r = 3, delta <= 2")
        pp = product or DELTA2_PRODUCT
        lazy = ProductAdjacency(base, pp)
        g = product_graph(base, pp)
        h = expand(g, path_graph(3), 3, budget)
        return h, Report(strategy, params, seed, h.n, h.m, 1.5,
                         {"product": str(pp), "base_edges": g.m, "product_complete": lazy.is_complete()})
    if strategy == "delta2_layered":
        if delta > 2:
            raise OpenCase("layered construction covers delta <= 2 only")
        if r % 2 == 0 or r < 5:
            raise ValueError("delta2_layered needs odd r >= 5")
        pp = product or DELTA2_PRODUCT
        lay = layered_hypergraph(n, r, base, pp)
        top = lay.layers[-1]
        top_edges = top.edge_count() if isinstance(top, ProductAdjacency) else top.m
        extra = {"t": lay.t, "product": str(pp), "product_vertices": top.n, "product_edges": top_edges,
                 "cycle_power_edges": lay.layers[0].m, "edge_upper_bound": lay.edge_upper_bound()}
        return lay, Report(strategy, params, seed, lay.n, lay.edge_count(), r / 2, extra)
    raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
