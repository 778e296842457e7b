"""Universal objects: expanders, product graphs, layered hypergraphs, concentrators, random graphs."""

from .alon_asodi import (AAParams, AlonAsodiGraph, alon_asodi_graph, clique_bound, clique_hypergraph,
                         estimate_triangles, exact_triangles, expected_cliques, iter_cliques, pair_density,
                         pair_probability)
from .concentrator import ConcentratorResult, check_expansion, concentrator_reduce, random_concentrator
from .expanders import ExpanderSpec, check_expander, girth, make_expander, second_eigenvalue
from .layered import LayerDecomposition, LayeredHypergraph, layer_decompose, layered_hypergraph
from .product import (ProductAdjacency, ProductParams, WalkEmbedding, embed_decomposed, embedding_valid,
                      product_graph, product_graph_bruteforce)
from .universal import STRATEGIES, Report, build_universal, delta_prime, resolve_surrogate

__all__ = [
    "AAParams", "AlonAsodiGraph", "ConcentratorResult", "ExpanderSpec", "LayerDecomposition", "LayeredHypergraph",
    "ProductAdjacency", "ProductParams", "Report", "STRATEGIES", "WalkEmbedding", "alon_asodi_graph",
    "build_universal", "check_expander", "check_expansion", "clique_bound", "clique_hypergraph",
    "concentrator_reduce", "delta_prime", "embed_decomposed", "embedding_valid", "estimate_triangles",
    "exact_triangles", "expected_cliques", "girth", "iter_cliques", "layer_decompose", "layered_hypergraph",
    "make_expander", "pair_density", "pair_probability", "product_graph", "product_graph_bruteforce", "random_concentrator", "resolve_surrogate",
    "second_eigenvalue",
]
