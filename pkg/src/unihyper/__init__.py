"""Sparse universal hypergraphs: constructions, decompositions and verification at desk scale."""

from .core import (EdgeFamilyParams, FamilyParams, Graph, Hypergraph, enumerate_edge_family, enumerate_family,
                   graph, hypergraph, sample_family)
from .errors import BudgetExceeded, GenerationFailure, OpenCase, SearchExhausted
from .hitting import expand, hit_matching_path, hit_perfect_matching
from .verify import embed_hypergraph, scaling_fit, verify_universal

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "EdgeFamilyParams", "FamilyParams", "GenerationFailure", "Graph", "Hypergraph", "OpenCase",
    "SearchExhausted", "embed_hypergraph", "enumerate_edge_family", "enumerate_family", "expand", "graph",
    "hit_matching_path", "hit_perfect_matching", "hypergraph", "sample_family", "scaling_fit", "verify_universal",
]
