"""Thin graphs, two-cover decompositions and the P_3 hitting decomposition."""

from .factors import (euler_split, spanning_23, spanning_23_valid, sparse_matching_removal, two_cover_decompose,
                      two_factor)
from .p3 import P3HitDecomposition, p3_hitting_decomposition
from .thin import (DecompCertificate, KRLResult, ThinWitness, classify_thin, cover_counts, embed_path_power,
                   is_augmented_thin, is_path_power_hom, is_thin, max_pendant_set, verify_krl)

__all__ = [
    "DecompCertificate", "KRLResult", "P3HitDecomposition", "ThinWitness", "classify_thin", "cover_counts",
    "embed_path_power", "euler_split", "is_augmented_thin", "is_path_power_hom", "is_thin", "max_pendant_set",
    "p3_hitting_decomposition", "spanning_23", "spanning_23_valid", "sparse_matching_removal",
    "two_cover_decompose", "two_factor", "verify_krl",
]
