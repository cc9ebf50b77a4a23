"""Brute-force reference implementations used to check the main pipeline."""

from .decomposition import (
    DecompositionError,
    PathDecomposition,
    decomposing_walk_search,
    path_decomposition_to_walk,
    pathwidth_by_vertex_separation,
    validate_decomposing_walk,
    validate_path_decomposition,
    walk_to_path_decomposition,
)
from .hom import hom_count
from .walks import (
    CapExceeded,
    SimplicialWalk,
    SWMultiset,
    WalkCensus,
    hasse_walk_counts,
    iter_walks,
    sw_refinement,
    walk_census,
    word_digest,
)

__all__ = [
    "CapExceeded",
    "DecompositionError",
    "PathDecomposition",
    "SWMultiset",
    "SimplicialWalk",
    "WalkCensus",
    "decomposing_walk_search",
    "hasse_walk_counts",
    "hom_count",
    "iter_walks",
    "path_decomposition_to_walk",
    "pathwidth_by_vertex_separation",
    "sw_refinement",
    "validate_decomposing_walk",
    "validate_path_decomposition",
    "walk_census",
    "walk_to_path_decomposition",
    "word_digest",
]
