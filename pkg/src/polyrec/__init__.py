"""Combinatorial polytopes and their reconstruction from graphs."""

from .core import (
    FaceLattice,
    Graph,
    PolytopeStats,
    Skeleton,
    VertexFacetIncidence,
    are_equivalent,
    balinski_check,
    build_lattice,
    graph_of,
    graphs_isomorphic,
    incidence_graph,
    k_skeleton,
    lattice_stats,
    skeletons_isomorphic,
    stats,
)
from .estimator import GraphReconstructor, check_graph
from .reconstruct import (
    CoverageVerdict,
    ReconstructionResult,
    excess_reconstruct,
    find_graph_ambiguities,
    reconstruct,
    simple_reconstruct,
)

__all__ = [
    "CoverageVerdict",
    "FaceLattice",
    "Graph",
    "GraphReconstructor",
    "PolytopeStats",
    "ReconstructionResult",
    "Skeleton",
    "VertexFacetIncidence",
    "are_equivalent",
    "balinski_check",
    "build_lattice",
    "check_graph",
    "excess_reconstruct",
    "find_graph_ambiguities",
    "graph_of",
    "graphs_isomorphic",
    "incidence_graph",
    "k_skeleton",
    "lattice_stats",
    "reconstruct",
    "simple_reconstruct",
    "skeletons_isomorphic",
    "stats",
]
