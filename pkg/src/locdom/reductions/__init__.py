"""Generators and certificate mappers for hardness constructions."""

from .clique_reduction import (
    CliqueInstance,
    build_clique_reduction,
    canonical_solution_from_clique,
    clique_cover,
    extract_clique_from_solution,
    graph_from_layout,
    solve_clique_exact,
)
from .compositions import (
    AuditReport,
    CoverWitness,
    HypergraphInstance,
    audit_observations,
    build_or_composition_clique,
    build_or_composition_vc,
    composition_cover_witnesses,
    composition_graph_from_layout,
    extract_bicoloring,
    parse_hypergraph,
    serialize_hypergraph,
    solution_from_bicoloring,
    solve_bicoloring_exact,
)

__all__ = [
    "CliqueInstance",
    "build_clique_reduction",
    "canonical_solution_from_clique",
    "clique_cover",
    "extract_clique_from_solution",
    "graph_from_layout",
    "solve_clique_exact",
    "AuditReport",
    "CoverWitness",
    "HypergraphInstance",
    "audit_observations",
    "build_or_composition_clique",
    "build_or_composition_vc",
    "composition_cover_witnesses",
    "composition_graph_from_layout",
    "extract_bicoloring",
    "parse_hypergraph",
    "serialize_hypergraph",
    "solution_from_bicoloring",
    "solve_bicoloring_exact",
]
