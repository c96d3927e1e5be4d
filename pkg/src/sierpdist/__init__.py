"""Exact distances in generalized Sierpinski graphs S(G, t)."""

from .base_graph import BaseGraph, PathMeta, load_graph, read_graph
from .errors import (
    ApplicabilityError,
    BudgetExceededError,
    GraphParseError,
    GraphValidationError,
    SierpError,
    UnreachableError,
)
from .oracle import ExplicitSierpinski, build_sierpinski, oracle_dist
from .recursive import (
    QueryResult,
    best_dist,
    bipartite_dist,
    complete_extreme_to_word,
    conditional_dist,
    extreme_extreme_dist,
    extreme_to_word,
    triangle_free_dist,
)
from .trees import TreeBase, tree_dist, tree_extreme_ecc, tree_sierpinski_diameter, tree_sierpinski_radius

__all__ = [
    "ApplicabilityError",
    "BaseGraph",
    "BudgetExceededError",
    "ExplicitSierpinski",
    "GraphParseError",
    "GraphValidationError",
    "PathMeta",
    "QueryResult",
    "SierpError",
    "TreeBase",
    "UnreachableError",
    "best_dist",
    "bipartite_dist",
    "build_sierpinski",
    "complete_extreme_to_word",
    "conditional_dist",
    "extreme_extreme_dist",
    "extreme_to_word",
    "load_graph",
    "oracle_dist",
    "read_graph",
    "tree_dist",
    "tree_extreme_ecc",
    "tree_sierpinski_diameter",
    "tree_sierpinski_radius",
    "triangle_free_dist",
]
