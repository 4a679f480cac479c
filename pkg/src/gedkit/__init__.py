"""Exact graph edit distance: search, bounds, verification, and tooling."""

from .assignment import INFEASIBLE, AssignmentState, CostMatrix, dual_feasible, resolve_forbidden, solve
from .bounds import (
    ALL_KINDS,
    ChildBounds,
    SearchContext,
    best_extension,
    child_bound,
    children_bounds_assignment,
    children_bounds_labelset,
    children_bounds_star,
    lambda_cost,
    node_bound,
    remainder_bound,
)
from .datagen import GenSpec, PerturbSpec, gen_random_graph, make_pair, perturb
from .graphs import (
    PAD,
    FullMapping,
    Graph,
    LabelTable,
    ParseError,
    editorial_cost,
    induced_mapping_cost,
    multiset_edit_distance,
    pad_pair,
    parse_graphs,
    serialize_graphs,
)
from .oracle import (
    OracleLimitError,
    brute_force_assignment,
    brute_force_extension_min,
    brute_force_ged,
)
from .ordering import compute_order
from .search import SearchConfig, SearchResult, SearchStats, ged_compute, ged_verify

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "AssignmentState",
    "ChildBounds",
    "CostMatrix",
    "FullMapping",
    "GenSpec",
    "Graph",
    "INFEASIBLE",
    "LabelTable",
    "OracleLimitError",
    "PAD",
    "ParseError",
    "PerturbSpec",
    "SearchConfig",
    "SearchContext",
    "SearchResult",
    "SearchStats",
    "best_extension",
    "brute_force_assignment",
    "brute_force_extension_min",
    "brute_force_ged",
    "child_bound",
    "children_bounds_assignment",
    "children_bounds_labelset",
    "children_bounds_star",
    "compute_order",
    "dual_feasible",
    "editorial_cost",
    "ged_compute",
    "ged_verify",
    "gen_random_graph",
    "induced_mapping_cost",
    "lambda_cost",
    "make_pair",
    "multiset_edit_distance",
    "node_bound",
    "pad_pair",
    "parse_graphs",
    "perturb",
    "remainder_bound",
    "resolve_forbidden",
    "serialize_graphs",
    "solve",
]
