"""Turanflag Core - Exact arithmetic, 3-graphs, families, constructions and Lagrangians"""

from .exact import FieldElement, parse_field_element, format_field_element, rationalize
from .hypergraph import (
    ThreeGraph,
    parse_graph,
    format_graph,
    canonical_form,
    is_isomorphic,
    contains_subgraph,
    contains_induced,
    find_embedding,
    blowup,
    blowup_contains,
)
from .family import Family, generate_admissible, augment_family, parse_family, format_family
from .constructions import Construction, build_construction, check_free, is_member
from .lagrangian import WeightVector, lambda_at, maximize_lagrangian, weighted_blowup
from .history import ObjectiveHistory

__all__ = [
    "FieldElement",
    "parse_field_element",
    "format_field_element",
    "rationalize",
    "ThreeGraph",
    "parse_graph",
    "format_graph",
    "canonical_form",
    "is_isomorphic",
    "contains_subgraph",
    "contains_induced",
    "find_embedding",
    "blowup",
    "blowup_contains",
    "Family",
    "generate_admissible",
    "augment_family",
    "parse_family",
    "format_family",
    "Construction",
    "build_construction",
    "check_free",
    "is_member",
    "WeightVector",
    "lambda_at",
    "maximize_lagrangian",
    "weighted_blowup",
    "ObjectiveHistory",
]
