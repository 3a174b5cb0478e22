"""Curve graph toolkit.

Graphs are parsed from the adjacency-list format (``a: b, c``) or edge-list
JSON. Surfaces are ``(genus, punctures)`` pairs and curves are words in the
side labels of the polygon model, for example ``"a1 b1^-1"``.
"""

from ._core import (
    BudgetError,
    Graph,
    ParseError,
    atlas,
    bounded_search,
    calibrate,
    cluster,
    collar_radius,
    collar_test,
    continued_fraction,
    decide,
    dehn_twist,
    farey_distance,
    farey_embed,
    geometric_intersection,
    is_farey_embeddable,
    mm_estimate,
    parse_graph,
    reembed,
    self_intersection,
    torus_curve,
    verify_certificate,
)

__all__ = [
    "BudgetError",
    "Graph",
    "ParseError",
    "atlas",
    "bounded_search",
    "calibrate",
    "cluster",
    "collar_radius",
    "collar_test",
    "continued_fraction",
    "decide",
    "dehn_twist",
    "farey_distance",
    "farey_embed",
    "geometric_intersection",
    "is_farey_embeddable",
    "mm_estimate",
    "parse_graph",
    "reembed",
    "self_intersection",
    "torus_curve",
    "verify_certificate",
]

__version__ = "0.1.0"
