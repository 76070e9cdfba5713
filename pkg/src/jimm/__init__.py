"""Exact arithmetic on the Farey tree: the Jimm involution, tree maps and boundary measures."""

from .cf import CFTuple, DomainError, cf_expand, cf_value, parse_rational, star, theta, theta_inverse
from .measures import TransitionFunction, cdf, interval_measure, monte_carlo_walk, parse_measure
from .transforms import jimm_extended, jimm_matrix, jimm_rational, jimm_tuple, twisted_calkin_wilf
from .tree import FareyInterval, TreeRenderSpec, children, interval_of, render_tree

__version__ = "0.1.0"

__all__ = [
    "CFTuple",
    "DomainError",
    "FareyInterval",
    "TransitionFunction",
    "TreeRenderSpec",
    "cdf",
    "cf_expand",
    "cf_value",
    "children",
    "interval_measure",
    "interval_of",
    "jimm_extended",
    "jimm_matrix",
    "jimm_rational",
    "jimm_tuple",
    "monte_carlo_walk",
    "parse_measure",
    "parse_rational",
    "render_tree",
    "star",
    "theta",
    "theta_inverse",
    "twisted_calkin_wilf",
]
