"""Counting, approximating and deciding k-edge subgraphs with a graph property.

The package pairs each algorithm with an exact oracle: brute-force counts
against pattern decompositions, the fracture basis against direct colourful
counts, deletion-contraction against subset enumeration.
"""

from __future__ import annotations

from .cli import RunConfig
from .coefficients import (CoefficientTable, Verdict, classify_minor_closed, coefficient_table,
                           hardness_criterion, top_coefficient, torus_top_coefficient_mod)
from .counting import (CountQuery, EstimateResult, count_exact_bruteforce, count_exact_via_basis,
                       count_exact_via_subs, decide_exists, fptras_estimate)
from .errors import CapacityError, EdgeSubError, MetadataError, ParseError, UsageError
from .fractures import Fracture, enumerate_fractures, fractured_graph, torus_fixed_points
from .graphs import Graph, MultiGraph, parse_edge_list, parse_family, generate_family
from .homs import HColouredGraph, count_cp_homs, count_homs, count_subs
from .properties import BUILTINS, PropertySpec, get_property, minor_free
from .tutte import RationalPoint, classify_point, special_point_counters, tutte_k

__all__ = [
    "RunConfig",
    "CoefficientTable",
    "Verdict",
    "classify_minor_closed",
    "coefficient_table",
    "hardness_criterion",
    "top_coefficient",
    "torus_top_coefficient_mod",
    "CountQuery",
    "EstimateResult",
    "count_exact_bruteforce",
    "count_exact_via_basis",
    "count_exact_via_subs",
    "decide_exists",
    "fptras_estimate",
    "CapacityError",
    "EdgeSubError",
    "MetadataError",
    "ParseError",
    "UsageError",
    "Fracture",
    "enumerate_fractures",
    "fractured_graph",
    "torus_fixed_points",
    "Graph",
    "MultiGraph",
    "parse_edge_list",
    "parse_family",
    "generate_family",
    "HColouredGraph",
    "count_cp_homs",
    "count_homs",
    "count_subs",
    "BUILTINS",
    "PropertySpec",
    "get_property",
    "minor_free",
    "RationalPoint",
    "classify_point",
    "special_point_counters",
    "tutte_k",
]

__version__ = "0.1.0"
