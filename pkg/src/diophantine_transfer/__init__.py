"""Approximation of real points by rational linear subvarieties, in exact arithmetic.

The package measures the exponents omega_d of a point of P^n(R) at finite
height, runs the constructive going-up lift with a checkable certificate,
and evaluates the transfer inequalities between the exponents.
"""

from .grassmann import Multivector, dot, is_decomposable, norm_sq, primitive_part, wedge
from .lattice import GramLattice, lll_reduce, minkowski_radius, saturate, shortest_vector
from .subspace import (
    PointProxy,
    RationalSubspace,
    distance_sq,
    from_generators,
    height_sq,
    hyperplane,
    join,
    orthogonal_complement,
)
from .exponents import (
    ExponentEstimate,
    best_form_error,
    best_point_error,
    enumerate_subspaces,
    estimate_many,
    estimate_omega_d,
    estimate_uniform,
)
from .transfer import INF, ExponentTuple, SearchBudget, check_tuple, going_up_lift
from .points import PointSpec, catalog, catalog_entry, independence_check, parse_spec, refine
from .campaign import run_campaign

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ExponentEstimate",
    "ExponentTuple",
    "GramLattice",
    "Multivector",
    "PointProxy",
    "PointSpec",
    "RationalSubspace",
    "SearchBudget",
    "best_form_error",
    "best_point_error",
    "catalog",
    "catalog_entry",
    "check_tuple",
    "distance_sq",
    "dot",
    "enumerate_subspaces",
    "estimate_many",
    "estimate_omega_d",
    "estimate_uniform",
    "from_generators",
    "going_up_lift",
    "height_sq",
    "hyperplane",
    "independence_check",
    "is_decomposable",
    "join",
    "lll_reduce",
    "minkowski_radius",
    "norm_sq",
    "orthogonal_complement",
    "parse_spec",
    "primitive_part",
    "refine",
    "run_campaign",
    "saturate",
    "shortest_vector",
    "wedge",
]
