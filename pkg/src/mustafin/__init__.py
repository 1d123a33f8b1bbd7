"""Exact special fibers of Mustafin varieties.

Lattice configurations in the Bruhat-Tits building of PGL_d over Q(t)
degenerate projective space; this package computes the special fibers of
those degenerations two ways (a tropical/combinatorial path for diagonal
configurations and a symbolic path for arbitrary ones), analyzes the d = 2
tree theory, and classifies triangles for d = n = 3 into their 38
combinatorial types.
"""

from .valfield import ValuedMatrix, ValuedScalar, parse_scalar
from .building import (Configuration, LatticeClass, ResidueSubspace,
                       adjacent, class_distance, class_eq, common_apartment,
                       configuration_from_dict, convex_hull,
                       elementary_exponents, first_step_subspace,
                       lattice_intersection)
from .groebner import (FiberReport, MIdeal, special_fiber,
                       special_fiber_report)
from .census import census_catalog, classify_triangle

__all__ = [
    "ValuedMatrix", "ValuedScalar", "parse_scalar",
    "Configuration", "LatticeClass", "ResidueSubspace",
    "adjacent", "class_distance", "class_eq", "common_apartment",
    "configuration_from_dict", "convex_hull", "elementary_exponents",
    "first_step_subspace", "lattice_intersection",
    "FiberReport", "MIdeal", "special_fiber", "special_fiber_report",
    "census_catalog", "classify_triangle",
]
