"""Exact computations with quasi-perfect classes and infinite staircases in one-point blowups."""

from .accum import acc, acc_equation_check, acc_inv, vol
from .capacity import emit, envelope, staircase_profile
from .cfrac import cf_expand, weight_expansion
from .classes import QuasiPerfect, from_pq, to_vector
from .cremona import reduce
from .exact import QuadExt, sqrt_decompose
from .staircase import Family, build_staircase, liveness, make_family
from .symmetry import GroupElem, parse_group_elem, sharp

__version__ = "0.1.0"

__all__ = [
    "acc", "acc_equation_check", "acc_inv", "vol", "emit", "envelope", "staircase_profile",
    "cf_expand", "weight_expansion", "QuasiPerfect", "from_pq", "to_vector", "reduce",
    "QuadExt", "sqrt_decompose", "Family", "build_staircase", "liveness", "make_family",
    "GroupElem", "parse_group_elem", "sharp",
]
