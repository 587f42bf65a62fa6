"""Exact arithmetic: Gaussian rationals, polynomials (ambient, on S^3, on H^n), t-jets."""

from .numbers import GaussianRational, I, ONE, ZERO, format_rational, gq
from .poly import (
    Poly,
    PolyRing,
    conjugate,
    free_ring,
    heisenberg_ring,
    random_poly,
    random_real_poly,
    sphere_reduce,
    sphere_ring,
)
from .jets import DEFAULT_ORDER, TJet, jet_exp, jet_invert, jet_series
from .grammar import ParseError, format_poly, parse_poly

SpherePoly = Poly  # a Poly whose ring is sphere_ring(); kept as a name for readability

__all__ = [
    "GaussianRational", "I", "ONE", "ZERO", "format_rational", "gq",
    "Poly", "PolyRing", "SpherePoly", "conjugate", "free_ring", "heisenberg_ring",
    "random_poly", "random_real_poly", "sphere_reduce", "sphere_ring",
    "DEFAULT_ORDER", "TJet", "jet_exp", "jet_invert", "jet_series",
    "ParseError", "format_poly", "parse_poly",
]
