"""Computational commutative algebra over F_p: Groebner bases, colon ideals,
canonical and symbolic-power ideals, F-purity and Frobenius splitting ideals,
cyclic covers, and an experiment harness for deformation and m-adic
stability of F-purity."""

from .polycore import PolyRing, Poly, MonomialOrder, StructuralError, parse_poly
from .groebner import GroebnerBasis, BudgetExceeded, Budget, buchberger, ideal_member
from .idealops import Ideal, ideal_quotient, saturation, eliminate, bracket_power, height
from .divisorial import (
    RingPresentation,
    DivisorialIdeal,
    canonical_ideal,
    find_certificate,
    symbolic_power,
    qgor_index,
)
from .fsingular import fedder_is_fpure, splitting_ideal, colon_chain_check
from .cycliccover import build_cover

__version__ = "0.1.0"

__all__ = [
    "PolyRing", "Poly", "MonomialOrder", "StructuralError", "parse_poly",
    "GroebnerBasis", "BudgetExceeded", "Budget", "buchberger", "ideal_member",
    "Ideal", "ideal_quotient", "saturation", "eliminate", "bracket_power", "height",
    "RingPresentation", "DivisorialIdeal", "canonical_ideal", "find_certificate",
    "symbolic_power", "qgor_index", "fedder_is_fpure", "splitting_ideal",
    "colon_chain_check", "build_cover",
]
