"""Exact algebra substrate: rationals, sparse polynomials, resultants, jets.

``Rational`` is :class:`fractions.Fraction`; it already keeps numerator and
denominator coprime with a positive denominator.
"""
from fractions import Fraction as Rational

from .jets import Jet1, Jet2, exp, is_exact, log, power
from .multipoly import MultiPoly, gens
from .resultants import (
    determinant,
    discriminant,
    euclid_remainder,
    poly_degree,
    pseudo_remainder,
    sylvester_matrix,
    sylvester_resultant,
    univariate_gcd,
)

__all__ = [
    "Rational", "Jet1", "Jet2", "exp", "log", "power", "is_exact",
    "MultiPoly", "gens",
    "determinant", "discriminant", "euclid_remainder", "poly_degree",
    "pseudo_remainder", "sylvester_matrix", "sylvester_resultant", "univariate_gcd",
]
