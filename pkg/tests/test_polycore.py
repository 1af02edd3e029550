from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from webcheck.errors import InvalidInput
from webcheck.polycore import (
    Jet1, Jet2, MultiPoly, Rational, determinant, discriminant, euclid_remainder, exp, gens, log,
    poly_degree, power, pseudo_remainder, sylvester_matrix, sylvester_resultant, univariate_gcd,
)

small = st.integers(-5, 5)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, names=("x", "y")):
    terms = draw(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), small), max_size=5))
    x, y = gens(*names)
    out = MultiPoly.const(0, names)
    for i, j, c in terms:
        out = out + c * x ** i * y ** j
    return out


# -- rationals ------------------------------------------------------------------
@given(rationals, rationals)
def test_rational_stays_reduced(a, b):
    for v in (a + b, a - b, a * b) + ((a / b,) if b else ()):
        v = Rational(v)
        assert v.denominator > 0
        from math import gcd
        assert gcd(abs(v.numerator), v.denominator) == 1


# -- multivariate polynomials ---------------------------------------------------
@settings(max_examples=40)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys())
def test_no_stored_zero_terms(a):
    assert all(c != 0 for c in (a - a).terms.values())
    assert (a - a).is_zero()


def test_exponent_vectors_match_variable_count():
    x, y, z = gens("x", "y", "z")
    p = x ** 2 * z + 3 * y - 1
    assert all(len(e) == 3 for e in p.terms)


# -- resultants -----------------------------------------------------------------
def test_resultant_examples():
    (Z,) = gens("Z")
    assert sylvester_resultant(Z - 1, Z - 2, "Z") == -1
    assert sylvester_resultant(Z ** 2 - 1, Z + 1, "Z") == 0
    assert sylvester_resultant(Z ** 2 + 1, Z ** 2 - 1, "Z") == 4


def test_resultant_eliminates_variable_over_polynomial_ring():
    Z, X = gens("Z", "X")
    r = sylvester_resultant(Z - X, Z ** 2 - 2, "Z")
    # res(Z - X, Z^2 - 2) = X^2 - 2 up to sign
    assert r == X ** 2 - 2 or r == -(X ** 2 - 2)


def test_resultant_vanishes_on_common_factor():
    Z, X = gens("Z", "X")
    common = Z - X - 1
    assert sylvester_resultant(common * (Z + 2), common * (Z ** 2 + X), "Z") == 0


def test_sylvester_matrix_shape():
    (Z,) = gens("Z")
    M = sylvester_matrix(Z ** 5 + 1, Z ** 6 - Z, "Z")
    assert len(M) == 11 and all(len(r) == 11 for r in M)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_determinant_matches_permutation_expansion(n):
    import itertools
    import random
    rng = random.Random(n)
    M = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
    ref = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(sign)
        for i in range(n):
            prod *= M[i][perm[i]]
        ref += prod
    assert determinant(M) == ref


def test_euclid_examples():
    (Z,) = gens("Z")
    assert euclid_remainder(Z ** 2 - 1, Z - 1, "Z").is_zero()
    assert euclid_remainder(Z ** 3, Z ** 2 + 1, "Z") == -Z


def test_euclid_rejects_constant_divisor():
    (Z,) = gens("Z")
    with pytest.raises(InvalidInput):
        euclid_remainder(Z ** 2, MultiPoly.const(3, ("Z",)), "Z")


def test_pseudo_remainder_over_polynomial_coefficients():
    Z, X = gens("Z", "X")
    a, b = Z ** 3 + X, X * Z ** 2 + 1
    r = pseudo_remainder(a, b, "Z")
    assert poly_degree(r, "Z") < 2
    # lc(b)^(deg a - deg b + 1) * a - r is a multiple of b
    _, rem = (X ** 2 * a - r).divmod(b)
    assert rem.is_zero()


def test_discriminant_examples():
    w, z = gens("w", "z")
    assert discriminant(w ** 2 - 2 * z * w + 2, "w") == 4 * z ** 2 - 8
    assert discriminant(w ** 2 - w + z, "w") == 1 - 4 * z
    assert discriminant(w ** 2 + 1, "w") == -4


def test_univariate_gcd_exact():
    # (Z - 1)(Z - 2) and (Z - 1)(Z + 3), ascending coefficients
    assert univariate_gcd([2, -3, 1], [-3, 2, 1]) == [-1, 1]


# -- jets -----------------------------------------------------------------------
def test_transcendental_jets():
    t = Jet1.variable(0, 2)
    assert exp(t).c == (1, 1, Fraction(1, 2))
    assert log(1 + Jet1.variable(0, 3)).c == (0, 1, Fraction(-1, 2), Fraction(1, 3))
    assert power(1 + t, Fraction(1, 2)).c == (1, Fraction(1, 2), Fraction(-1, 8))


@given(st.lists(small, min_size=1, max_size=6), rationals)
def test_jet_derivatives_of_polynomials_are_exact(coeffs, t0):
    t = Jet1.variable(t0, 5)
    p = sum((c * t ** k for k, c in enumerate(coeffs)), Jet1.constant(0, 5, t0))
    (T,) = gens("t")
    sym = sum((c * T ** k for k, c in enumerate(coeffs)), MultiPoly.const(0, ("t",)))
    for n in range(6):
        assert p.derivative(n) == sym.eval({"t": t0})
        sym = sym.diff("t")


def test_jet_division_needs_nonzero_constant_term():
    with pytest.raises((ZeroDivisionError, InvalidInput)):
        1 / Jet1.variable(0, 3)


def test_jet2_mixed_partials():
    x, y = Jet2.x((1, 2), 3), Jet2.y((1, 2), 3)
    f = x ** 2 * y ** 3 + exp(x * y)
    # d^2/dxdy = 6 x y^2 + e^{xy} (1 + x y) at (1, 2)
    import math
    assert abs(float(f.partial(1, 1)) - (24 + 3 * math.exp(2))) < 1e-12
    # d^3/dx^2 dy of x^2 y^3 is 6 y^2 = 24; of e^{xy} is e^{xy} y (2 + x y) = 8 e^2
    assert abs(float(f.partial(2, 1)) - (24 + 8 * math.exp(2))) < 1e-11


def test_jet2_polynomial_partials_exact():
    x, y = Jet2.x((Fraction(1, 2), 3), 4), Jet2.y((Fraction(1, 2), 3), 4)
    f = x ** 3 * y - 2 * x * y ** 2
    assert f.partial(1, 1) == 3 * Fraction(1, 4) - 4 * 3
    assert f.partial(2, 1) == 6 * Fraction(1, 2)
    assert f.partial(0, 2) == -4 * Fraction(1, 2)
