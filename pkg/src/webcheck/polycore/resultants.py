"""Elimination tools: Sylvester resultants, remainders, discriminants, gcds.

Sign convention: the Sylvester matrix of ``a`` (degree m) and ``b`` (degree n)
holds n shifted rows of ``a``'s coefficients followed by m shifted rows of
``b``'s, each in descending powers.  Its determinant is ``res(a, b)``.  The
sign only matters when comparing against an external normalisation; every
vanishing test is sign-blind.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Number

from ..errors import InvalidInput
from .multipoly import MultiPoly

__all__ = [
    "sylvester_matrix",
    "determinant",
    "sylvester_resultant",
    "pseudo_remainder",
    "euclid_remainder",
    "discriminant",
    "univariate_gcd",
    "poly_degree",
]


def _as_poly(p, var):
    if isinstance(p, MultiPoly):
        return p if var in p.vars else p.extend(p.vars + (var,))
    return MultiPoly.const(p, (var,))


def _simplify_entry(c):
    """Collapse constant polynomials to plain numbers so numeric matrices stay numeric."""
    if isinstance(c, MultiPoly) and c.is_constant():
        return c.constant_value()
    return c


def poly_degree(p, var):
    return _as_poly(p, var).degree(var)


def sylvester_matrix(a, b, var):
    a, b = _as_poly(a, var), _as_poly(b, var)
    if a.is_zero() or b.is_zero():
        raise InvalidInput("resultant of a zero polynomial")
    m, n = a.degree(var), b.degree(var)
    if m < 1 or n < 1:
        raise InvalidInput("both polynomials need positive degree in the eliminated variable")
    ca = [_simplify_entry(c.drop_unused()) for c in reversed(a.coeffs(var))]
    cb = [_simplify_entry(c.drop_unused()) for c in reversed(b.coeffs(var))]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + ca + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + cb + [0] * (size - n - 1 - i))
    return rows


def _exact_div(a, b):
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        if not isinstance(a, MultiPoly):
            a = MultiPoly.const(a, b.vars)
        return _simplify_entry(a.exact_div(b))
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        # exact over Q; integral only when the original entries were
        q = Fraction(a) / b
        return q.numerator if q.denominator == 1 else q
    return a / b


def _is_zero(x):
    return x.is_zero() if isinstance(x, MultiPoly) else x == 0


def _cofactor_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if _is_zero(m[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinant(matrix):
    """Exact determinant over an integral domain.

    Cofactor expansion up to 4x4, fraction-free Bareiss elimination above;
    entries may be ints, Fractions, floats or MultiPolys.
    """
    m = [list(r) for r in matrix]
    n = len(m)
    if any(len(r) != n for r in m):
        raise InvalidInput("determinant of a non-square matrix")
    if n == 0:
        return 1
    if n <= 4:
        return _simplify_entry(_cofactor_det(m))
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            piv = next((i for i in range(k + 1, n) if not _is_zero(m[i][k])), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return _simplify_entry(det if sign > 0 else -det)


def sylvester_resultant(a, b, var):
    """Resultant of ``a`` and ``b`` with respect to ``var``.

    Returns a number when the coefficients are numeric, else a MultiPoly in
    the remaining variables.
    """
    return determinant(sylvester_matrix(a, b, var))


def pseudo_remainder(a, b, var):
    """prem(a, b): remainder of lc(b)**(deg a - deg b + 1) * a divided by b."""
    a, b = _as_poly(a, var), _as_poly(b, var)
    if b.is_zero():
        raise InvalidInput("division by the zero polynomial")
    m, n = a.degree(var), b.degree(var)
    if m < n:
        return a
    x = MultiPoly.var(var, a.vars) if var in a.vars else MultiPoly.var(var)
    lb = b.leading_coeff(var)
    r = a
    for _ in range(m - n + 1):
        d = r.degree(var)
        if d < n:
            r = r * lb
            continue
        lr = r.leading_coeff(var)
        r = r * lb - lr * b * x ** (d - n)
    return r


def _numeric_coeffs(p, var):
    cs = []
    for c in p.coeffs(var):
        if not c.is_constant():
            return None
        cs.append(c.constant_value())
    return cs


def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _rem_numeric(a, b):
    # ascending coefficient lists over a field
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise InvalidInput("division by the zero polynomial")
    lb = b[-1]
    exact = all(isinstance(c, (int, Fraction)) for c in a + b)
    while len(a) >= len(b):
        q = Fraction(a[-1]) / lb if exact else a[-1] / lb
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        a = _trim(a) if exact else a
    return a


def euclid_remainder(a, b, var):
    """One Euclid step.

    Field remainder when both polynomials have numeric coefficients,
    pseudo-remainder (fraction free) when the coefficients are polynomials.
    """
    a, b = _as_poly(a, var), _as_poly(b, var)
    if b.is_zero():
        raise InvalidInput("division by the zero polynomial")
    if b.degree(var) < 1:
        raise InvalidInput("divisor must have positive degree")
    na, nb = _numeric_coeffs(a, var), _numeric_coeffs(b, var)
    if na is not None and nb is not None:
        return MultiPoly.from_coeffs(var, _rem_numeric(na, nb))
    return pseudo_remainder(a, b, var)


def discriminant(f, var):
    """(-1)**(n(n-1)/2) * res(f, df/dvar) / lc(f)."""
    f = _as_poly(f, var)
    n = f.degree(var)
    if n < 2:
        raise InvalidInput("discriminant needs degree >= 2")
    r = sylvester_resultant(f, f.diff(var), var)
    lc = _simplify_entry(f.leading_coeff(var).drop_unused())
    out = _exact_div(r, lc)
    if (n * (n - 1) // 2) % 2:
        out = -out
    return out


def univariate_gcd(a, b):
    """Monic gcd of two ascending coefficient lists over Q (exact) or floats (no clustering)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem_numeric(a, b)
        if b and not all(isinstance(c, (int, Fraction)) for c in b):
            break
    if not a:
        return []
    lead = a[-1]
    return [Fraction(c) / lead if isinstance(c, (int, Fraction)) else c / lead for c in a]
