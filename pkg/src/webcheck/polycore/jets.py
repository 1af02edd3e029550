"""Truncated Taylor jets in one and two variables.

Coefficients are stored divided by factorials, so a ``Jet1`` with
coefficients ``(c0, c1, c2)`` at ``t0`` stands for ``c0 + c1*e + c2*e**2``
with ``e = t - t0``.  The coefficient field is whatever the caller puts in:
``Fraction``/``int`` for exact work, ``float`` or ``mpmath`` numbers
otherwise.  Transcendental functions stay exact only at the points where the
value is rational (``exp(0)``, ``log(1)``, ``1**alpha``); elsewhere they fall
back to floating point.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

import mpmath

from ..errors import DomainError, InvalidInput

__all__ = ["Jet1", "Jet2", "exp", "log", "power", "is_exact"]


def is_exact(x):
    return isinstance(x, Rational)


def _is_mp(x):
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def _scalar_exp(x):
    if is_exact(x):
        return 1 if x == 0 else math.exp(x)
    if _is_mp(x):
        return mpmath.exp(x)
    if isinstance(x, complex):
        return cmath.exp(x)
    return math.exp(x)


def _scalar_log(x):
    if is_exact(x):
        if x == 1:
            return 0
        if x <= 0:
            raise DomainError("log of a non-positive number")
        return math.log(x)
    if _is_mp(x):
        return mpmath.log(x)
    if isinstance(x, complex):
        return cmath.log(x)
    if x <= 0:
        raise DomainError("log of a non-positive number")
    return math.log(x)


def _scalar_pow(x, alpha):
    if isinstance(alpha, int) or (is_exact(alpha) and alpha.denominator == 1):
        return x ** int(alpha)
    if is_exact(x):
        if x == 1:
            return 1
        if x <= 0:
            raise DomainError("fractional power of a non-positive number")
        return float(x) ** float(alpha)
    if _is_mp(x):
        return mpmath.power(x, alpha)
    if isinstance(x, complex):
        return x ** complex(alpha)
    if x <= 0:
        raise DomainError("fractional power of a non-positive number")
    return x ** float(alpha)


def _binomial(alpha, k):
    out = Fraction(1) if is_exact(alpha) else 1.0
    for i in range(k):
        out = out * (alpha - i) / (i + 1)
    return out


class _Series:
    """Arithmetic shared by the one- and two-variable jets."""

    __slots__ = ()

    # subclasses provide: order, value, _new(coeffs), _const(v), _add, _mul, _nilpotent()

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _Series):
            raise TypeError("cannot mix Jet1 and Jet2")
        return self._const(other)

    def __add__(self, other):
        return self._add(self._coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return self._scale(-1)

    def __sub__(self, other):
        return self._add(-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other)._add(-self)

    def __mul__(self, other):
        if isinstance(other, _Series):
            return self._mul(self._coerce(other))
        return self._scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Series):
            return self * self._coerce(other).reciprocal()
        return self._scale(1 / other if not is_exact(other) else Fraction(1) / other)

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k):
        if isinstance(k, int) or (is_exact(k) and k.denominator == 1):
            k = int(k)
            if k < 0:
                return (self ** (-k)).reciprocal()
            out = self._const(1)
            base = self
            while k:
                if k & 1:
                    out = out * base
                base = base * base
                k >>= 1
            return out
        return self.power(k)

    def _apply(self, taylor):
        """Compose with a scalar function given its Taylor coefficients at ``value``."""
        delta = self._nilpotent()
        out = self._const(taylor[-1])
        for a in reversed(taylor[:-1]):
            out = out * delta + a
        return out

    def reciprocal(self):
        a0 = self.value
        if a0 == 0:
            raise ZeroDivisionError("jet with zero constant term is not invertible")
        inv = Fraction(1) / a0 if is_exact(a0) else 1 / a0
        coeffs = [inv]
        for _ in range(self.order):
            coeffs.append(-coeffs[-1] * inv)
        return self._apply(coeffs)

    def exp(self):
        e0 = _scalar_exp(self.value)
        coeffs = [e0]
        for k in range(1, self.order + 1):
            coeffs.append(coeffs[-1] / k if not is_exact(coeffs[-1]) else Fraction(coeffs[-1]) / k)
        return self._apply(coeffs)

    def log(self):
        a0 = self.value
        if not isinstance(a0, complex) and not isinstance(a0, mpmath.mpc) and a0 <= 0:
            raise DomainError("log of a jet with non-positive constant term")
        inv = Fraction(1) / a0 if is_exact(a0) else 1 / a0
        coeffs = [_scalar_log(a0)]
        p = 1
        for k in range(1, self.order + 1):
            p = p * inv
            coeffs.append((-1) ** (k + 1) * p / k)
        return self._apply(coeffs)

    def power(self, alpha):
        a0 = self.value
        if isinstance(alpha, int) or (is_exact(alpha) and alpha.denominator == 1):
            return self ** int(alpha)
        if not isinstance(a0, (complex, mpmath.mpc)) and a0 <= 0:
            raise DomainError("fractional power of a jet with non-positive constant term")
        coeffs = []
        for k in range(self.order + 1):
            coeffs.append(_binomial(alpha, k) * _scalar_pow(a0, alpha - k))
        return self._apply(coeffs)

    def __float__(self):
        return float(self.value)


class Jet1(_Series):
    """Univariate truncated Taylor series ``sum c[k] (t - t0)**k``."""

    __slots__ = ("c", "t0")

    def __init__(self, coeffs, t0=0):
        self.c = tuple(coeffs)
        if not self.c:
            raise InvalidInput("a jet needs at least one coefficient")
        self.t0 = t0

    @classmethod
    def variable(cls, t0, order):
        return cls([t0, 1] + [0] * (order - 1), t0) if order >= 1 else cls([t0], t0)

    @classmethod
    def constant(cls, v, order, t0=0):
        return cls([v] + [0] * order, t0)

    @property
    def order(self):
        return len(self.c) - 1

    @property
    def value(self):
        return self.c[0]

    def derivative(self, k):
        """k-th derivative at ``t0``."""
        return self.c[k] * math.factorial(k)

    def derivatives(self):
        return [self.derivative(k) for k in range(len(self.c))]

    def truncate(self, order):
        return Jet1(self.c[: order + 1], self.t0)

    def d(self):
        """Derivative jet, one order lower."""
        if self.order == 0:
            raise InvalidInput("cannot differentiate an order-0 jet")
        return Jet1([k * self.c[k] for k in range(1, len(self.c))], self.t0)

    def integral(self, c0=0):
        """Antiderivative with constant ``c0``; gains one order."""
        return Jet1([c0] + [self.c[k] / (k + 1) if not is_exact(self.c[k]) else Fraction(self.c[k]) / (k + 1)
                            for k in range(len(self.c))], self.t0)

    def __call__(self, inner):
        """Evaluate this series at ``inner`` (a number or a Jet1 near ``t0``)."""
        if isinstance(inner, Jet1):
            delta = inner - self.t0
            out = Jet1.constant(self.c[-1], inner.order, inner.t0)
            for a in reversed(self.c[:-1]):
                out = out * delta + a
            return out
        e = inner - self.t0
        out = self.c[-1]
        for a in reversed(self.c[:-1]):
            out = out * e + a
        return out

    def _new(self, coeffs):
        return Jet1(coeffs, self.t0)

    def _const(self, v):
        return Jet1.constant(v, self.order, self.t0)

    def _nilpotent(self):
        return Jet1((0,) + self.c[1:], self.t0)

    def _scale(self, s):
        return Jet1([s * a for a in self.c], self.t0)

    def _add(self, other):
        n = min(len(self.c), len(other.c))
        return Jet1([self.c[k] + other.c[k] for k in range(n)], self.t0)

    def _mul(self, other):
        n = min(len(self.c), len(other.c))
        a, b = self.c, other.c
        return Jet1([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)], self.t0)

    def map(self, fn):
        return Jet1([fn(a) for a in self.c], self.t0)

    def __eq__(self, other):
        if isinstance(other, Jet1):
            return self.c == other.c and self.t0 == other.t0
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"Jet1({list(self.c)!r}, t0={self.t0!r})"


class Jet2(_Series):
    """Bivariate truncated Taylor series in ``(x - x0, y - y0)``, total degree <= order."""

    __slots__ = ("c", "base", "_order")

    def __init__(self, coeffs, base, order):
        # coeffs: dict (i, j) -> value; missing entries are zero
        self._order = order
        self.base = tuple(base)
        self.c = {k: v for k, v in coeffs.items() if k[0] + k[1] <= order}

    @classmethod
    def x(cls, base, order):
        c = {(0, 0): base[0]}
        if order >= 1:
            c[(1, 0)] = 1
        return cls(c, base, order)

    @classmethod
    def y(cls, base, order):
        c = {(0, 0): base[1]}
        if order >= 1:
            c[(0, 1)] = 1
        return cls(c, base, order)

    @classmethod
    def constant(cls, v, base, order):
        return cls({(0, 0): v}, base, order)

    @property
    def order(self):
        return self._order

    @property
    def value(self):
        return self.c.get((0, 0), 0)

    def coeff(self, i, j):
        return self.c.get((i, j), 0)

    def partial(self, i, j):
        """The mixed partial derivative d^(i+j) / dx^i dy^j at the base point."""
        return self.coeff(i, j) * math.factorial(i) * math.factorial(j)

    def dx(self):
        return Jet2({(i - 1, j): i * v for (i, j), v in self.c.items() if i > 0}, self.base, self._order - 1)

    def dy(self):
        return Jet2({(i, j - 1): j * v for (i, j), v in self.c.items() if j > 0}, self.base, self._order - 1)

    def truncate(self, order):
        return Jet2(self.c, self.base, order)

    def _const(self, v):
        return Jet2.constant(v, self.base, self._order)

    def _nilpotent(self):
        return Jet2({k: v for k, v in self.c.items() if k != (0, 0)}, self.base, self._order)

    def _scale(self, s):
        return Jet2({k: s * v for k, v in self.c.items()}, self.base, self._order)

    def _add(self, other):
        n = min(self._order, other._order)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return Jet2(out, self.base, n)

    def _mul(self, other):
        n = min(self._order, other._order)
        out = {}
        for (i1, j1), a in self.c.items():
            for (i2, j2), b in other.c.items():
                if i1 + i2 + j1 + j2 <= n:
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, 0) + a * b
        return Jet2(out, self.base, n)

    def __repr__(self):
        return f"Jet2({self.c!r}, base={self.base!r}, order={self._order})"


def exp(x):
    """``exp`` that accepts jets, exact rationals, floats, complex and mpmath numbers."""
    if isinstance(x, _Series):
        return x.exp()
    return _scalar_exp(x)


def log(x):
    if isinstance(x, _Series):
        return x.log()
    return _scalar_log(x)


def power(x, alpha):
    if isinstance(x, _Series):
        return x.power(alpha) if not isinstance(alpha, int) else x ** alpha
    return _scalar_pow(x, alpha)
