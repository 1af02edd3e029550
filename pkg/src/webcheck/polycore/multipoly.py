"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Number, Rational

from ..errors import InvalidInput

__all__ = ["MultiPoly", "gens"]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MultiPoly:
    """Polynomial over the rationals in an ordered tuple of named variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  Values are
    immutable; every operation returns a new polynomial.  Operands with
    different variable lists are aligned on the union of their variables.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise InvalidInput(f"exponent {e} does not match variables {self.vars}")
            if c != 0:
                clean[e] = _norm(c)
        self.terms = clean

    # -- construction -------------------------------------------------
    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables) if variables else (name,)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def const(cls, c, variables=()):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def from_coeffs(cls, var, coeffs, variables=None):
        """Build ``sum coeffs[k] * var**k``; coefficients may be numbers or MultiPolys."""
        x = cls.var(var, variables or (var,))
        out = cls.const(0, x.vars)
        for k in reversed(range(len(coeffs))):
            out = out * x + coeffs[k]
        return out

    # -- structure ----------------------------------------------------
    def _aligned(self, other):
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self, other
            union = self.vars + tuple(v for v in other.vars if v not in self.vars)
            return self.extend(union), other.extend(union)
        if isinstance(other, Number):
            return self, MultiPoly.const(other, self.vars)
        return NotImplemented, NotImplemented

    def extend(self, variables):
        variables = tuple(variables)
        if variables == self.vars:
            return self
        idx = [variables.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for k, i in enumerate(idx):
                ne[i] = e[k]
            terms[tuple(ne)] = c
        return MultiPoly(variables, terms)

    def drop_unused(self):
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        return MultiPoly([self.vars[i] for i in used],
                         {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise InvalidInput("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), 0)

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeff(self, var, k):
        """Coefficient of ``var**k`` as a polynomial in the same variables (var exponent zeroed)."""
        i = self.vars.index(var)
        return MultiPoly(self.vars, {e[:i] + (0,) + e[i + 1:]: c for e, c in self.terms.items() if e[i] == k})

    def coeffs(self, var):
        """Ascending coefficient list in ``var``."""
        if var not in self.vars:
            return [self]
        return [self.coeff(var, k) for k in range(self.degree(var) + 1)]

    def leading_coeff(self, var):
        return self.coeff(var, self.degree(var))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self._aligned(other)
        if a is NotImplemented:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        a, b = self._aligned(other)
        if a is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (Fraction(1) / other if isinstance(other, Rational) else 1 / other)
        return self.exact_div(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InvalidInput("polynomial powers must be non-negative integers")
        out = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Number):
            other = MultiPoly.const(other, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        p = self.drop_unused()
        return hash((p.vars, frozenset(p.terms.items())))

    # -- division -----------------------------------------------------
    def _lead(self):
        # lexicographic order on exponent tuples
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, divisor):
        """Multivariate division by leading terms (lex order). Returns (q, r)."""
        a, b = self._aligned(divisor)
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        eb, cb = b._lead()
        q_terms = {}
        r_terms = {}
        rem = dict(a.terms)
        b_items = list(b.terms.items())
        while rem:
            e = max(rem)
            c = rem[e]
            if all(x >= y for x, y in zip(e, eb)):
                qe = tuple(x - y for x, y in zip(e, eb))
                qc = Fraction(c) / cb if isinstance(c, int) and isinstance(cb, int) else c / cb
                qc = _norm(qc)
                q_terms[qe] = qc
                for e2, c2 in b_items:
                    k = tuple(x + y for x, y in zip(qe, e2))
                    v = rem.get(k, 0) - qc * c2
                    if v == 0:
                        rem.pop(k, None)
                    else:
                        rem[k] = v
            else:
                r_terms[e] = c
                del rem[e]
        return MultiPoly(a.vars, q_terms), MultiPoly(a.vars, r_terms)

    def exact_div(self, divisor):
        if isinstance(divisor, Number):
            return self / divisor
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InvalidInput("division is not exact")
        return q

    def divides_into(self, other):
        """True when ``self`` divides ``other`` exactly."""
        return other.divmod(self)[1].is_zero()

    # -- calculus and evaluation ---------------------------------------
    def diff(self, var):
        if var not in self.vars:
            return MultiPoly(self.vars, {})
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly(self.vars, terms)

    def eval(self, values):
        """Substitute ``values`` (name -> number, jet, or MultiPoly).

        Returns a number when every variable is substituted by a number,
        otherwise a MultiPoly in the remaining variables (plus any variables
        of substituted polynomials).
        """
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        subs = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        rest_vars = tuple(self.vars[i] for i in keep)
        powers = {}

        def pw(i, x, k):
            key = (i, k)
            if key not in powers:
                powers[key] = x ** k if k != 1 else x
            return powers[key]

        total = 0
        for e, c in self.terms.items():
            term = c
            for i, x in subs:
                if e[i]:
                    term = term * pw(i, x, e[i])
            if keep:
                mono = MultiPoly(rest_vars, {tuple(e[i] for i in keep): 1})
                term = mono * term if isinstance(term, Number) else term * mono
            total = total + term
        if keep and not isinstance(total, MultiPoly):
            total = MultiPoly.const(total, rest_vars)
        return total

    def __call__(self, **values):
        return self.eval(values)

    def map_coeffs(self, fn):
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def denominator_lcm(self):
        from math import lcm
        out = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                out = lcm(out, c.denominator)
        return out

    # -- display --------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def gens(*names):
    """Generators of the polynomial ring in ``names``, all sharing one variable tuple."""
    return tuple(MultiPoly.var(n, names) for n in names)
