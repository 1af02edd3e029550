"""Linear 3-webs with an infinitesimal projective symmetry.

The normal forms are triples of dual focal curves: a line ``y = p x + q`` is
the point ``(p, q)`` of the dual plane, and a vertical line ``x = -t`` is the
point ``(1, t, 0)`` on the dual line at infinity.  Lines are stored as rows
``(R, P, Q)`` of the equation ``R y = P x + Q``, so both kinds share one
representation; three lines are concurrent iff the 3x3 determinant of their
rows vanishes (the web equation).

Besides the normal forms this module carries their symmetry reductions
(invariants z, w and the curve ``f(z, w) = 0``), the Graf-Sauer cubic test
for flatness and a hexagon closure test for webs of curves.
"""
from __future__ import annotations

import cmath
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

import mpmath
import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, root_scalar

from .errors import (DegenerateWeb, DomainError, EmptyFamily, InvalidInput, InvalidParameters,
                     InvalidSampling, NoIntersection, NotProvided, SymmetryTangent)
from .expr import parse
from .polycore import Jet2, MultiPoly, discriminant
from .symweb import LineFamily, SymmetricWeb

__all__ = [
    "FocalCurve", "LinearWeb3", "NormalForm", "DualOperator", "JORDAN",
    "list_forms", "get_form", "EXTRA_IDS", "operator_from_matrix", "instantiate", "flat_configurations",
    "param_at", "slopes_at", "web_equation_residual", "solve_third",
    "reduction_residual", "reduce_parameters", "sample_web_solutions", "reduction_check",
    "reduction_polynomial", "branch_polynomial", "graf_sauer_test",
    "LineFoliation", "FieldFoliation", "hexagonality_closure", "hexagonality_exponent",
    "symmetry_characterization", "slope_fields", "find_base_points", "BasePoint", "normalized_profile", "envelope_distance", "tau_curves", "form_record",
    "export_json",
]

HEX_EXPONENT = 4.0
HEX_SLACK = 0.3


# -- dual operators --------------------------------------------------------------
@dataclass(frozen=True)
class DualOperator:
    """Vector field ``a(p, q) d/dp + b(p, q) d/dq`` with polynomial coefficients."""

    a: MultiPoly
    b: MultiPoly

    def __call__(self, p, q):
        env = {"p": p, "q": q}
        return _num(self.a.eval(env)), _num(self.b.eval(env))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __str__(self):
        return f"({self.a}) d/dp + ({self.b}) d/dq"


def _num(v):
    if isinstance(v, MultiPoly):
        return v.constant_value()
    return v


def operator_from_matrix(M):
    """Dual-plane field of the infinitesimal action ``l -> M l`` on lines ``l = (P, Q, R)``."""
    M = [[Fraction(c) if isinstance(c, (int, str)) else c for c in row] for row in M]
    p = MultiPoly.var("p", ("p", "q"))
    q = MultiPoly.var("q", ("p", "q"))
    a = (M[0][0] - M[2][2]) * p + M[0][1] * q + M[0][2] - M[2][0] * p * p - M[2][1] * p * q
    b = M[1][0] * p + (M[1][1] - M[2][2]) * q + M[1][2] - M[2][0] * p * q - M[2][1] * q * q
    return DualOperator(a + 0 * p, b + 0 * p)


JORDAN = {
    "Xi1": ((0, 1, 0), (0, 0, 1), (0, 0, 0)),
    "Xi21": ((0, 0, 0), (0, 0, 1), (0, 0, 0)),
    "Xi23": ((1, 1, 0), (0, 1, 0), (0, 0, -2)),
    "Xi32": ((1, 0, 0), (0, -1, 0), (0, 0, 0)),
}


def _symmetry_matrix(kind, beta=None):
    """A traceless matrix whose dual operator is the representative of its symmetry type."""
    third = Fraction(1, 3)
    if kind == "Xi1":
        return ((0, 0, 1), (1, 0, 0), (0, 0, 0))
    if kind == "Xi32":
        return JORDAN["Xi32"]
    if kind == "Xi23":
        return ((third, 0, 0), (1, third, 0), (0, 0, -2 * third))
    if kind == "Xi33":
        # (2a+b) p d/dp + (a+2b) q d/dq with 2a+b = 1, a+2b = beta
        a = (2 - beta) * third
        b = (2 * beta - 1) * third
        return ((a, 0, 0), (0, b, 0), (0, 0, -(a + b)))
    raise InvalidInput(f"unknown symmetry type {kind}")


# -- focal curves and webs ---------------------------------------------------------
def _fmt(v):
    """Number as text the expression parser reads back exactly."""
    if isinstance(v, float):
        v = Fraction(v).limit_denominator(10 ** 12) if v == round(v, 12) else Fraction(v)
    return f"({Fraction(v)})"


@dataclass(frozen=True)
class FocalCurve:
    """Dual focal curve: ``(p(t), q(t))`` or a piece of the line at infinity.

    On the line at infinity ``q_text`` gives the position: the line ``x = -q(t)``.
    """

    kind: str                    # "affine" | "line_at_infinity"
    p_text: str = "t"
    q_text: str = "t"
    window: tuple = (-10.0, 10.0)
    label: str = ""

    def __post_init__(self):
        if self.kind == "affine":
            object.__setattr__(self, "_p", parse(self.p_text))
            object.__setattr__(self, "_q", parse(self.q_text))
            object.__setattr__(self, "_dp", self._p.diff("t"))
            object.__setattr__(self, "_dq", self._q.diff("t"))
        elif self.kind == "line_at_infinity":
            object.__setattr__(self, "_q", parse(self.q_text))
            object.__setattr__(self, "_dq", self._q.diff("t"))
        else:
            raise InvalidInput(f"unknown focal curve kind {self.kind!r}")

    @property
    def at_infinity(self):
        return self.kind == "line_at_infinity"

    def pq(self, t):
        if self.at_infinity:
            raise DomainError("the line at infinity has no affine points")
        return self._p.evaluate({"t": t}), self._q.evaluate({"t": t})

    def row(self, t):
        """``(R, P, Q)`` of the line ``R y = P x + Q``."""
        if self.at_infinity:
            return 0, 1, t if self.q_text == "t" else self._q.evaluate({"t": t})
        p, q = self.pq(t)
        return 1, p, q

    def drow(self, t):
        if self.at_infinity:
            return 0, 0, 1 if self.q_text == "t" else self._dq.evaluate({"t": t})
        return 0, self._dp.evaluate({"t": t}), self._dq.evaluate({"t": t})

    def dual_point(self, t):
        """Homogeneous dual coordinates ``(P, Q, R)``."""
        R, P, Q = self.row(t)
        return P, Q, R

    def tangent(self, t):
        return self.drow(t)[1:]

    def text(self):
        if self.at_infinity:
            return "l_inf" if self.q_text == "t" else f"l_inf({self.q_text})"
        return f"({self.p_text}, {self.q_text})"


def _affine(p, q, window, label=""):
    return FocalCurve("affine", p, q, tuple(window), label)


def _linf(window=(-20.0, 20.0)):
    return FocalCurve("line_at_infinity", window=tuple(window), label="l_inf")


@dataclass(frozen=True)
class LinearWeb3:
    """Three focal curves with their symmetry (dual operator and point field)."""

    curves: tuple
    label: str = ""
    dual_operator: Optional[DualOperator] = None
    symmetry_text: tuple = ("0", "0")
    matrix: Optional[tuple] = None

    def __post_init__(self):
        if len(self.curves) != 3:
            raise InvalidInput("a 3-web needs three focal curves")
        nodes = tuple(parse(s, ("x", "y")) for s in self.symmetry_text)
        object.__setattr__(self, "_Y", nodes)

    def symmetry(self, x, y):
        env = {"x": x, "y": y}
        return tuple(n.evaluate(env) for n in self._Y)

    def rows(self, t1, t2, t3):
        return [c.row(t) for c, t in zip(self.curves, (t1, t2, t3))]

    def to_symmetric_web(self):
        """Adapter for Cartan normalisation."""
        fams = []
        for c in self.curves:
            fams.append(LineFamily(c.row, c.drow, lambda x, y, c=c: param_at(c, x, y)))
        return SymmetricWeb(tuple(fams), self.symmetry, self.label)


# -- normal forms ----------------------------------------------------------------
# curve templates; {c} is the constant, {beta} the exponent
_CURVES = {
    "par": ("t", "t^2/2+{c}", (-6.0, 6.0)),
    "hyp": ("t", "{c}/t", (0.2, 5.0)),
    "qzero": ("t", "0", (-6.0, 6.0)),
    "pzero": ("0", "t", (-20.0, 20.0)),
    "pzero_inv": ("0", "1/t", (0.1, 10.0)),
    "log": ("t", "t*(log(t)+{c})", (0.005, 30.0)),
    "pow": ("t", "{c}*t^{beta}", (0.1, 5.0)),
    "linf": (None, None, (-20.0, 20.0)),
}

# reduction parameter t_i as a function of the curve parameter, and back
_TAU = {
    "id": ("t", "t"),
    "log": ("log(t)", "exp(t)"),
    "log/beta": ("log(t)/{beta}", "exp({beta}*t)"),
    "log/(beta-1)": ("log(t)/({beta}-1)", "exp(({beta}-1)*t)"),
}


@dataclass(frozen=True)
class NormalForm:
    """One row of the classification together with its symmetry reduction."""

    id: str
    kind: str
    case: int
    params: tuple
    curves: tuple                 # (template, constant) per family
    tau: tuple                    # reduction parameter per family
    z_def: str
    w_def: str
    f: str
    branch: Optional[str] = None
    param_map: tuple = ()         # (name, factor): reduction value = factor * classification value
    windows: tuple = ()
    defaults: tuple = ()
    extra_exclusions: tuple = ()

    @property
    def arity(self):
        return len(self.params)

    @property
    def algebraic(self):
        return self.branch is not None


def _nf(id_, params, curves, tau, z, w, f, branch=None, **kw):
    kind, case = id_.split(":")
    return NormalForm(id_, kind, int(case), tuple(params), tuple(curves), tuple(tau), z, w, f,
                      branch, **kw)


_ADD = ("id", "id", "id")
_XI23_F1 = "w*exp(w)*(1-exp(z))+z*exp(z)*(exp(w)-1)"
_XI33_B = ("log", "log", "log")

FORMS = {nf.id: nf for nf in [
    _nf("Xi1:1", ["lambda"], [("par", "0"), ("par", "1"), ("par", "lambda")], _ADD,
        "t2-t1", "t3-t1", "z*w^2-(z^2+2)*w+2*lambda*z", "z^4+(4-8*lambda)*z^2+4",
        defaults=(("lambda", 2),)),
    _nf("Xi1:2", [], [("par", "0"), ("par", "0"), ("par", "1")], _ADD,
        "t2-t1", "t3-t1", "w^2-z*w+2", "z^2-8",
        windows=((-6.0, 0.0), (0.0, 6.0), (-6.0, 6.0))),
    _nf("Xi1:3", [], [("par", "0"), ("par", "1"), ("linf", None)], _ADD,
        "t3-t1", "t2-t1", "w^2-2*z*w+2", "z^2-2"),
    _nf("Xi32:1", ["lambda", "mu"], [("hyp", "1"), ("hyp", "lambda"), ("hyp", "mu")], _ADD,
        "t2/t1", "t3/t1", "(z-lambda)*w^2+(lambda-z^2)*w-mu*z*(z-1)",
        "z^4+4*mu*z^3-2*(lambda+2*mu*lambda+2*mu)*z^2+4*mu*lambda*z+lambda^2",
        param_map=(("mu", -1),), defaults=(("lambda", 2), ("mu", 3))),
    _nf("Xi32:2", ["lambda"], [("hyp", "1"), ("hyp", "1"), ("hyp", "lambda")], _ADD,
        "t2/t1", "t3/t1", "w^2-(z+1)*w-lambda*z", "z^2+(4*lambda+2)*z+1",
        param_map=(("lambda", -1),), windows=((0.2, 1.0), (1.0, 5.0), (0.2, 5.0)),
        defaults=(("lambda", 2),)),
    _nf("Xi32:3", ["lambda"], [("hyp", "1"), ("hyp", "lambda"), ("qzero", None)], _ADD,
        "t3/t1", "t2/t1", "w^2-w*z+lambda*(z-1)", "z^2-4*lambda*z+4*lambda",
        defaults=(("lambda", 2),)),
    _nf("Xi32:4", [], [("hyp", "1"), ("qzero", None), ("pzero_inv", None)], _ADD,
        "t3/t2", "t1/t2", "w^2-w+z", "1-4*z"),
    _nf("Xi32:5", ["lambda"], [("hyp", "1"), ("hyp", "lambda"), ("linf", None)], _ADD,
        "t3*t2^2", "t1/t2", "z*w^2+(lambda-z)*w-1", "z^2+(4-2*lambda)*z+lambda^2",
        defaults=(("lambda", 2),)),
    _nf("Xi32:6", [], [("hyp", "1"), ("qzero", None), ("linf", None)], _ADD,
        "t3*t2^2", "t1/t2", "z*w^2-z*w-1", "z+4"),
    _nf("Xi23:1", ["lambda", "mu"], [("log", "0"), ("log", "lambda"), ("log", "mu")],
        ("log", "log", "log"), "t1-t3", "t2-t3",
        _XI23_F1 + "+(lambda-mu)*exp(w)+mu*exp(z)-lambda*exp(z+w)",
        defaults=(("lambda", 2), ("mu", -1))),
    _nf("Xi23:2", ["lambda"], [("log", "0"), ("log", "0"), ("log", "lambda")],
        ("log", "log", "log"), "t1-t3", "t2-t3", _XI23_F1 + "+lambda*(exp(z)-exp(w))",
        windows=((0.005, 1.0), (1.0, 30.0), (0.005, 30.0)), defaults=(("lambda", 2),)),
    _nf("Xi23:3", [], [("log", "0"), ("log", "0"), ("log", "0")],
        ("log", "log", "log"), "t1-t3", "t2-t3", _XI23_F1,
        windows=((0.05, 0.5), (0.5, 2.0), (2.0, 8.0))),
    _nf("Xi23:4", ["lambda"], [("log", "0"), ("log", "lambda"), ("pzero", None)],
        ("log", "log", "log"), "t1-t3", "t2-t3", "exp(w)-exp(z)+(w-z+lambda)*exp(z+w)",
        defaults=(("lambda", 2),)),
    _nf("Xi23:5", [], [("log", "0"), ("log", "0"), ("pzero", None)],
        ("log", "log", "log"), "t1-t3", "t2-t3", "exp(w)-exp(z)+(w-z)*exp(z+w)",
        windows=((0.005, 1.0), (1.0, 30.0), (-20.0, 20.0))),
    _nf("Xi23:6", ["lambda"], [("log", "0"), ("log", "lambda"), ("linf", None)],
        ("log", "log", "id"), "t1-t3", "t2-t3", "w*exp(w)-z*exp(z)+lambda*exp(w)",
        defaults=(("lambda", 2),)),
    _nf("Xi23:7", [], [("log", "0"), ("log", "0"), ("linf", None)],
        ("log", "log", "id"), "t1-t3", "t2-t3", "w*exp(w)-z*exp(z)",
        windows=((0.005, 1.0), (1.0, 30.0), (-20.0, 20.0))),
    _nf("Xi23:8", [], [("log", "0"), ("pzero", None), ("linf", None)],
        ("log", "log", "id"), "t2-t3", "t1-t3", "w*exp(w)-exp(z)"),
    _nf("Xi33:1", ["beta", "lambda", "mu"], [("pow", "1"), ("pow", "lambda"), ("pow", "mu")],
        _XI33_B, "t2-t1", "t3-t1",
        "mu*exp(beta*w)*(exp(z)-1)-lambda*exp(beta*z)*(exp(w)-1)+exp(w)-exp(z)",
        defaults=(("beta", 4), ("lambda", 2), ("mu", 3))),
    _nf("Xi33:2", ["beta", "lambda"], [("pow", "1"), ("pow", "1"), ("pow", "lambda")],
        _XI33_B, "t2-t1", "t3-t1",
        "lambda*exp(beta*w)*(exp(z)-1)-exp(beta*z)*(exp(w)-1)+exp(w)-exp(z)",
        windows=((0.2, 1.0), (1.0, 3.0), (0.2, 3.0)), defaults=(("beta", 4), ("lambda", 2))),
    _nf("Xi33:3", ["beta"], [("pow", "1"), ("pow", "1"), ("pow", "1")],
        _XI33_B, "t2-t1", "t3-t1",
        "exp(beta*w)*(exp(z)-1)-exp(beta*z)*(exp(w)-1)+exp(w)-exp(z)",
        windows=((0.1, 0.7), (0.7, 1.5), (1.5, 5.0)), defaults=(("beta", 4),),
        extra_exclusions=(3, Fraction(1, 3), Fraction(3, 2), Fraction(2, 3))),
    _nf("Xi33:4", ["beta", "lambda"], [("pow", "1"), ("pow", "lambda"), ("qzero", None)],
        _XI33_B, "t1-t3", "t2-t3", "lambda*exp(beta*w)*(exp(z)-1)-exp(beta*z)*(exp(w)-1)",
        defaults=(("beta", 4), ("lambda", 2))),
    _nf("Xi33:5", ["beta"], [("pow", "1"), ("pow", "1"), ("qzero", None)],
        _XI33_B, "t1-t3", "t2-t3", "exp(beta*w)*(exp(z)-1)-exp(beta*z)*(exp(w)-1)",
        windows=((0.2, 1.0), (1.0, 3.0), (-6.0, 6.0)), defaults=(("beta", 4),)),
    _nf("Xi33:6", ["beta"], [("pow", "1"), ("qzero", None), ("pzero", None)],
        ("log", "log", "log/beta"), "t2-t3", "t1-t3", "exp(z)*(exp(beta*w)-1)+exp(w)",
        defaults=(("beta", 4),)),
    _nf("Xi33:7", ["beta", "lambda"], [("pow", "1"), ("pow", "lambda"), ("linf", None)],
        ("log", "log", "log/(beta-1)"), "t1-t3", "t2-t3",
        "lambda*exp(beta*w)-exp(w)+exp(z)-exp(beta*z)", defaults=(("beta", 4), ("lambda", 2))),
    _nf("Xi33:8", ["beta"], [("pow", "1"), ("pow", "1"), ("linf", None)],
        ("log", "log", "log/(beta-1)"), "t1-t3", "t2-t3", "exp(beta*w)-exp(w)+exp(z)-exp(beta*z)",
        windows=((0.2, 1.0), (1.0, 3.0), (-20.0, 20.0)), defaults=(("beta", 4),)),
    _nf("Xi33:9", ["beta"], [("pow", "1"), ("qzero", None), ("linf", None)],
        ("log", "log", "log/(beta-1)"), "t1-t2", "t3-t2",
        "exp((beta-1)*w)*(1-exp(z))+exp(beta*z)", defaults=(("beta", 4),)),
]}

_DUAL = {"Xi1": ("1", "p"), "Xi32": ("p", "-q"), "Xi23": ("p", "p+q"), "Xi33": ("p", "{beta}*q")}
_GEOMETRIC = {"Xi1": ("-1", "x"), "Xi32": ("-2*x", "-y"), "Xi23": ("-1", "y"),
              "Xi33": ("({beta}-1)*x", "{beta}*y")}
_BETA_EXCLUDED = (0, 1, -1, 2, Fraction(1, 2))
EXTRA_IDS = ("Xi1:hex", "flat:cusp", "flat:conic-secant", "flat:triangle", "flat:pencil")


def list_forms():
    """``(id, parameter names)`` for every row of the classification."""
    return [(nf.id, nf.params) for nf in FORMS.values()]


def get_form(form_id):
    try:
        return FORMS[form_id]
    except KeyError:
        raise InvalidInput(f"unknown normal form {form_id!r}") from None


def _params(nf, params):
    values = dict(nf.defaults)
    values.update(params or {})
    unknown = set(values) - set(nf.params)
    if unknown:
        raise InvalidParameters(f"{nf.id} has no parameter(s) {sorted(unknown)}")
    missing = [p for p in nf.params if p not in values]
    if missing:
        raise InvalidParameters(f"{nf.id} needs parameter(s) {missing}")
    out = {}
    for k, v in values.items():
        out[k] = Fraction(v) if isinstance(v, (int, str, Fraction)) else Fraction(v).limit_denominator(10 ** 12)
    _check_admissible(nf, out)
    return out


def _check_admissible(nf, v):
    lam, mu, beta = v.get("lambda"), v.get("mu"), v.get("beta")
    if beta is not None:
        if beta in _BETA_EXCLUDED:
            raise InvalidParameters(f"beta = {beta} is excluded (0, 1, -1, 2, 1/2 give flat webs)")
        if beta in nf.extra_exclusions:
            raise InvalidParameters(f"beta = {beta} makes the invariant curve a cubic in {nf.id}")
    # constants used by the normalised curves of the row
    fixed = {Fraction(c) for t, c in nf.curves if c not in (None, "lambda", "mu")}
    for name, val in (("lambda", lam), ("mu", mu)):
        if val is None:
            continue
        if val in fixed:
            raise InvalidParameters(f"{name} = {val} coincides with a normalised curve of {nf.id}")
        if nf.kind in ("Xi32", "Xi33") and val == 0:
            raise InvalidParameters(f"{name} = 0 degenerates the invariant curve of {nf.id}")
    if lam is not None and mu is not None and lam == mu:
        raise InvalidParameters("lambda and mu must be distinct")


def reduce_parameters(nf, values):
    """Parameters in the convention of the reduction table (sign flips for two rows)."""
    out = dict(values)
    for name, factor in nf.param_map:
        out[name] = factor * out[name]
    return out


def _render(template, values):
    text = template
    for k, v in values.items():
        text = text.replace("{" + k + "}", _fmt(v))
    return text


def _curve(template, const, window, values, label):
    p, q, default_window = _CURVES[template]
    if template == "linf":
        return _linf(window or default_window)
    c = values.get(const, None) if const in ("lambda", "mu") else (Fraction(const) if const else 0)
    q = _render(q, {"c": c, "beta": values.get("beta", 0)})
    return _affine(p, q, window or default_window, label)


def instantiate(form_id, params=None):
    """The linear web of a normal form at admissible parameter values.

    Besides the classification ids this accepts ``Xi1:hex`` (the hexagonal web of
    two arcs of 2q = p^2 and l_inf) and ``flat:<name>`` for the flat
    configurations.
    """
    extra = _extra_webs()
    if form_id in extra:
        if params:
            raise InvalidParameters(f"{form_id} has no parameters")
        return extra[form_id]
    nf = get_form(form_id)
    values = _params(nf, params)
    curves = []
    for k, (tmpl, const) in enumerate(nf.curves):
        window = nf.windows[k] if nf.windows else None
        curves.append(_curve(tmpl, const, window, values, f"family {k + 1}"))
    beta = values.get("beta", 0)
    dual = [_render(s, {"beta": beta}) for s in _DUAL[nf.kind]]
    op = _dual_from_text(dual)
    geo = tuple(_render(s, {"beta": beta}) for s in _GEOMETRIC[nf.kind])
    matrix = _symmetry_matrix(nf.kind, beta)
    web = LinearWeb3(tuple(curves), nf.id, op, geo, matrix)
    object.__setattr__(web, "form", nf)
    object.__setattr__(web, "values", values)
    return web


def _dual_from_text(texts):
    gens = {"p": MultiPoly.var("p", ("p", "q")), "q": MultiPoly.var("q", ("p", "q"))}
    a, b = (parse(s, ("p", "q")).evaluate(gens) for s in texts)
    zero = 0 * gens["p"]
    return DualOperator(zero + a, zero + b)


def _extra_webs():
    out = {}
    for web in flat_configurations().values():
        object.__setattr__(web, "form", None)
        object.__setattr__(web, "values", {})
        out[web.label] = web
    return out


def flat_configurations():
    """The five flat linear webs with a projective symmetry, plus the parabola-tangent web.

    Keys: ``cusp`` (cuspidal cubic p = q^3), ``conic-secant`` (pq = 1 and
    l_inf), ``conic-tangent`` (2q = p^2 and l_inf; the hexagonal web with
    families y = p x + p^2/2 twice and x + p = 0), ``triangle`` (p = 0, q = 0,
    l_inf) and ``pencil`` (p = 0, 1, -1).
    """
    cusp = [_affine("t^3", "t", w) for w in ((-2.0, -0.5), (-0.5, 0.5), (0.5, 2.0))]
    conic = [_affine("t", "1/t", w) for w in ((0.2, 1.0), (1.0, 5.0))]
    para = [_affine("t", "t^2/2", w) for w in ((-6.0, 0.0), (0.0, 6.0))]
    return {
        "cusp": LinearWeb3(tuple(cusp), "flat:cusp", _dual_from_text(("3*p", "q")), ("-2*x", "y")),
        "conic-secant": LinearWeb3(tuple(conic) + (_linf(),), "flat:conic-secant",
                                   _dual_from_text(("p", "-q")), ("-2*x", "-y")),
        "conic-tangent": LinearWeb3(tuple(para) + (_linf(),), "Xi1:hex",
                                    _dual_from_text(("1", "p")), ("-1", "x")),
        "triangle": LinearWeb3((_affine("0", "t", (-20.0, 20.0)), _affine("t", "0", (-6.0, 6.0)),
                                _linf()), "flat:triangle", _dual_from_text(("2*p", "q")), ("-x", "y")),
        "pencil": LinearWeb3(tuple(_affine(c, "t", (-20.0, 20.0)) for c in ("0", "1", "-1")),
                             "flat:pencil", _dual_from_text(("0", "1")), ("0", "1")),
    }


# -- incidence -------------------------------------------------------------------
_GRID = 600


def _g(curve, t, x, y):
    R, P, Q = curve.row(t)
    return R * y - P * x - Q


def param_at(curve, x, y, window=None):
    """Parameters of the lines of ``curve`` through ``(x, y)`` inside the window."""
    lo, hi = window or curve.window
    mp = isinstance(x, mpmath.mpf) or isinstance(y, mpmath.mpf)
    xf, yf = float(x), float(y)
    if curve.at_infinity:
        t = -x
        return [t] if lo <= float(t) <= hi else []
    ts = np.linspace(lo, hi, _GRID + 1)
    vals = []
    for t in ts:
        try:
            vals.append(float(_g(curve, float(t), xf, yf)))
        except (ZeroDivisionError, ValueError):
            vals.append(math.nan)
    roots = []
    for i in range(_GRID):
        a, b = vals[i], vals[i + 1]
        if math.isnan(a) or math.isnan(b):
            continue
        if a == 0:
            roots.append(float(ts[i]))
        elif a * b < 0:
            roots.append(brentq(lambda t: float(_g(curve, t, xf, yf)), ts[i], ts[i + 1],
                                xtol=1e-15, rtol=4 * np.finfo(float).eps))
    if vals and vals[-1] == 0:
        roots.append(float(ts[-1]))
    if mp:
        roots = [mpmath.findroot(lambda t: _g(curve, t, x, y), mpmath.mpf(r)) for r in roots]
    return roots


def complex_param_at(curve, x, y, starts=24, seed=0):
    """Real and complex parameters of the lines of ``curve`` through ``(x, y)``.

    Newton runs from a grid over the window shifted off the real axis; roots
    are kept when their real part lies in the window.
    """
    lo, hi = curve.window
    if curve.at_infinity:
        return [-x]
    rng = np.random.default_rng(seed)
    width = hi - lo
    found = []
    for k in range(starts):
        re = lo + width * (k + 0.5) / starts
        im = rng.uniform(-0.5, 0.5) * min(width, 8.0)
        try:
            r = complex(mpmath.findroot(lambda u: _g(curve, u, x, y), mpmath.mpc(re, im)))
        except (ValueError, ZeroDivisionError, OverflowError, TypeError):
            continue
        if not lo <= r.real <= hi or abs(_g(curve, r, x, y)) > 1e-12:
            continue
        if all(abs(r - f) > 1e-8 * (1 + abs(r)) for f in found):
            found.append(r)
    return sorted(found, key=lambda v: (abs(v.imag), v.real))


def slopes_at(web, point):
    """``(family, t, slope)`` for every line of the web through ``point``; vertical lines have slope inf."""
    x, y = point
    out = []
    for k, c in enumerate(web.curves):
        for t in param_at(c, x, y):
            R, P, _ = c.row(t)
            out.append((k, t, math.inf if R == 0 else P / R))
    if not out:
        raise EmptyFamily("no line of the web passes through the point")
    for k in range(3):
        if not any(f == k for f, _, _ in out):
            raise EmptyFamily(f"no line of family {k + 1} through the point")
    return out


def _det3(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def web_equation_residual(web, t1, t2, t3):
    """Determinant of the three line rows; zero iff the lines are concurrent."""
    return _det3(web.rows(t1, t2, t3))


def _meet(r1, r2):
    R1, P1, Q1 = r1
    R2, P2, Q2 = r2
    det = R1 * P2 - R2 * P1
    if det == 0:
        raise NoIntersection("the two lines are parallel")
    return (R2 * Q1 - R1 * Q2) / det, (P2 * Q1 - P1 * Q2) / det


def solve_third(web, k, fixed):
    """Parameters of family ``k`` (0-based) through the meeting point of the other two lines.

    ``fixed`` maps the other two family indices to their parameters.
    Returns ``(t, multiplicity)`` pairs; multiplicity 2 marks a tangency.
    """
    (i, ti), (j, tj) = sorted(fixed.items())
    x, y = _meet(web.curves[i].row(ti), web.curves[j].row(tj))
    c = web.curves[k]
    out = []
    for t in param_at(c, x, y):
        d = c.drow(t)
        slope = d[0] * y - d[1] * x - d[2]
        scale = 1 + abs(x) + abs(y)
        out.append((t, 2 if abs(slope) < 1e-9 * scale else 1))
    return out


# -- reductions --------------------------------------------------------------------
def _node(text, names):
    return parse(text, names)


def _red_env(nf, values):
    return {k: v for k, v in reduce_parameters(nf, values).items()}


def reduction_residual(form_id, z, w, params=None):
    """``f(z, w)`` of the row, with parameters in the classification convention."""
    nf = get_form(form_id)
    values = _params(nf, params)
    env = _red_env(nf, values)
    env.update(z=z, w=w)
    try:
        return parse(nf.f, ("z", "w", "lambda", "mu", "beta")).evaluate(env)
    except ZeroDivisionError as exc:
        raise DomainError(f"f has a pole at z={z}, w={w}") from exc


def _top_terms(node):
    from .expr import Add, Neg, Sub
    if isinstance(node, Add):
        return _top_terms(node.a) + _top_terms(node.b)
    if isinstance(node, Sub):
        return _top_terms(node.a) + [Neg(node.b)]
    return [node]


def _tau_nodes(nf, values):
    beta = values.get("beta", 0)
    out = []
    for key in nf.tau:
        fwd, inv = _TAU[key]
        out.append((parse(_render(fwd, {"beta": beta})), parse(_render(inv, {"beta": beta}))))
    return out


def _invariants(nf, taus):
    env = {"t1": taus[0], "t2": taus[1], "t3": taus[2]}
    names = ("t1", "t2", "t3")
    return parse(nf.z_def, names).evaluate(env), parse(nf.w_def, names).evaluate(env)


@dataclass(frozen=True)
class ReductionSample:
    params: tuple        # curve parameters (t1, t2, t3)
    taus: tuple          # reduction parameters
    z: complex
    w: complex
    residual: float
    scale: float
    real: bool
    point: tuple = ()


def _same_line(r1, r2, tol=1e-9):
    a = np.array([complex(v) for v in r1])
    b = np.array([complex(v) for v in r2])
    return np.linalg.norm(np.cross(a, b)) <= tol * (np.linalg.norm(a) * np.linalg.norm(b))


def _eval_f(nf, values, z, w):
    env = _red_env(nf, values)
    env.update(z=z, w=w)
    node = parse(nf.f, ("z", "w", "lambda", "mu", "beta"))
    terms = [complex(t.evaluate(env)) for t in _top_terms(node)]
    return abs(sum(terms)), max(abs(t) for t in terms)


def sample_web_solutions(web, count=20, seed=0, max_tries=4000):
    """Concurrent triples of lines, real ones from the windows first, then complex ones.

    Complex triples are found in the reduction parameters (``p = exp(t)``
    for logarithmic rows) so every sheet of the multivalued curves is
    reachable; triples in which two lines coincide are discarded.
    """
    nf = web.form
    values = web.values
    rng = random.Random(seed)
    taus = _tau_nodes(nf, values)
    out = []
    c1, c2, c3 = web.curves
    for _ in range(max_tries):
        if len(out) >= count:
            break
        t1 = _inner(rng, c1.window)
        t2 = _inner(rng, c2.window)
        try:
            x, y = _meet(c1.row(t1), c2.row(t2))
        except (NoIntersection, ZeroDivisionError):
            continue
        for t3 in param_at(c3, x, y):
            rows = web.rows(t1, t2, t3)
            if _same_line(rows[2], rows[0]) or _same_line(rows[2], rows[1]) or _same_line(rows[0], rows[1]):
                continue
            ts = (t1, t2, t3)
            tau = tuple(n[0].evaluate({"t": complex(t)}) for n, t in zip(taus, ts))
            z, w = _invariants(nf, tau)
            r, s = _eval_f(nf, values, z, w)
            out.append(ReductionSample(ts, tau, z, w, r, s, True, (x, y)))
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        s = _complex_sample(web, taus, rng)
        if s is not None:
            out.append(s)
    if len(out) < count:
        raise InvalidSampling(f"only {len(out)} web-equation solutions found for {web.label}")
    return out[:count]


def _log_window(window):
    lo, hi = window
    return lo > 0 and hi / lo > 10


def _inner(rng, window, margin=0.05):
    """Uniform draw away from the window ends; log-uniform on wide positive windows."""
    lo, hi = window
    if _log_window(window):
        a, b = math.log(lo), math.log(hi)
        pad = margin * (b - a)
        return math.exp(rng.uniform(a + pad, b - pad))
    pad = margin * (hi - lo)
    return rng.uniform(lo + pad, hi - pad)


# focal curves written in the reduction parameter; these are entire in t, so
# points of other sheets of log are distinct lines rather than copies
_TAU_CURVES = {
    ("log", "log"): ("exp(t)", "exp(t)*(t+{c})"),
    ("pow", "log"): ("exp(t)", "{c}*exp({beta}*t)"),
    ("qzero", "log"): ("exp(t)", "0"),
    ("pzero", "log"): ("0", "exp(t)"),
    ("pzero", "log/beta"): ("0", "exp({beta}*t)"),
    ("linf", "log/(beta-1)"): (None, "exp(({beta}-1)*t)"),
}


def tau_curves(web):
    """The focal curves of a catalog web parametrized by the reduction parameters."""
    nf, values = web.form, web.values
    beta = values.get("beta", 0)
    out = []
    for (tmpl, const), key, curve in zip(nf.curves, nf.tau, web.curves):
        if key == "id":
            out.append(curve)
            continue
        p, q = _TAU_CURVES[(tmpl, key)]
        c = values.get(const) if const in ("lambda", "mu") else (Fraction(const) if const else 0)
        q = _render(q, {"c": c, "beta": beta})
        if p is None:
            out.append(FocalCurve("line_at_infinity", q_text=q, label=curve.label))
        else:
            out.append(FocalCurve("affine", p, q, label=curve.label))
    return tuple(out)


def _complex_sample(web, taus, rng):
    nf, values = web.form, web.values
    rows_of = [c.row for c in tau_curves(web)]
    seeds = []
    for k, c in enumerate(web.curves):
        lo, hi = c.window
        t = _inner(rng, c.window)
        fwd = taus[k][0]
        base = complex(fwd.evaluate({"t": complex(t)}))
        seeds.append(base + complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)))
    tau1, tau2 = seeds[0], seeds[1]
    try:
        x, y = _meet(rows_of[0](tau1), rows_of[1](tau2))
    except (NoIntersection, ZeroDivisionError):
        return None

    # lines of the same focal curve are trivial solutions; divide them out
    trivial = [t for k, t in ((0, tau1), (1, tau2))
               if web.curves[k].text() == web.curves[2].text() and nf.tau[k] == nf.tau[2]]

    def g(tau):
        R, P, Q = rows_of[2](tau)
        out = R * y - P * x - Q
        for t in trivial:
            out = out / (tau - t)
        return out

    # other branches of the third family sit a few multiples of 2 pi i away
    starts = [seeds[2]] + [seeds[2] + complex(rng.uniform(-2, 2), rng.uniform(-8, 8)) for _ in range(11)]
    tau3 = None
    for start in starts:
        try:
            cand = complex(mpmath.findroot(lambda u: g(complex(u)), mpmath.mpc(start)))
        except (ValueError, ZeroDivisionError, OverflowError, TypeError):
            continue
        r3 = rows_of[2](cand)
        if not (_same_line(r3, rows_of[0](tau1)) or _same_line(r3, rows_of[1](tau2))):
            tau3 = cand
            break
    if tau3 is None:
        return None
    rows = [rows_of[0](tau1), rows_of[1](tau2), rows_of[2](tau3)]
    if abs(_det3(rows)) > 1e-9 * (1 + max(abs(complex(v)) for r in rows for v in r)) ** 3:
        return None
    if _same_line(rows[2], rows[0]) or _same_line(rows[2], rows[1]) or _same_line(rows[0], rows[1]):
        return None
    z, w = _invariants(nf, (tau1, tau2, tau3))
    r, s = _eval_f(nf, values, z, w)
    return ReductionSample((None, None, None), (tau1, tau2, tau3), z, w, r, s, False, (x, y))


def reduction_check(form_id, params=None, count=20, seed=0):
    """Worst ``|f(z, w)| / scale`` over ``count`` web-equation solutions."""
    web = instantiate(form_id, params)
    samples = sample_web_solutions(web, count, seed)
    worst = max(s.residual / s.scale if s.scale else s.residual for s in samples)
    return worst, samples


def reduction_polynomial(form_id, params=None):
    """``f`` as a polynomial in z, w (algebraic rows only), reduction-table parameters."""
    nf = get_form(form_id)
    if not nf.algebraic:
        raise NotProvided(f"{form_id} has a transcendental reduction")
    values = _params(nf, params)
    env = _red_env(nf, values)
    env["z"] = MultiPoly.var("z", ("z", "w"))
    env["w"] = MultiPoly.var("w", ("z", "w"))
    return parse(nf.f, ("z", "w", "lambda", "mu", "beta")).evaluate(env)


def branch_polynomial(form_id, params=None):
    """The printed branch-point polynomial, as a MultiPoly in ``z_b``."""
    nf = get_form(form_id)
    if nf.branch is None:
        raise NotProvided(f"no branch-point data for {form_id}")
    values = _params(nf, params)
    env = _red_env(nf, values)
    env["z"] = MultiPoly.var("z_b")
    out = parse(nf.branch, ("z", "lambda", "mu", "beta")).evaluate(env)
    return out if isinstance(out, MultiPoly) else MultiPoly.const(out, ("z_b",))


def branch_discriminant(form_id, params=None):
    """``discriminant(f, w)`` of an algebraic row, as a MultiPoly in ``z``."""
    return discriminant(reduction_polynomial(form_id, params), "w")


# -- Graf-Sauer ------------------------------------------------------------------
def _cubic_monomials(P, Q, R):
    return [P ** 3, P ** 2 * Q, P ** 2 * R, P * Q ** 2, P * Q * R, P * R ** 2,
            Q ** 3, Q ** 2 * R, Q * R ** 2, R ** 3]


@dataclass(frozen=True)
class GrafSauerResult:
    min_singular: float
    rank: int
    is_flat: bool


def graf_sauer_test(web, samples_per_curve=8, ratio=1e-8):
    """Do the three focal arcs lie on one cubic?  Numerical rank of cubic monomials."""
    if samples_per_curve < 4:
        raise InvalidSampling("need at least 4 samples per curve")
    rows, points = [], []
    for c in web.curves:
        lo, hi = c.window
        pad = 0.05 * (hi - lo)
        for t in np.linspace(lo + pad, hi - pad, samples_per_curve):
            P, Q, R = (float(v) for v in c.dual_point(float(t)))
            n = math.sqrt(P * P + Q * Q + R * R)
            pt = (P / n, Q / n, R / n)
            if any(max(abs(a - b) for a, b in zip(pt, o)) < 1e-12 or
                   max(abs(a + b) for a, b in zip(pt, o)) < 1e-12 for o in points):
                raise InvalidSampling("repeated dual point")
            points.append(pt)
            rows.append(_cubic_monomials(*pt))
    if len(rows) < 12:
        raise InvalidSampling("need at least 12 dual points")
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    rank = int(np.sum(sv >= ratio * sv[0]))
    return GrafSauerResult(float(sv[-1]), rank, rank <= 9)


# -- foliations and hexagons -------------------------------------------------------
class LineFoliation:
    """Leaves are the lines of one focal curve; the leaf parameter is the first integral."""

    def __init__(self, curve, t_ref):
        self.curve = curve
        self.t_ref = t_ref if isinstance(t_ref, complex) else float(t_ref)

    def integral(self, P):
        x, y = P
        t = self.t_ref
        for _ in range(60):
            R, Pp, Q = self.curve.row(t)
            dR, dP, dQ = self.curve.drow(t)
            g = R * y - Pp * x - Q
            dg = dR * y - dP * x - dQ
            step = g / dg
            t -= step
            if abs(step) <= 1e-16 * (1 + abs(t)):
                break
        return t

    def direction(self, P):
        R, Pp, _ = self.curve.row(self.integral(P))
        n = math.hypot(R, Pp)
        return R / n, Pp / n

    def walk(self, P, s):
        d = self.direction(P)
        return P[0] + s * d[0], P[1] + s * d[1]


class FieldFoliation:
    """Leaves are integral curves of a planar vector field.

    The first integral is the coordinate at which the leaf through a point
    crosses the normal line of the field at ``origin``.
    """

    def __init__(self, field_fn, origin, rtol=1e-12, atol=1e-15):
        self.field_fn = field_fn
        self.origin = tuple(float(v) for v in origin)
        self.rtol, self.atol = rtol, atol
        d = self._unit(self.origin)
        self.n = d                       # crossing line is {P : n . (P - O) = 0}
        self.m = (-d[1], d[0])

    def _unit(self, P):
        a, b = self.field_fn(*P)
        a, b = float(a), float(b)
        n = math.hypot(a, b)
        if n == 0:
            raise SymmetryTangent("the vector field vanishes")
        return a / n, b / n

    def direction(self, P):
        return self._unit(P)

    def walk(self, P, s):
        if s == 0:
            return tuple(P)
        sol = solve_ivp(lambda _, u: self._unit(u), (0.0, s), list(P), method="DOP853",
                        rtol=self.rtol, atol=self.atol)
        return sol.y[0, -1], sol.y[1, -1]

    def integral(self, P):
        O = self.origin
        h = self.n[0] * (P[0] - O[0]) + self.n[1] * (P[1] - O[1])
        if h == 0:
            Q = P
        else:
            event = lambda _, u: self.n[0] * (u[0] - O[0]) + self.n[1] * (u[1] - O[1])
            event.terminal = True
            span = -4 * h - math.copysign(1e-3, h)
            sol = solve_ivp(lambda _, u: self._unit(u), (0.0, span), list(P), method="DOP853",
                            rtol=self.rtol, atol=self.atol, events=event, dense_output=True)
            if not sol.t_events[0].size:
                raise DomainError("leaf does not return to the reference transversal")
            Q = sol.y_events[0][0]
        return self.m[0] * (Q[0] - O[0]) + self.m[1] * (Q[1] - O[1])


def _foliations(web_or_list, point):
    if isinstance(web_or_list, LinearWeb3):
        out = []
        for c in web_or_list.curves:
            ts = param_at(c, *point)
            if not ts:
                raise EmptyFamily(f"no line of {c.text()} through {point}")
            out.append(LineFoliation(c, ts[0]))
        return out
    out = []
    for f in web_or_list:
        if isinstance(f, (LineFoliation, FieldFoliation)):
            out.append(f)
        else:
            out.append(FieldFoliation(_as_field(f), point))
    return out


def _as_field(f):
    def field_fn(x, y):
        v = f(x, y)
        return v if isinstance(v, tuple) else (1.0, v)
    return field_fn


def _move(P, a, b, level, r):
    """Follow a leaf of ``a`` from P until the first integral of ``b`` equals ``level``."""
    phi = lambda s: b.integral(a.walk(P, s)) - level
    with warnings.catch_warnings():
        # the secant step stalling at rounding level is the expected exit
        warnings.filterwarnings("ignore", "Tolerance of", RuntimeWarning)
        sol = root_scalar(phi, x0=0.0, x1=0.1 * r, method="secant", xtol=1e-16, rtol=1e-15, maxiter=60)
    return a.walk(P, sol.root)


def hexagonality_closure(web, point, radius, choice=(0, 0, 0)):
    """Gap of the hexagonal closure figure around ``point``.

    Start on the leaf of family 1 at distance ``radius`` and alternate
    moves along families 2, 1, 3, 2, 1, 3 between the three leaves through
    ``point``; the result is the distance between start and end.  Webs of
    lines may be passed directly; otherwise give three slope fields,
    direction fields or foliation objects.
    """
    point = tuple(float(v) for v in point)
    fol = _foliations(web, point)
    for i in range(3):
        for j in range(i + 1, 3):
            di, dj = fol[i].direction(point), fol[j].direction(point)
            if abs(di[0] * dj[1] - di[1] * dj[0]) < 1e-9:
                raise DegenerateWeb(f"directions {i + 1} and {j + 1} coincide")
    levels = [f.integral(point) for f in fol]
    A = fol[0].walk(point, radius)
    P = A
    for a, b in ((1, 2), (0, 1), (2, 0), (1, 2), (0, 1), (2, 0)):
        P = _move(P, fol[a], fol[b], levels[b], radius)
    return math.hypot(P[0] - A[0], P[1] - A[1])


@dataclass(frozen=True)
class HexagonReport:
    defects: tuple
    radii: tuple
    exponent: float
    hexagonal: bool


def hexagonality_exponent(web, point, radius=0.05, floor=1e-9):
    """Scaling exponent of the closure gap over radii r, r/2, r/4.

    Gaps below ``floor * radius`` are rounding noise; a web whose gaps are
    all noise counts as hexagonal with exponent ``inf``.
    """
    radii = (radius, radius / 2, radius / 4)
    d = tuple(hexagonality_closure(web, point, r) for r in radii)
    if all(di <= floor * r for di, r in zip(d, radii)):
        exponent = math.inf
    elif d[2] <= floor * radii[2]:
        exponent = math.log2(d[0] / max(d[1], 1e-300))
    else:
        exponent = math.log2(d[1] / d[2])
    return HexagonReport(d, radii, exponent, exponent >= HEX_EXPONENT - HEX_SLACK)


def symmetry_characterization(web, Y, point, radius=0.05):
    """Hexagon tests of the webs {Y, v2, v3}, {v1, Y, v3}, {v1, v2, Y}.

    A web has ``Y`` as an infinitesimal symmetry exactly when all three are
    flat.
    """
    point = tuple(float(v) for v in point)
    fol = _foliations(web, point)
    yfol = FieldFoliation(_as_field(Y), point)
    ydir = yfol.direction(point)
    for k, f in enumerate(fol):
        d = f.direction(point)
        if abs(d[0] * ydir[1] - d[1] * ydir[0]) < 1e-9:
            raise SymmetryTangent(f"Y is tangent to family {k + 1}")
    out = []
    for k in range(3):
        trio = list(fol)
        trio[k] = yfol
        out.append(hexagonality_exponent(trio, point, radius))
    return tuple(out)


# -- slope fields for jet calculus -------------------------------------------------
def slope_fields(web, point, choice=(0, 0, 0), angle=None, params=None, curves=None):
    """Slope fields of the three families in coordinates rotated by ``angle``.

    Returns ``(fields, uv_point)``: each field maps ``(u, v)`` (numbers or
    Jet2) to the slope ``dv/du`` of the family line through that point.
    The default angle is 0 unless a family is vertical.  ``params`` (with
    the matching ``curves``) pins the line of each family at ``point``;
    otherwise ``choice`` indexes the sorted real parameters there.
    """
    curves = tuple(curves or web.curves)
    if angle is None:
        angle = 0.4 if any(c.at_infinity for c in curves) else 0.0
    c, s = math.cos(angle), math.sin(angle)
    if params is None:
        params = []
        for k, cur in enumerate(curves):
            ts = sorted(param_at(cur, *point))
            if not ts:
                raise EmptyFamily(f"no line of family {k + 1} through {point}")
            params.append(ts[min(choice[k], len(ts) - 1)])

    def make(cur, t_ref):
        def lam(u, v):
            x = c * u - s * v
            y = s * u + c * v
            t = _param_jet(cur, t_ref, x, y)
            R, P, _ = cur.row(t)
            du = c * R + s * P
            dv = -s * R + c * P
            return dv / du
        return lam

    fields = [make(cur, t) for cur, t in zip(curves, params)]
    x0, y0 = point
    uv = (c * x0 + s * y0, -s * x0 + c * y0)
    return fields, uv


def _param_jet(curve, t_ref, x, y):
    xv = x.value if isinstance(x, Jet2) else x
    yv = y.value if isinstance(y, Jet2) else y
    t0 = LineFoliation(curve, t_ref).integral((xv, yv))
    if not isinstance(x, Jet2):
        return t0
    dR, dP, dQ = curve.drow(t0)
    g0 = dR * yv - dP * xv - dQ
    t = Jet2.constant(t0, x.base, x.order)
    for _ in range(x.order + 1):
        R, P, Q = curve.row(t)
        t = t - (R * y - P * x - Q) / g0
    return t


# -- base points -------------------------------------------------------------------
class BasePoint(NamedTuple):
    """A point with one line of each family through it.

    ``params`` refer to ``curves``; for complex points these are the curves
    in reduction parameters.
    """

    x: object
    y: object
    params: tuple
    curves: tuple


def find_base_points(web, count=1, seed=0, max_tries=2000, margin=0.05, allow_complex=True, box=20.0,
                     envelope=0.5, strict=True):
    """Base points where the three lines are pairwise transverse and transverse to the symmetry.

    Real points inside the windows come first; when there are too few
    (three arcs of one convex curve have no real concurrent lines at all)
    the rest are complex points, if ``allow_complex`` is set.  With
    ``strict`` unset a shorter nonempty list is returned instead of raising.
    """
    rng = random.Random(seed)
    out = []
    pairs = ((0, 1, 2), (0, 2, 1), (1, 2, 0))
    for _ in range(max_tries):
        if len(out) >= count:
            break
        # draw two lines, then look for the third family through their meeting point
        i, j, k = pairs[rng.randrange(3)]
        ci, cj, ck = web.curves[i], web.curves[j], web.curves[k]
        ti = _inner_margin(rng, ci.window, margin)
        tj = _inner_margin(rng, cj.window, margin)
        try:
            x, y = _meet(ci.row(ti), cj.row(tj))
        except (NoIntersection, ZeroDivisionError):
            continue
        if abs(x) > box or abs(y) > box:
            continue
        tks = [t for t in param_at(ck, x, y) if _inside(t, ck.window, margin)]
        if not tks:
            continue
        ts = [None] * 3
        ts[i], ts[j], ts[k] = ti, tj, tks[rng.randrange(len(tks))]
        if _admissible(web, web.curves, x, y, ts, envelope):
            out.append(BasePoint(x, y, tuple(ts), web.curves))
    if len(out) < count and allow_complex and getattr(web, "form", None) is not None:
        curves = tau_curves(web)
        taus = _tau_nodes(web.form, web.values)
        for _ in range(max_tries):
            if len(out) >= count:
                break
            smp = _complex_sample(web, taus, rng)
            if smp is None:
                continue
            x, y = smp.point
            if abs(x) > box or abs(y) > box:
                continue
            if _admissible(web, curves, x, y, smp.taus, envelope):
                out.append(BasePoint(x, y, tuple(smp.taus), curves))
    if len(out) < count and (strict or not out):
        raise EmptyFamily(f"found only {len(out)} admissible base points for {web.label}")
    return out


def _admissible(web, curves, x, y, ts, envelope, tol=0.05):
    if any(curves[a] is curves[b] and abs(ts[a] - ts[b]) < 1e-9 for a, b in ((0, 1), (0, 2), (1, 2))):
        return False
    if not all(_transverse_to_envelope(c, t, x, y, envelope) for c, t in zip(curves, ts)):
        return False
    dirs = [(complex(r[0]), complex(r[1])) for r in (c.row(t) for c, t in zip(curves, ts))]
    Y = tuple(complex(v) for v in web.symmetry(x, y))
    size = lambda d: math.sqrt(abs(d[0]) ** 2 + abs(d[1]) ** 2)
    cross = lambda a, b: abs(a[0] * b[1] - a[1] * b[0])
    if size(Y) < 1e-3:
        return False
    for i in range(3):
        if cross(dirs[i], Y) < tol * size(dirs[i]) * size(Y):
            return False
        for j in range(i + 1, 3):
            if cross(dirs[i], dirs[j]) < tol * size(dirs[i]) * size(dirs[j]):
                return False
    return True


def envelope_distance(curve, t, x, y):
    """Distance from ``(x, y)`` along line ``t`` to the point where it touches the envelope.

    Near the envelope two lines of the family through a point merge and the
    leaf parameter stops being a smooth function of the point.
    """
    R, P, _ = curve.row(t)
    dR, dP, dQ = curve.drow(t)
    g = dR * y - dP * x - dQ
    rate = dR * P - dP * R
    if rate == 0:
        return math.inf
    return abs(g) * math.sqrt(abs(R) ** 2 + abs(P) ** 2) / abs(rate)


def _transverse_to_envelope(curve, t, x, y, distance):
    return envelope_distance(curve, t, x, y) >= distance


def _inner_margin(rng, window, margin):
    return _inner(rng, window, margin)


def _inside(t, window, margin):
    lo, hi = window
    if _log_window(window):
        lo, hi, t = math.log(lo), math.log(hi), math.log(float(t))
    pad = margin * (hi - lo)
    return lo + pad <= float(t) <= hi - pad


def choice_for(web, point, ts):
    """Indices into the sorted ``param_at`` lists that select the parameters ``ts``."""
    out = []
    for c, t in zip(web.curves, ts):
        params = sorted(float(v) for v in param_at(c, *point))
        out.append(min(range(len(params)), key=lambda i: abs(params[i] - float(t))))
    return tuple(out)


# -- Cartan profiles ---------------------------------------------------------------
def normalized_profile(web, base=None, seed=0, sample_count=5, spacing=0.01, tries=40):
    """Cartan profile of a catalog web, with the base point it was taken at.

    Without ``base`` real base points are tried in turn until the profile
    can be evaluated at every decision sample ``k * spacing``; the
    normalised leaf must stay inside the windows and away from envelopes.
    Base points whose samples are too ill-conditioned for the float zero test
    are passed over while a better one exists.
    """
    from .criterion import well_conditioned
    from .symweb import cartan_normalize
    if base is not None:
        candidates = [_base_from_point(web, base)]
    else:
        candidates = find_base_points(web, tries, seed, allow_complex=False, strict=False)
    last = fallback = None
    for bp in candidates:
        point = (bp.x, bp.y)
        try:
            if any(isinstance(t, complex) for t in bp.params):
                prof = cartan_normalize(web.to_symmetric_web(), point, params=bp.params)
            else:
                prof = cartan_normalize(web.to_symmetric_web(), point, choice_for(web, point, bp.params))
            for k in range(sample_count):
                prof.jet(k * spacing)
        except (InvalidInput, DomainError, ValueError, ZeroDivisionError) as exc:
            last = exc
            continue
        if base is not None or well_conditioned(prof, sample_count, spacing):
            return prof, bp
        fallback = fallback or (prof, bp)
    if fallback:
        return fallback
    raise EmptyFamily(f"no base point of {web.label} supports the sample stencil ({last})")


def _base_from_point(web, point):
    """Leaf parameters at a given point; complex lines stand in for missing real ones."""
    x, y = (float(v) for v in point)
    params = []
    for k, c in enumerate(web.curves):
        ts = sorted(param_at(c, x, y))
        if not ts:
            ts = [t for t in complex_param_at(c, x, y) if abs(t.imag) > 0]
        if not ts:
            raise EmptyFamily(f"no line of family {k + 1} through {point}")
        params.append(ts[0])
    return BasePoint(x, y, tuple(params), web.curves)


# -- export ----------------------------------------------------------------------
def form_record(form_id, params=None):
    """Plain-data description of a normal form for JSON export."""
    nf = get_form(form_id)
    web = instantiate(form_id, params)
    try:
        branch = str(branch_polynomial(form_id, params))
    except NotProvided:
        branch = None
    return {
        "id": nf.id,
        "parameters": {k: _jsonable(v) for k, v in web.values.items()},
        "focal_curves": [c.text() for c in web.curves],
        "windows": [list(c.window) for c in web.curves],
        "symmetry_matrix": [[_jsonable(Fraction(v)) for v in row] for row in web.matrix],
        "dual_operator": str(web.dual_operator),
        "geometric_operator": list(web.symmetry_text),
        "reduction": {
            "t_of_curve_parameter": [_render(_TAU[k][0], {"beta": web.values.get("beta", 0)})
                                     for k in nf.tau],
            "z_def": nf.z_def,
            "w_def": nf.w_def,
            "f": nf.f,
            "table_parameters": {k: _jsonable(v) for k, v in reduce_parameters(nf, web.values).items()},
        },
        "branch_polynomial": branch,
    }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def export_json(form_ids=None, params=None, indent=2):
    ids = form_ids or [i for i, _ in list_forms()]
    return json.dumps([form_record(i, params if len(ids) == 1 else None) for i in ids], indent=indent)
