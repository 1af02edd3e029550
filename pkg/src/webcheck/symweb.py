"""Symmetric 3-webs in Cartan normal form.

After a change of coordinates a web with symmetry ``Y`` becomes

    Y = d/dx + d/dy,   v1 = d/dx,   v2 = d/dy,   v3 = d/dx + S(t) d/dy,

with ``t = x - y``.  Everything the linearizability test needs is a function
of the profile ``S(t)``: the invariant ``X`` (a symmetrised cross-ratio),
``U = S'/(3S)``, ``F = U'/U`` with ``' = d/dX``, and the Z-system whose
compatibility conditions are the polynomials E and H.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath
import numpy as np
from scipy.integrate import solve_ivp

from .errors import (DegenerateNormalization, FlatWeb, InvalidInput, SigmaLocus,
                     SingularS, SingularX, StationaryOrbit, StationaryX, SymmetryTangent)
from .polycore import Jet1, is_exact

__all__ = [
    "PROFILE_ORDER", "WebProfile", "InvariantFrame", "KNState", "KNTrajectory",
    "make_profile", "profile_from_jet", "perturb_profile", "X_of_S", "invariant_frame", "s3_orbit",
    "s3_generator_a", "s3_generator_b", "kn_transpose_xy", "kn_transpose_yz",
    "henaut_symmetric_residual", "kn_integrals", "kn_flow", "uv_from_kn",
    "xuv_integrals", "zprime", "eqz_residuals", "eqz_system", "cartan_normalize",
    "LineFamily", "SymmetricWeb",
]

PROFILE_ORDER = 5
FLAT_TOL = 1e-10


def _one(x):
    return Fraction(1) if is_exact(x) else 1


def _q(*xs):
    """Promote ints to Fractions so exact inputs give exact quotients."""
    return tuple(Fraction(x) if isinstance(x, int) else x for x in xs)


# -- profiles -------------------------------------------------------------------
@dataclass(frozen=True)
class WebProfile:
    """The function S(t) of a normalised web, evaluable as a jet at any t.

    ``jet_fn(t, order)`` returns the Taylor jet of S at ``t``.
    """

    jet_fn: Callable
    t0: object
    flat: bool
    label: str = ""

    def jet(self, t=None, order=PROFILE_ORDER):
        return self.jet_fn(self.t0 if t is None else t, order)

    def value(self, t=None):
        return self.jet(t, 0).value


def _log_second_derivative(jet):
    # (log S)'' = S''/S - (S'/S)^2
    s0, s1, s2 = jet.derivative(0), jet.derivative(1), jet.derivative(2)
    return s2 / s0 - (s1 / s0) ** 2


def _as_jet_fn(S):
    if hasattr(S, "evaluate"):
        return lambda t, order: _lift(S.evaluate({"t": Jet1.variable(t, order)}), t, order)
    return lambda t, order: _lift(S(Jet1.variable(t, order)), t, order)


def _lift(v, t, order):
    # constant expressions evaluate to plain numbers
    return v if isinstance(v, Jet1) else Jet1.constant(v, order, t)


def make_profile(S, t0, label="", flat_points=4, spacing=None):
    """Build a :class:`WebProfile` from an expression node or a jet closure.

    The flat flag is set when ``|d^2/dt^2 log S| < 1e-10`` at ``t0`` and at
    ``flat_points`` nearby points.
    """
    jet_fn = _as_jet_fn(S)
    return _finish_profile(jet_fn, t0, label, flat_points, spacing)


def _finish_profile(jet_fn, t0, label="", flat_points=4, spacing=None):
    j = jet_fn(t0, PROFILE_ORDER)
    if j.order < PROFILE_ORDER:
        raise InvalidInput(f"profile jet has order {j.order}, need {PROFILE_ORDER}")
    s = j.value
    if s == 0 or s == 1:
        raise DegenerateNormalization(f"S(t0) = {s}: v3 is tangent to v1 or v2")
    h = spacing if spacing is not None else (Fraction(1, 20) if is_exact(t0) else 0.05)
    pts = [t0] + [t0 + k * h * (-1) ** k for k in range(1, flat_points + 1)]
    flat = True
    for k, t in enumerate(pts):
        try:
            jt = j if k == 0 else jet_fn(t, 2)
            if jt.value == 0:
                continue
            if abs(_log_second_derivative(jt)) >= FLAT_TOL:
                flat = False
                break
        except (ArithmeticError, ValueError) as exc:
            if k == 0:
                raise
            continue
    return WebProfile(jet_fn, t0, flat, label)


def profile_from_jet(jet, label=""):
    """Local profile given by a Taylor jet; other t values use its Taylor polynomial."""

    def jet_fn(t, order):
        return jet(Jet1.variable(t, order)) if t != jet.t0 else jet.truncate(order)

    return _finish_profile(jet_fn, jet.t0, label, flat_points=0)


def perturb_profile(profile, amplitude, power=3, label="", relative=False):
    """The profile ``S(t) + amplitude * (t - t0)**power``.

    With ``relative`` the bump is multiplicative: ``S(t) (1 + amplitude (t - t0)**power)``.
    Used to build nearby profiles of a normalised web that no longer come
    from a linear web.
    """
    t0 = profile.t0

    def jet_fn(t, order):
        e = Jet1.variable(t, order) - t0
        S = profile.jet_fn(t, order)
        if relative:
            return S * (1 + amplitude * e ** power)
        return S + amplitude * e ** power

    sign = "*(1+" if relative else "+"
    tail = ")" if relative else ""
    return _finish_profile(jet_fn, t0, label or f"{profile.label}{sign}{amplitude}*t^{power}{tail}")


# -- invariants -----------------------------------------------------------------
def X_of_S(S):
    """X = (S^2 - S + 1)^3 / (3 (S - 1)^2 S^2); works on numbers and jets."""
    return (S * S - S + 1) ** 3 / (3 * (S - 1) ** 2 * S ** 2)


@dataclass(frozen=True)
class InvariantFrame:
    X: object
    U: object
    F: object
    F1: object
    F2: object
    F3: object
    V: object = None
    t: object = None

    def slots(self):
        return (self.X, self.F, self.F1, self.F2, self.F3)


def invariant_frame(profile, t=None):
    """X, U, F and F', F'', F''' (derivatives in X) at ``t``."""
    if profile.flat:
        raise FlatWeb("flat profile: U is constant and F is undefined")
    return frame_from_jet(profile.jet(t, PROFILE_ORDER))


def frame_from_jet(S):
    """Invariant frame from a jet of S of order at least five."""
    if S.value == 0 or S.value == 1:
        raise DegenerateNormalization(f"S = {S.value}")
    Xj = X_of_S(S)
    dX = Xj.d()
    if dX.value == 0:
        raise StationaryX(f"dX/dt = 0 at S = {S.value}")
    U = S.d() / (3 * S)
    if U.value == 0:
        raise StationaryX("S' = 0")
    Fj = U.d() / (U * dX)
    out = [Fj]
    for _ in range(3):
        out.append(out[-1].d() / dX)
    return InvariantFrame(Xj.value, U.value, *(o.value for o in out), t=S.t0)


# -- S3 action ------------------------------------------------------------------
def s3_generator_a(S):
    """Transposition of v1 and v2: S(t) -> 1/S(-t).  Jet in, jet out (base -t0)."""
    flipped = Jet1([c * (-1) ** k for k, c in enumerate(S.c)], -S.t0)
    return flipped.reciprocal()


def _reverse_series(phi):
    """Compositional inverse of a jet with phi(t0)=0, phi'(t0)!=0, as a jet at 0."""
    n = phi.order
    a1 = phi.c[1]
    inv = Jet1([0, _one(a1) / a1] + [0] * (n - 1), 0)
    # fixed point g <- g - (phi(t0 + g) - s) / a1, one order per pass
    s = Jet1.variable(0, n)
    shifted = Jet1(phi.c, 0)
    for _ in range(n):
        inv = inv - (shifted(inv) - s) / a1
    return inv


def s3_generator_b(S):
    """Transposition of y and z: S -> S/(S-1) with dt -> dt/(1-S)."""
    n = S.order
    new = S / (S - 1)
    phi = (1 / (1 - S)).integral(0)          # t~ - t~0 as a series in t - t0, order n+1
    phi = Jet1(phi.c[: n + 1], S.t0)
    inv = _reverse_series(phi)                # t - t0 as a series in t~ - t~0
    out = Jet1(new.c, 0)(inv)
    return Jet1(out.c, S.t0)


def _orbit_jets(S):
    a, b = s3_generator_a, s3_generator_b
    return [S, a(S), b(S), a(b(S)), b(a(S)), a(b(a(S)))]


def s3_orbit(profile, t=None):
    """Six profiles of the S3 orbit, as local Taylor models at the base point."""
    S = profile.jet(t, PROFILE_ORDER)
    out = []
    for j in _orbit_jets(S):
        if j.value == 0 or j.value == 1:
            raise DegenerateNormalization("orbit passes through S in {0, 1}")
        p = profile_from_jet(j, label=profile.label)
        out.append(WebProfile(p.jet_fn, p.t0, profile.flat, profile.label))
    return out


def kn_transpose_xy(S, dS, K, N):
    return 1 / S, dS / S**2, N, K


def kn_transpose_yz(S, dS, K, N):
    return S / (S - 1), dS / (S - 1), K - 2 * N * S + Fraction(2, 3) * dS, -N * (S - 1) + Fraction(1, 3) * dS


# -- K, N system ----------------------------------------------------------------
def henaut_symmetric_residual(profile_or_S, K, N, dS=None, t=None):
    """3S(K - SN) - (1 - S)S'; accepts a profile or a value S with ``dS``."""
    if isinstance(profile_or_S, WebProfile):
        j = profile_or_S.jet(t, 1)
        S, dS = j.value, j.derivative(1)
    else:
        S = profile_or_S
    return 3 * S * (K - S * N) - (1 - S) * dS


@dataclass(frozen=True)
class KNState:
    t: float
    K: float
    N: float
    dK: float
    dN: float


def kn_integrals(K, N, dK, dN):
    I1 = dN - dK + K * K + N * N - N * K
    I2 = 3 * (dN * K - dK * N) - 2 * (K**3 + N**3) + 3 * (K * K * N + N * N * K)
    return I1, I2


def _kn_rhs(y):
    K, N, dK, dN = y
    b1 = -6 * K * dK + 3 * K * dN          # -2K'' + N''
    b2 = -3 * N * dK + 6 * N * dN          # K'' - 2N''
    ddK = (-2 * b1 - b2) / 3
    ddN = (-b1 - 2 * b2) / 3
    return np.array([dK, dN, ddK, ddN])


@dataclass(frozen=True)
class KNTrajectory:
    t: np.ndarray
    states: np.ndarray          # columns K, N, K', N'
    I1: np.ndarray
    I2: np.ndarray

    def state(self, i):
        K, N, dK, dN = self.states[i]
        return KNState(float(self.t[i]), K, N, dK, dN)

    def drift(self):
        """Largest relative change of I1 and I2 along the trajectory."""
        def rel(a):
            return float(np.max(np.abs(a - a[0])) / max(1.0, abs(a[0])))
        return rel(self.I1), rel(self.I2)


def kn_flow(initial, t_final, steps=1000):
    """Classical fourth-order Runge-Kutta integration of the K, N system."""
    if steps <= 0:
        raise InvalidInput("step count must be positive")
    h = (t_final - initial.t) / steps
    y = np.array([initial.K, initial.N, initial.dK, initial.dN], dtype=float)
    ys = np.empty((steps + 1, 4))
    ys[0] = y
    for i in range(steps):
        k1 = _kn_rhs(y)
        k2 = _kn_rhs(y + h / 2 * k1)
        k3 = _kn_rhs(y + h / 2 * k2)
        k4 = _kn_rhs(y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        ys[i + 1] = y
    ts = initial.t + h * np.arange(steps + 1)
    I1, I2 = kn_integrals(ys[:, 0], ys[:, 1], ys[:, 2], ys[:, 3])
    return KNTrajectory(ts, ys, I1, I2)


def uv_from_kn(S, K, N):
    S, K, N = _q(S, K, N)
    den = (S - 1) * (S - 2) * (2 * S - 1) * (S + 1)
    if den == 0:
        raise SingularS(f"S = {S} is in {{1, 2, 1/2, -1}}")
    U = (S * N - K) / (S - 1)
    V = (S * S - S + 1) ** 2 * (N - K) / (3 * den)
    return U, V


def xuv_integrals(X, U, V, dU, dV):
    """First integrals rewritten in the invariants X, U, V."""
    if X == 0:
        raise SingularX("X = 0")
    X, U, V, dU, dV = _q(X, U, V, dU, dV)
    a = 4 * X - 9
    I1 = 9 * U * a * dV + 9 * a / X * V**2 - 6 * U * (X - 9) / X * V + U**2
    I2 = (27 * U**2 * a * dV + 27 * a**2 / X**2 * V**3 - 27 * U * a / X * V**2
          - 9 * U / X * (2 * X * U - 18 * U + (12 * X**2 - 27 * X) * dU) * V + 2 * U**3)
    return I1, I2


# -- Z system -------------------------------------------------------------------
def _check_xz(X, Z):
    if X == 0 or 4 * X - 9 == 0:
        raise SingularX(f"X = {X}")
    sigma = 3 * (4 * X - 9) * Z - 4 * X
    if sigma == 0:
        raise SigmaLocus("3(4X-9)Z - 4X = 0")
    return sigma


def zprime(X, Z, F, F1):
    """Z' solved from the pair of second-order equations (Z'' eliminated)."""
    X, Z, F, F1 = _q(X, Z, F, F1)
    sigma = _check_xz(X, Z)
    a = 4 * X - 9
    num = (-9 * a * (6 + X * a * F) * Z**2 + 3 * X * (18 + 5 * X * a * F) * Z
           + X**2 * (6 * X * a * F**2 + (14 * X - 18) * F + 3 * X * a * F1))
    return num / (3 * X * a * sigma)


def eqz_residuals(X, Z, F, F1, Zp, Zpp):
    """Left-hand sides of the two second-order equations for Z(X)."""
    a = 4 * X - 9
    common = 3 * X * (9 * X * a * F + 10 * X + 18)
    e1 = (9 * X**2 * a * Zpp + 18 * X * a * Z * Zp + common * Zp + (81 + 18 * X * a * F) * Z**2
          + (18 * X**2 * a * F**2 + 12 * X * (9 + 2 * X) * F - 54 + 9 * X**2 * a * F1) * Z
          + 2 * X**2 * F)
    e2 = (9 * X**3 * a * Zpp + 27 * X * a**2 * Z**2 * Zp - 18 * X**2 * a * Z * Zp + X * common * Zp
          + 27 * a * (6 + X * a * F) * Z**3 - 27 * X * (3 + X * a * F) * Z**2
          - 18 * X * (3 + X * (X - 9) * F) * Z + 2 * X**3 * F)
    return e1, e2


def zsecond(X, Z, F, F1, Zp):
    """Z'' from the first equation with Z' substituted."""
    X, Z, F, F1 = _q(X, Z, F, F1)
    a = 4 * X - 9
    e1_rest = eqz_residuals(X, Z, F, F1, Zp, 0)[0]
    return -e1_rest / (9 * X**2 * a)


def eqz_system(X, Z, F, F1):
    """(Z', Z'', residual pair); the residuals vanish by construction."""
    Zp = zprime(X, Z, F, F1)
    Zpp = zsecond(X, Z, F, F1, Zp)
    return Zp, Zpp, eqz_residuals(X, Z, F, F1, Zp, Zpp)


# -- Cartan normalisation -------------------------------------------------------
@dataclass(frozen=True)
class LineFamily:
    """One-parameter family of lines ``R(t) y = P(t) x + Q(t)``.

    ``row(t)`` returns ``(R, P, Q)`` and must accept numbers and jets;
    ``drow(t)`` returns the t-derivatives.  ``param_at(x, y)`` lists the
    parameters of the lines through a point.
    """

    row: Callable
    drow: Callable
    param_at: Callable


@dataclass(frozen=True)
class SymmetricWeb:
    families: tuple
    symmetry: Callable          # (x, y) -> (Yx, Yy); must accept jets
    label: str = ""


def _grad_param(fam, t, x, y):
    """Gradient of the leaf parameter t(x, y) of ``fam`` at a point on line t."""
    R, P, Q = fam.row(t)
    dR, dP, dQ = fam.drow(t)
    g = dR * y - dP * x - dQ
    return P / g, -R / g


def _meet(row1, row2):
    R1, P1, Q1 = row1
    R2, P2, Q2 = row2
    # R y - P x = Q for both lines
    det = -R2 * P1 + R1 * P2
    x = (R2 * Q1 - R1 * Q2) / det
    y = (P2 * Q1 - P1 * Q2) / det
    return x, y


def _solve_param_jet(fam, t_seed, x, y):
    """Leaf parameter through the jet point (x, y) by chord iteration."""
    order = x.order
    dR, dP, dQ = fam.drow(t_seed)
    g0 = dR * y.value - dP * x.value - dQ
    tau = Jet1.constant(t_seed, order, x.t0)
    for _ in range(order + 1):
        R, P, Q = fam.row(tau)
        G = R * y - P * x - Q
        tau = tau - G / g0
    return tau


class _Normalizer:
    def __init__(self, web, base, choice, ctx, params=None):
        self.web = web
        self.ctx = ctx
        cv = ctx
        self.x0, self.y0 = cv(base[0]), cv(base[1])
        fams = web.families
        self.t = []
        if params is not None:
            # explicit leaf parameters; complex ones continue the web holomorphically
            self.t = [p if isinstance(p, complex) else cv(p) for p in params]
        for k, fam in enumerate(fams if params is None else ()):
            params_k = sorted(fam.param_at(self.x0, self.y0), key=lambda v: float(v))
            if not params_k:
                raise InvalidInput(f"no line of family {k + 1} through the base point")
            self.t.append(cv(params_k[min(choice[k], len(params_k) - 1)]))
        self.complex = any(isinstance(v, complex) for v in self.t)
        dirs = []
        Y = web.symmetry(self.x0, self.y0)
        if abs(Y[0]) + abs(Y[1]) == 0:
            raise StationaryOrbit("symmetry vanishes at the base point")
        for k, fam in enumerate(fams):
            R, P, _ = fam.row(self.t[k])
            dirs.append((R, P))
            if abs(R * Y[1] - P * Y[0]) <= 1e-13 * math.hypot(abs(R), abs(P)) * math.hypot(abs(Y[0]), abs(Y[1])):
                raise SymmetryTangent(f"symmetry is tangent to family {k + 1}")
        for i in range(3):
            for j in range(i + 1, 3):
                (a, b), (c, d) = dirs[i], dirs[j]
                if a * d - b * c == 0:
                    raise InvalidInput("web directions coincide at the base point")
        self._ode_cache = {}

    def c2(self, T):
        """Y(t2) along leaf 1 through the base, as a function of the family-2 parameter."""
        f1, f2 = self.web.families[0], self.web.families[1]
        x, y = _meet(f1.row(self.t[0]), f2.row(T))
        g = _grad_param(f2, T, x, y)
        Y = self.web.symmetry(x, y)
        return g[0] * Y[0] + g[1] * Y[1]

    def t2_at(self, s):
        """Family-2 parameter at arclength-like coordinate s (x~ - x~0) along leaf 1."""
        if s == 0:
            return self.t[1]
        if self.ctx is not float:
            # odefun only integrates forward; run s < 0 on the reflected system
            sign = 1 if s > 0 else -1
            f = lambda s_, T: sign * self.c2(T)
            return mpmath.odefun(f, 0, self.t[1])(abs(s))
        y0 = [complex(self.t[1])] if self.complex else [float(self.t[1])]
        sol = solve_ivp(lambda s_, T: [self.c2(T[0])], (0.0, float(s)), y0,
                        method="DOP853", rtol=1e-13, atol=1e-14)
        return sol.y[0, -1]

    def profile_jet(self, s0, order):
        f1, f2, f3 = self.web.families
        T2_0 = self.t2_at(s0)
        # Picard iteration for T2(s), one order gained per pass
        T = Jet1.constant(T2_0, order, s0)
        for _ in range(order + 1):
            T = self.c2(T).integral(T2_0)
            T = Jet1(T.c[: order + 1], s0)
        x, y = _meet(f1.row(Jet1.constant(self.t[0], order, s0)), f2.row(T))
        t1 = Jet1.constant(self.t[0], order, s0)
        seed3 = self._seed3(x.value, y.value)
        t3 = _solve_param_jet(f3, seed3, x, y)
        Y = self.web.symmetry(x, y)
        R3, P3, _ = f3.row(t3)
        g1 = _grad_param(f1, t1, x, y)
        g2 = _grad_param(f2, T, x, y)
        num = (g1[0] * R3 + g1[1] * P3) / (g1[0] * Y[0] + g1[1] * Y[1])
        den = (g2[0] * R3 + g2[1] * P3) / (g2[0] * Y[0] + g2[1] * Y[1])
        return num / den

    def _seed3(self, x, y):
        # nearest family-3 parameter through (x, y) to the base choice
        if self.complex:
            f3 = self.web.families[2]

            def g(u):
                R, P, Q = f3.row(complex(u))
                return R * y - P * x - Q
            return complex(mpmath.findroot(g, mpmath.mpc(self.t[2])))
        params = self.web.families[2].param_at(x, y)
        if not params:
            raise InvalidInput("third family leaves the window")
        return min(params, key=lambda v: abs(float(v) - float(self.t[2])))


def cartan_normalize(web, base, choice=(0, 0, 0), precision=None, label="", params=None):
    """Profile S(t) of ``web`` in Cartan coordinates adapted to its symmetry.

    Coordinates: ``x~`` and ``y~`` are the first integrals of families 2 and
    1 normalised by ``Y(x~) = Y(y~) = 1``; ``t = x~ - y~`` vanishes at the
    base point.  Jets come from Picard iteration along the leaf of family 1
    through the base point.  ``precision`` (decimal digits) switches the
    arithmetic to mpmath.  ``params`` fixes the three leaf parameters at the
    base point instead of ``choice``; complex values give the profile of the
    complexified web.
    """
    if precision:
        mpmath.mp.dps = precision
        ctx = mpmath.mpf
    else:
        ctx = float
    norm = _Normalizer(web, base, choice, ctx, params)

    def jet_fn(t, order):
        return norm.profile_jet(ctx(t) if ctx is not float else float(t), order)

    return _finish_profile(jet_fn, ctx(0), label or web.label)


def profile_fd_oracle(web, base, choice=(0, 0, 0), order=PROFILE_ORDER, dps=40, t=0):
    """Derivatives of S at ``t`` from pointwise evaluation and mpmath.diff.

    Independent of the jet machinery: S(s) is computed pointwise from the
    leaf geometry at high precision, then differentiated numerically with
    mpmath's extrapolated finite differences.
    """
    with mpmath.workdps(dps):
        norm = _Normalizer(web, base, choice, mpmath.mpf)
        f1, f2, f3 = web.families

        def S_at(s):
            T2 = norm.t2_at(s)
            x, y = _meet(f1.row(norm.t[0]), f2.row(T2))
            seed = norm._seed3(x, y)
            t3 = mpmath.findroot(lambda u: _row_eval(f3, u, x, y), seed)
            Y = web.symmetry(x, y)
            R3, P3, _ = f3.row(t3)
            g1 = _grad_param(f1, norm.t[0], x, y)
            g2 = _grad_param(f2, T2, x, y)
            num = (g1[0] * R3 + g1[1] * P3) / (g1[0] * Y[0] + g1[1] * Y[1])
            den = (g2[0] * R3 + g2[1] * P3) / (g2[0] * Y[0] + g2[1] * Y[1])
            return num / den

        derivs = [mpmath.diff(S_at, mpmath.mpf(t), k) for k in range(order + 1)]
        return [float(d) for d in derivs]


def _row_eval(fam, u, x, y):
    R, P, Q = fam.row(u)
    return R * y - P * x - Q
