"""The resultant criterion for linearizability.

A non-flat symmetric web is linearizable exactly when E(Z) and H(Z) share a
root, i.e. when their resultant R vanishes.  R splits off a fixed factor

    R = 3^30 (4X-9)^20 X^26 rho^6 * omega

and ``omega`` is the invariant whose vanishing along the web decides the
question.  Exact inputs (ints, Fractions, MultiPolys) give exact results;
floats are handled in log space with a scale-relative zero test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

import numpy as np

from .appendix import DEFAULT_TABLE, VARS
from .errors import (DegenerateLeadingCoeff, DegenerateNormalization, InvalidInput, RhoLocus,
                     SigmaLocus, SingularX, StationaryX, WebcheckError)
from .polycore import Jet1, MultiPoly, is_exact
from .polycore.resultants import determinant, sylvester_matrix, univariate_gcd, _rem_numeric
from .symweb import (PROFILE_ORDER, InvariantFrame, eqz_residuals, frame_from_jet, invariant_frame,
                     zprime, zsecond)

__all__ = [
    "OMEGA_CONSTANT", "ORACLE_E_CONSTANT", "ORACLE_H_CONSTANT", "DEFAULT_TOL",
    "coeffs_E", "coeffs_H", "E_poly", "H_poly", "compatibility_oracle", "h_oracle",
    "rho", "sigma", "tau", "tau_sigma", "resultant_EH", "omega_normalizer", "omega",
    "OmegaValue", "count_linearizations", "euclid_step", "LinVerdict", "decide_linearizable", "ratio_noise",
    "well_conditioned",
    "PropertyResult", "random_frame", "resultant_in_X", "factor_quotient", "verify_appendix",
]

OMEGA_CONSTANT = 3**30
# measured: clearing factor X^2 (4X-9) sigma^3 times (dZ'/dX - Z'') equals -E(Z)
ORACLE_E_CONSTANT = -1
# X (4X-9) sigma times dE/dX (total derivative along the Z-system) equals H(Z)
ORACLE_H_CONSTANT = 1
DEFAULT_TOL = 1e-8
# relative accuracy assumed for float S-jets when probing conditioning
JET_NOISE = 1e-13
# a sample is decidable when its ratio noise stays below this fraction of tol
NOISE_MARGIN = 0.1
# near S = 1 (X large) the profile's own time scale shrinks and omega barely
# responds to a change of the web, so base-point selection avoids X above this
X_PREFERRED_MAX = 100


def _slots(args):
    if len(args) == 1 and isinstance(args[0], InvariantFrame):
        return args[0].slots()
    if len(args) == 1 and isinstance(args[0], (tuple, list)):
        return tuple(args[0])
    return tuple(args)


def _exactify(v):
    return Fraction(v) if isinstance(v, int) else v


def _env(values):
    return {k: _exactify(v) for k, v in zip(VARS, values) if v is not None}


def _collapse(v):
    if isinstance(v, MultiPoly):
        v = v.drop_unused()
        if v.is_constant():
            return v.constant_value()
    return v


def coeffs_E(X, F, F1, F2, table=DEFAULT_TABLE):
    """E0..E5 at the given point; symbolic inputs (MultiPoly) give MultiPolys."""
    env = _env((X, F, F1, F2))
    return tuple(_collapse(c.eval(env)) for c in table.E)


def coeffs_H(X, F, F1, F2, F3, table=DEFAULT_TABLE):
    env = _env((X, F, F1, F2, F3))
    return tuple(_collapse(c.eval(env)) for c in table.H)


def _poly_in_Z(coeffs):
    return MultiPoly.from_coeffs("Z", list(coeffs))


def E_poly(*frame, table=DEFAULT_TABLE):
    X, F, F1, F2, _ = _slots(frame) + (None,) * (5 - len(_slots(frame)))
    return _poly_in_Z(coeffs_E(X, F, F1, F2, table))


def H_poly(*frame, table=DEFAULT_TABLE):
    return _poly_in_Z(coeffs_H(*_slots(frame), table=table))


def _eval_poly(coeffs, Z):
    out = 0
    for c in reversed(coeffs):
        out = out * Z + c
    return out


# -- oracles --------------------------------------------------------------------
def compatibility_oracle(X, Fjet, Z):
    """Cleared compatibility defect ``X^2 (4X-9) sigma^3 (dZ'/dX - Z'')``.

    ``Fjet`` holds (F, F', F'') or a Jet1 of F in X of order >= 2.  The total
    derivative of Z' is taken by evaluating the closed form of Z' on first
    order jets along ``dZ/dX = Z'``; Z'' comes from the first second-order
    equation.  Nothing here reads the coefficient table.
    """
    F, F1, F2 = _fjet(Fjet, 3)
    X, Z = _exactify(X), _exactify(Z)
    if X == 0 or 4 * X - 9 == 0:
        raise SingularX(f"X = {X}")
    sig = 3 * (4 * X - 9) * Z - 4 * X
    if sig == 0:
        raise SigmaLocus("sigma = 0")
    Zp = zprime(X, Z, F, F1)
    Zpp = zsecond(X, Z, F, F1, Zp)
    J = lambda v, dv: Jet1([v, dv], X)
    dZp = zprime(J(X, 1), J(Z, Zp), J(F, F1), J(F1, F2)).c[1]
    return X**2 * (4 * X - 9) * sig**3 * (dZp - Zpp)


def h_oracle(X, Fjet, Z, table=DEFAULT_TABLE):
    """``X (4X-9) sigma`` times the total X-derivative of E along the Z-system."""
    F, F1, F2, F3 = _fjet(Fjet, 4)
    X, Z = _exactify(X), _exactify(Z)
    sig = 3 * (4 * X - 9) * Z - 4 * X
    if sig == 0:
        raise SigmaLocus("sigma = 0")
    Zp = zprime(X, Z, F, F1)
    J = lambda v, dv: Jet1([v, dv], X)
    env = {"X": J(X, 1), "F": J(F, F1), "F1": J(F1, F2), "F2": J(F2, F3), "F3": 0}
    E = [c.eval(env) for c in table.E]
    dE = _eval_poly(E, J(Z, Zp))
    dE = dE.c[1] if isinstance(dE, Jet1) else 0
    return X * (4 * X - 9) * sig * dE


def _fjet(Fjet, n):
    if isinstance(Fjet, Jet1):
        vals = Fjet.derivatives()
    else:
        vals = list(Fjet)
    if len(vals) < n:
        raise InvalidInput(f"need F and {n - 1} derivatives")
    return tuple(_exactify(v) for v in vals[:n])


# -- rho, sigma, tau ------------------------------------------------------------
def rho(X, F, F1):
    X, F, F1 = _exactify(X), _exactify(F), _exactify(F1)
    a = 4 * X - 9
    return X * a**2 * F1 + 2 * X * a**2 * F**2 + 6 * (X - 1) * a * F - 8


def sigma(X, Z):
    return 3 * (4 * _exactify(X) - 9) * Z - 4 * X


def tau(X, F):
    X, F = _exactify(X), _exactify(F)
    a = 4 * X - 9
    return (36 * X**6 * a**6 * ((84 * X - 189) * F - 20)
            * (7 * X**2 * a**3 * F**3 + 21 * X * (51 * X - 4) * a**2 * F**2
               - 12 * (596 * X - 21) * a * F + 11856))


def tau_sigma(X, F, Z):
    return tau(X, F), sigma(X, Z)


# -- resultant and omega --------------------------------------------------------
def _is_numeric(v):
    return isinstance(v, Number)


def _check_leading(E, H):
    for name, c in (("E5", E[-1]), ("H6", H[-1])):
        if _is_numeric(c) and c == 0:
            raise DegenerateLeadingCoeff(f"{name} vanishes; the Sylvester matrix degenerates")


def resultant_EH(*frame, table=DEFAULT_TABLE):
    """Sylvester resultant of E and H in Z (exact or MultiPoly for exact inputs)."""
    X, F, F1, F2, F3 = _slots(frame)
    E = coeffs_E(X, F, F1, F2, table)
    H = coeffs_H(X, F, F1, F2, F3, table)
    _check_leading(E, H)
    if all(_is_numeric(c) for c in E + H) and not all(is_exact(c) for c in E + H):
        logdet, _, sign = _float_resultant(E, H)
        return sign * math.exp(logdet) if np.isfinite(logdet) else 0.0
    return determinant(sylvester_matrix(_poly_in_Z(E), _poly_in_Z(H), "Z"))


def _sylvester_numeric(E, H):
    """Row-balanced float Sylvester matrix, log and phase of the removed row scales.

    Rows are divided by their largest entry (exactly, for rational entries)
    before conversion so huge rationals never overflow a float.
    """
    m, n = len(E) - 1, len(H) - 1
    cplx = any(isinstance(c, complex) for c in E + H)
    size = m + n
    M = np.zeros((size, size), dtype=complex if cplx else float)
    logrows, phase = 0.0, 1
    for k, (cs, shifts) in enumerate(((E, n), (H, m))):
        desc = list(reversed(cs))
        big = max(desc, key=abs)
        logrows += shifts * _log_abs(big)
        phase *= _phase(big) ** shifts
        if is_exact(big):
            row = [Fraction(c) / Fraction(big) for c in desc]
        else:
            row = [c / big for c in desc]
        row = [complex(c) if cplx else float(c) for c in row]
        for i in range(shifts):
            M[k * n + i, i:i + len(row)] = row
    return M, logrows, phase


def _phase(v):
    """v / |v| as a float or complex number."""
    if isinstance(v, complex):
        return v / abs(v)
    return 1 if v > 0 else -1


def _log_scale(M):
    """log of the largest cofactor contribution max |M_ij C_ij|."""
    best = -math.inf
    size = len(M)
    for i in range(size):
        rest = np.delete(M, i, 0)
        for j in np.nonzero(M[i])[0]:
            sign, logdet = np.linalg.slogdet(np.delete(rest, j, 1))
            if sign != 0:
                best = max(best, math.log(abs(M[i, j])) + logdet)
    return best


def _float_resultant(E, H):
    """(log|R|, log scale, phase of R) from the balanced Sylvester matrix."""
    M, logrows, phase = _sylvester_numeric(E, H)
    sign, logdet = np.linalg.slogdet(M)
    sign = complex(sign) * phase if np.iscomplexobj(M) else float(sign) * phase
    return logdet + logrows, _log_scale(M) + logrows, sign


def omega_normalizer(X, F, F1):
    """3^30 (4X-9)^20 X^26 rho^6."""
    return OMEGA_CONSTANT * (4 * _exactify(X) - 9) ** 20 * _exactify(X) ** 26 * rho(X, F, F1) ** 6


@dataclass(frozen=True)
class OmegaValue:
    """omega together with the scale used by the zero test.

    ``value`` is exact for exact inputs.  ``ratio`` is |R| divided by the
    largest cofactor contribution |M_ij C_ij| of the Sylvester matrix (0 for
    exact zeros); ``scale`` is that contribution carried through the same
    normalisation as omega.
    """

    value: object
    scale: float
    ratio: float
    exact: bool

    def is_zero(self, tol=DEFAULT_TOL):
        if self.exact:
            return self.value == 0
        return self.ratio <= tol


def omega(*frame, table=DEFAULT_TABLE):
    """omega = R / (3^30 (4X-9)^20 X^26 rho^6) with a scale for float inputs."""
    X, F, F1, F2, F3 = _slots(frame)
    if X == 0 or 4 * X - 9 == 0:
        raise SingularX(f"X = {X}")
    r = rho(X, F, F1)
    if _is_numeric(r) and r == 0:
        raise RhoLocus("rho = 0")
    E = coeffs_E(X, F, F1, F2, table)
    H = coeffs_H(X, F, F1, F2, F3, table)
    _check_leading(E, H)
    values = E + H
    if all(_is_numeric(c) and is_exact(c) for c in values):
        R = determinant(sylvester_matrix(_poly_in_Z(E), _poly_in_Z(H), "Z"))
        w = Fraction(R) / omega_normalizer(X, F, F1)
        _, logscale, _ = _float_resultant(E, H)
        lognorm = _log_abs_norm(X, r)
        scale = math.exp(logscale - lognorm) if logscale - lognorm < 700 else math.inf
        ratio = 0.0 if R == 0 else math.exp(_log_abs(R) - logscale)
        return OmegaValue(w, scale, ratio, True)
    if not all(_is_numeric(c) for c in values):
        R = determinant(sylvester_matrix(_poly_in_Z(E), _poly_in_Z(H), "Z"))
        norm = omega_normalizer(X, F, F1)
        w = R.exact_div(norm) if isinstance(R, MultiPoly) else R / norm
        return OmegaValue(w, math.nan, math.nan, True)
    logdet, logscale, sign = _float_resultant(E, H)
    lognorm = _log_abs_norm(X, r)
    w = sign / _norm_phase(X, r) * math.exp(logdet - lognorm) if np.isfinite(logdet) else 0.0
    scale = math.exp(min(logscale - lognorm, 700))
    ratio = math.exp(logdet - logscale) if np.isfinite(logdet) else 0.0
    return OmegaValue(w, scale, ratio, False)


def _log_abs(v):
    if isinstance(v, Fraction):
        return math.log(abs(v.numerator)) - math.log(v.denominator)
    return math.log(abs(v))


def _norm_phase(X, r):
    """Phase of the omega normaliser; 1 for real frames (even powers only)."""
    if not any(isinstance(v, complex) for v in (X, r)):
        return 1
    X = complex(X)
    return _phase(4 * X - 9) ** 20 * _phase(X) ** 26 * _phase(complex(r)) ** 6


def _log_abs_norm(X, r):
    return (30 * math.log(3) + 20 * _log_abs(4 * _exactify(X) - 9) + 26 * _log_abs(_exactify(X))
            + 6 * _log_abs(r))


# -- Euclid step and counting ---------------------------------------------------
def _numeric_coeffs(*frame, table=DEFAULT_TABLE):
    X, F, F1, F2, F3 = _slots(frame)
    E = list(coeffs_E(X, F, F1, F2, table))
    H = list(coeffs_H(X, F, F1, F2, F3, table))
    _check_leading(E, H)
    return E, H


def euclid_step(*frame, table=DEFAULT_TABLE):
    """Ascending coefficients of rem(H, E); the first Euclid step."""
    E, H = _numeric_coeffs(*frame, table=table)
    return _rem_numeric(H, E)


def count_linearizations(*frame, table=DEFAULT_TABLE, rtol=1e-7):
    """Number of distinct common roots of E and H.

    Exact inputs: degree of the squarefree part of gcd(E, H) over Q.  Float
    inputs: roots of E at which H vanishes to relative backward error
    ``rtol``, clustered at the same tolerance.
    """
    E, H = _numeric_coeffs(*frame, table=table)
    if all(is_exact(c) for c in E + H):
        g = univariate_gcd(E, H)
        if len(g) <= 1:
            return 0
        dg = [k * g[k] for k in range(1, len(g))]
        common = univariate_gcd(g, dg)
        return (len(g) - 1) - (len(common) - 1)
    # float mode: roots of E whose backward error as roots of H is small
    Hc = [complex(c) for c in H]
    hits = []
    for z in np.roots([complex(c) for c in reversed(E)]):
        size = sum(abs(h) * abs(z) ** k for k, h in enumerate(Hc))
        if abs(np.polyval(Hc[::-1], z)) > rtol * size:
            continue
        if not any(abs(z - h) <= rtol * max(1.0, abs(z)) for h in hits):
            hits.append(z)
    return len(hits)


# -- verdict --------------------------------------------------------------------
@dataclass(frozen=True)
class LinVerdict:
    kind: str                        # Linearizable | NonLinearizable | Flat | Degenerate
    count: int = 0
    omega_residual: float = 0.0
    diagnostics: tuple = ()
    reason: str = ""

    def __post_init__(self):
        if self.kind == "Linearizable" and not 1 <= self.count <= 5:
            raise InvalidInput("a linearizable verdict needs 1 <= count <= 5")


def sample_points(t0, n, spacing):
    return [t0 + k * spacing for k in range(n)]


def ratio_noise(profile, t, ratio, table=DEFAULT_TABLE, rel=JET_NOISE):
    """How far the omega ratio moves when the S-jet is perturbed by ``rel``.

    Near dX/dt = 0 the chain rule for F', F'', F''' divides by a small number
    and float jet errors swamp the zero test.  A sample whose ratio moves by
    more than the tolerance cannot be decided in floats.
    """
    S = profile.jet(t, PROFILE_ORDER)
    n = len(S.c)
    worst = 0.0
    for pattern in ([1] * n, [(-1) ** k for k in range(n)], [1 if k % 3 else -1 for k in range(n)]):
        bumped = Jet1([c * (1 + rel * s) for c, s in zip(S.c, pattern)], S.t0)
        try:
            moved = omega(frame_from_jet(bumped), table=table).ratio
        except WebcheckError:
            return math.inf
        worst = max(worst, abs(moved - ratio))
    return worst


def well_conditioned(profile, sample_count=5, spacing=0.01, tol=DEFAULT_TOL, table=DEFAULT_TABLE):
    """True when every float decision sample is well placed for the zero test.

    The ratio noise must stay below the margin and X must not exceed
    ``X_PREFERRED_MAX``.
    """
    if profile.flat:
        return True
    for t in sample_points(profile.t0, sample_count, spacing):
        try:
            fr = invariant_frame(profile, t)
            w = omega(fr, table=table)
        except WebcheckError:
            continue
        if abs(fr.X) > X_PREFERRED_MAX:
            return False
        if not w.exact and ratio_noise(profile, t, w.ratio, table) > NOISE_MARGIN * tol:
            return False
    return True


def decide_linearizable(profile, sample_count=5, tol=DEFAULT_TOL, spacing=None, table=DEFAULT_TABLE):
    """Theorem-level decision from ``sample_count`` frames along the profile.

    Samples hitting rho = 0, X in {0, 9/4} or dX/dt = 0 are skipped, as are
    float samples whose ratio is not stable under jet noise; when every
    sample is skipped the verdict is Degenerate.  A single nonzero omega makes
    the web non-linearizable.
    """
    if sample_count < 3:
        raise InvalidInput("sample_count must be at least 3")
    if profile.flat:
        return LinVerdict("Flat", reason="d^2/dt^2 log S vanishes")
    if spacing is None:
        spacing = Fraction(1, 20) if is_exact(profile.t0) else 0.05
    diags = []
    worst = 0.0
    counts = []
    rho_hits = 0
    for t in sample_points(profile.t0, sample_count, spacing):
        rec = {"t": t}
        try:
            fr = invariant_frame(profile, t)
            rec.update(X=fr.X, F=fr.F, F1=fr.F1, F2=fr.F2, F3=fr.F3)
            rec["rho"] = rho(fr.X, fr.F, fr.F1)
            w = omega(fr, table=table)
        except RhoLocus as exc:
            rho_hits += 1
            rec["skipped"] = type(exc).__name__
            diags.append(rec)
            continue
        except (SingularX, StationaryX, DegenerateLeadingCoeff, DegenerateNormalization) as exc:
            rec["skipped"] = type(exc).__name__
            diags.append(rec)
            continue
        rec.update(omega=w.value, ratio=w.ratio, scale=w.scale)
        if not w.exact:
            noise = ratio_noise(profile, t, w.ratio, table)
            rec["noise"] = noise
            if noise > NOISE_MARGIN * tol:
                rec["skipped"] = "IllConditioned"
                diags.append(rec)
                continue
        zero = w.is_zero(tol)
        rec["gcd_degree"] = count_linearizations(fr, table=table) if zero else 0
        worst = max(worst, w.ratio)
        diags.append(rec)
        if not zero:
            return LinVerdict("NonLinearizable", 0, w.ratio, tuple(diags))
        counts.append(rec["gcd_degree"])
    if not counts:
        reason = "rho-identically-zero" if rho_hits == sample_count else "no admissible sample"
        return LinVerdict("Degenerate", 0, 0.0, tuple(diags), reason)
    count = min(counts)
    reason = ""
    if count == 0:
        # omega vanished to tolerance but the common root was not resolved in floats
        count = max(1, max(counts))
        reason = "common root not resolved at the root-matching tolerance"
    return LinVerdict("Linearizable", count, worst, tuple(diags), reason)


# -- appendix self-verification -------------------------------------------------
@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    checked: int
    witness: dict = field(default_factory=dict)


def random_frame(rng, symbolic=()):
    """Random admissible rational frame (X, F, F', F'', F''').

    Names listed in ``symbolic`` become MultiPoly variables.  X avoids 0 and
    9/4 and the leading coefficients E5, H6 do not vanish.
    """
    while True:
        X = Fraction(rng.randint(1, 40), rng.randint(1, 9))
        if 4 * X - 9 == 0:
            continue
        vals = [X] + [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(4)]
        if rho(*vals[:3]) == 0:
            continue
        E = coeffs_E(*vals[:4])
        H = coeffs_H(*vals)
        if E[-1] == 0 or H[-1] == 0:
            continue
        return tuple(MultiPoly.var(n) if n in symbolic else v for n, v in zip(VARS, vals))


def _oracle_property(trials, rng, table):
    zs = [Fraction(k, 7) for k in (-9, -4, 1, 5, 11, 23)]
    checked = 0
    for _ in range(trials):
        X, F, F1, F2, F3 = random_frame(rng)
        E = coeffs_E(X, F, F1, F2, table)
        H = coeffs_H(X, F, F1, F2, F3, table)
        for Z in zs:
            if sigma(X, Z) == 0:
                continue
            e, h = _eval_poly(E, Z), _eval_poly(H, Z)
            c = compatibility_oracle(X, (F, F1, F2), Z)
            d = h_oracle(X, (F, F1, F2, F3), Z, table)
            checked += 1
            if c != ORACLE_E_CONSTANT * e:
                return PropertyResult("oracle-proportionality", False, checked,
                                      {"poly": "E", "frame": (X, F, F1, F2, F3), "Z": Z, "oracle": c, "table": e})
            if d != ORACLE_H_CONSTANT * h:
                return PropertyResult("oracle-proportionality", False, checked,
                                      {"poly": "H", "frame": (X, F, F1, F2, F3), "Z": Z, "oracle": d, "table": h})
    return PropertyResult("oracle-proportionality", True, checked)


def resultant_in_X(F, F1, F2, F3, table=DEFAULT_TABLE):
    """R as a polynomial in X at rational (F, F', F'', F''')."""
    X = MultiPoly.var("X")
    return resultant_EH(X, F, F1, F2, F3, table=table)


def factor_quotient(R, F, F1, rho_power=6):
    """(quotient, remainder) of R by (4X-9)^20 X^26 rho^rho_power in Q[X]."""
    X = MultiPoly.var("X")
    norm = (4 * X - 9) ** 20 * X ** 26 * rho(X, F, F1) ** rho_power
    return R.divmod(norm)


def _factor_property(trials, rng, table):
    for k in range(trials):
        _, F, F1, F2, F3 = random_frame(rng)
        R = resultant_in_X(F, F1, F2, F3, table)
        _, rem = factor_quotient(R, F, F1)
        if not rem.is_zero():
            return PropertyResult("exact-factorization", False, k + 1,
                                  {"F": F, "F1": F1, "F2": F2, "F3": F3, "remainder_degree": rem.degree("X")})
    return PropertyResult("exact-factorization", True, trials)


def _quintic_property(trials, rng, table):
    for k in range(trials):
        X, F, F1, F2, _ = random_frame(rng)
        w = omega(X, F, F1, F2, MultiPoly.var("F3"), table=table).value
        deg = w.degree("F3") if isinstance(w, MultiPoly) else 0
        lead = _collapse(w.leading_coeff("F3")) if isinstance(w, MultiPoly) else w
        want = X ** 11 * (4 * X - 9) ** 8
        if deg != 5 or lead != want:
            return PropertyResult("quintic-leading-coefficient", False, k + 1,
                                  {"frame": (X, F, F1, F2), "degree": deg, "leading": lead, "expected": want})
    return PropertyResult("quintic-leading-coefficient", True, trials)


def _euclid_property(trials, rng, table):
    for k in range(trials):
        frame = random_frame(rng)
        rem = euclid_step(*frame, table=table)
        deg = len(rem) - 1
        count = count_linearizations(*frame, table=table)
        if deg > 4 or count > 4:
            return PropertyResult("euclid-degree", False, k + 1,
                                  {"frame": frame, "remainder_degree": deg, "count": count})
    return PropertyResult("euclid-degree", True, trials)


def verify_appendix(trials=10, seed=0, table=DEFAULT_TABLE):
    """The four table properties: oracle proportionality, exact factorisation
    of R, quintic structure in F''' and the Euclid degree bound."""
    import random
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    rng = random.Random(seed)
    return [_oracle_property(trials, rng, table), _factor_property(trials, rng, table),
            _quintic_property(trials, rng, table), _euclid_property(trials, rng, table)]
