"""Planar Schwarzian derivative, its differential syzygies and the Hénaut residuals.

A plane map ``(x, y) -> (phi1, phi2)`` is given by two callables that accept
``Jet2`` arguments.  Everything is computed by jet arithmetic: the Schwarzian
at a point needs third-order jets of the map, the Schwarzian as a field with
second derivatives (for the syzygies) needs fifth-order jets.

The four independent components are ``K = S^1_11``, ``L = S^1_22``,
``M = S^2_11`` and ``N = S^2_22``; the others follow from symmetry in the
lower indices and the trace condition, ``S^2_12 = -K`` and ``S^1_12 = -N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DegenerateWeb, SingularMap
from .expr import parse
from .polycore import Jet2

__all__ = [
    "PlaneMap",
    "SchwarzianKLMN",
    "KLMNField",
    "schwarzian_of_map",
    "schwarzian_field",
    "syzygy_residuals",
    "henaut_residuals",
    "linearity_residuals",
    "pullback_slopes",
    "projective_map",
]


def _xy(point, order):
    return Jet2.x(point, order), Jet2.y(point, order)


def _lift(v, point, order):
    return v if isinstance(v, Jet2) else Jet2.constant(v, point, order)


@dataclass(frozen=True)
class PlaneMap:
    """Components ``phi1(x, y)`` and ``phi2(x, y)`` evaluable on jets."""

    phi1: Callable
    phi2: Callable

    @classmethod
    def from_exprs(cls, first, second):
        """Build a map from two expression strings in ``x`` and ``y``."""
        a, b = parse(first, ("x", "y")), parse(second, ("x", "y"))
        return cls(lambda x, y: a.evaluate({"x": x, "y": y}),
                   lambda x, y: b.evaluate({"x": x, "y": y}))

    def jets(self, point, order):
        x, y = _xy(point, order)
        return _lift(self.phi1(x, y), point, order), _lift(self.phi2(x, y), point, order)

    def __call__(self, x, y):
        return self.phi1(x, y), self.phi2(x, y)

    def compose(self, outer):
        """The map ``outer o self``."""
        return PlaneMap(lambda x, y: outer.phi1(*self(x, y)),
                        lambda x, y: outer.phi2(*self(x, y)))


def projective_map(matrix):
    """The projective transformation of a 3x3 matrix acting on (x, y, 1)."""
    (a, b, c), (d, e, f), (g, h, i) = matrix

    def w(x, y):
        return g * x + h * y + i

    return PlaneMap(lambda x, y: (a * x + b * y + c) / w(x, y),
                    lambda x, y: (d * x + e * y + f) / w(x, y))


@dataclass(frozen=True)
class SchwarzianKLMN:
    K: object
    L: object
    M: object
    N: object

    def as_tuple(self):
        return (self.K, self.L, self.M, self.N)

    def tensor(self):
        """Full components ``S[k][i][j]`` (0-based) rebuilt from K, L, M, N."""
        K, L, M, N = self.as_tuple()
        return [[[K, -N], [-N, L]],
                [[M, -K], [-K, N]]]


def _schwarzian_jets(phi, order):
    """Schwarzian components as Jet2 of ``order`` from map jets of ``order + 3``."""
    p1, p2 = phi
    J = [[p1.dx(), p1.dy()], [p2.dx(), p2.dy()]]
    D = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    if D.value == 0:
        raise SingularMap("Jacobian determinant vanishes")
    inv_D = 1 / D
    # du^k / dphi^l
    inv = [[J[1][1] * inv_D, -J[0][1] * inv_D],
           [-J[1][0] * inv_D, J[0][0] * inv_D]]
    dlog = [D.dx() * inv_D, D.dy() * inv_D]
    second = [[[p.dx().dx(), p.dx().dy()], [p.dy().dx(), p.dy().dy()]] for p in (p1, p2)]

    def S(k, i, j):
        out = second[0][i][j] * inv[k][0] + second[1][i][j] * inv[k][1]
        if k == i:
            out = out - dlog[j] / 3
        if k == j:
            out = out - dlog[i] / 3
        return out.truncate(order)

    return S(0, 0, 0), S(0, 1, 1), S(1, 0, 0), S(1, 1, 1)


def schwarzian_field(plane_map, point, order=2):
    """(K, L, M, N) as Jet2 of ``order`` at ``point``."""
    return _schwarzian_jets(plane_map.jets(point, order + 3), order)


def schwarzian_of_map(plane_map, point):
    """Values of (K, L, M, N) at ``point``."""
    return SchwarzianKLMN(*(c.value for c in schwarzian_field(plane_map, point, 0)))


@dataclass(frozen=True)
class KLMNField:
    """Four functions of (x, y) evaluable on Jet2 arguments."""

    K: Callable
    L: Callable
    M: Callable
    N: Callable

    @classmethod
    def from_map(cls, plane_map):
        """The Schwarzian of ``plane_map`` as a field.

        Each component is recomputed from scratch; use ``jets`` to get all
        four at once.
        """
        def component(idx):
            def f(x, y):
                order = x.order if isinstance(x, Jet2) else 0
                return schwarzian_field(plane_map, (_value(x), _value(y)), order)[idx]
            return f

        field = cls(*(component(k) for k in range(4)))
        object.__setattr__(field, "_map", plane_map)
        return field

    def jets(self, point, order=2):
        plane_map = getattr(self, "_map", None)
        if plane_map is not None:
            return schwarzian_field(plane_map, point, order)
        x, y = _xy(point, order)
        return tuple(_lift(f(x, y), point, order) for f in (self.K, self.L, self.M, self.N))


def _value(v):
    return v.value if isinstance(v, Jet2) else v


def syzygy_residuals(field, point):
    """Left-hand sides of the two Tresse-Liouville equations at ``point``."""
    K, L, M, N = field.jets(point, 2)

    def d(f, i, j):
        return f.partial(i, j)

    k, l, m, n = K.value, L.value, M.value, N.value
    r1 = (2 * d(K, 1, 1) + d(M, 0, 2) + d(N, 2, 0) - 6 * k * d(K, 0, 1) + 2 * m * d(L, 1, 0)
          + l * d(M, 1, 0) + 3 * n * d(M, 0, 1) - 3 * k * d(N, 1, 0) + 3 * m * d(N, 0, 1))
    r2 = (d(K, 0, 2) + d(L, 2, 0) + 2 * d(N, 1, 1) + 3 * l * d(K, 1, 0) - 3 * n * d(K, 0, 1)
          + 3 * k * d(L, 1, 0) + m * d(L, 0, 1) + 2 * l * d(M, 0, 1) - 6 * n * d(N, 1, 0))
    return r1, r2


def _slope_jets(slopes, point):
    x, y = _xy(point, 1)
    out = [_lift(s(x, y), point, 1) for s in slopes]
    if len(out) != 3:
        raise DegenerateWeb("a 3-web needs exactly three slope fields")
    vals = [j.value for j in out]
    scale = max(1, *(abs(v) for v in vals))
    for a in range(3):
        for b in range(a + 1, 3):
            if abs(vals[a] - vals[b]) <= 1e-12 * scale:
                raise DegenerateWeb(f"directions {a + 1} and {b + 1} coincide")
    return out


def _transport(lam):
    # V(lambda) = lambda_x + lambda * lambda_y
    return lam.partial(1, 0) + lam.value * lam.partial(0, 1)


def linearity_residuals(slopes, point):
    """``V_i(lambda_i)`` for the three slope fields; all vanish iff the web is linear."""
    return tuple(_transport(lam) for lam in _slope_jets(slopes, point))


def henaut_residuals(slopes, klmn, point):
    """``L l^3 - 3 N l^2 + 3 K l - M - V_i(l)`` with ``l = lambda_i`` for each family."""
    K, L, M, N = klmn.as_tuple() if isinstance(klmn, SchwarzianKLMN) else klmn
    out = []
    for lam in _slope_jets(slopes, point):
        v = lam.value
        out.append(L * v ** 3 - 3 * N * v ** 2 + 3 * K * v - M - _transport(lam))
    return tuple(out)


def pullback_slopes(plane_map, slopes):
    """Slopes of the web whose image under ``plane_map`` has the given slopes.

    A direction ``(1, l)`` is carried by the Jacobian to a direction of slope
    ``mu(phi)``; solving for ``l`` gives
    ``l = (mu phi1_x - phi2_x) / (phi2_y - mu phi1_y)``.
    """
    def pulled(mu):
        def lam(x, y):
            order = x.order + 1 if isinstance(x, Jet2) else 1
            point = (_value(x), _value(y))
            p1, p2 = plane_map.jets(point, order)
            # recompose with the caller's jets so higher derivatives stay consistent
            u, v = plane_map(x, y) if isinstance(x, Jet2) else (p1.value, p2.value)
            m = mu(u, v)
            a1x, a1y, a2x, a2y = (_at(j, x) for j in (p1.dx(), p1.dy(), p2.dx(), p2.dy()))
            return (m * a1x - a2x) / (a2y - m * a1y)
        return lam

    return [pulled(mu) for mu in slopes]


def _at(jet, x):
    """Re-express a jet derivative at the caller's jet arguments (same base point)."""
    if isinstance(x, Jet2):
        return jet.truncate(x.order)
    return jet.value
