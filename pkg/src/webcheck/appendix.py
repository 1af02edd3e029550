"""Coefficient table of the compatibility polynomials E(Z) and H(Z).

E has degree 5 and H degree 6 in Z; their coefficients are polynomials in
X and the derivatives F, F', F'', F''' of the invariant F(X), stored here as
:class:`MultiPoly` objects in the ring ``(X, F, F1, F2, F3)``.  This module is
the only place the formulas are written down.  Every coefficient is
certified by the total-derivative oracles in :mod:`webcheck.criterion`.

Transcription note: the printed H1 contains a lowercase ``18x^2`` factor in
the ``F1**2`` term; it is read as ``18 X**2`` (the oracle confirms it).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .polycore import MultiPoly, gens

__all__ = ["VARS", "CoefficientTable", "DEFAULT_TABLE", "corrupted"]

VARS = ("X", "F", "F1", "F2", "F3")

X, F, F1, F2, F3 = gens(*VARS)
A = 4 * X - 9

E5 = 81 * A**3
E4 = -324 * X * A**2
E3 = -27 * X**2 * A * (X * A**2 * F1 + 2 * X * A**2 * F**2 + (6 * X - 13) * A * F - 12)
E2 = -3 * X**2 * A * (
    3 * X**2 * A**2 * F2 + 21 * X**2 * A**2 * F * F1 + 6 * X * A * (2 * X - 9) * F1
    + 18 * X**2 * A**2 * F**3 + 42 * X * A * (X - 3) * F**2
    + (-108 * X**2 + 144 * X + 54) * F - 8)
E1 = 3 * X**3 * (
    8 * X**2 * A**2 * F2 + 53 * X**2 * A**2 * F * F1 + 2 * X * (40 * X - 69) * A * F1
    + 42 * X**2 * A**2 * F**3 + 2 * X * (95 * X - 153) * A * F**2
    + (108 - 180 * X) * F - 16)
E0 = X**4 * (
    -16 * X**2 * A * F2 + 3 * X**2 * A**2 * F1**2 + 12 * X**2 * A**2 * F**2 * F1
    - 4 * X * (16 * X + 9) * A * F * F1 - 24 * X * (8 * X - 9) * F1
    + 12 * X**2 * A**2 * F**4 - 72 * X * A * F**3
    + (108 + 240 * X - 300 * X**2) * F**2 - (48 * X + 16) * F)

H6 = -243 * A**4 * (5 * X * A * F - 12 * X + 30)
H5 = 81 * X * A**3 * (73 * X * A * F - 192 * X + 486)
H4 = 27 * X**2 * A**2 * (
    -3 * X**2 * A**3 * F2 - 3 * X**2 * A**3 * F * F1 - 9 * X * (10 * X - 21) * A**2 * F1
    + 18 * X**2 * A**3 * F**3 - 3 * X * (30 * X - 61) * A**2 * F**2
    - 2 * A * (180 * X**2 - 578 * X + 747) * F + 1008 * X - 2592)
H3 = 9 * X**2 * A * (
    -3 * X**3 * A**4 * F3 - 15 * X**3 * A**4 * F * F2 - 6 * X**2 * (14 * X - 33) * A**3 * F2
    - 21 * X**3 * A**4 * F1**2 - 12 * X**3 * A**4 * F**2 * F1
    - 3 * X**2 * (215 * X - 384) * A**3 * F * F1
    + 6 * X * (30 * X**2 + 121 * X - 360) * A**2 * F1
    + 36 * X**3 * A**4 * F**4 - 102 * X**2 * (5 * X - 6) * A**3 * F**3
    - 9 * X * (102 * X**2 - 461 * X + 534) * A**2 * F**2
    + 2 * A * (1800 * X**3 - 6548 * X**2 + 5445 * X + 810) * F
    + 2160 + 2712 * X - 1344 * X**2)
H2 = -3 * A * X**3 * (
    -36 * X**3 * A**3 * F3 - 189 * X**3 * A**3 * F * F2 - 18 * X**2 * (72 * X - 133) * A**2 * F2
    - 216 * X**3 * A**3 * F1**2 - 117 * X**3 * A**3 * F**2 * F1
    - 18 * X**2 * (424 * X - 737) * A**2 * F * F1
    - 72 * X * A * (90 * X**2 - 370 * X + 357) * F1
    + 414 * X**3 * A**3 * F**4 - 18 * X**2 * (221 * X - 359) * A**2 * F**3
    - 18 * X * A * (1002 * X**2 - 3484 * X + 2985) * F**2
    + (8640 * X**3 - 22040 * X**2 - 5328 * X + 16524) * F - 2448 + 960 * X)
H1 = -X**4 * (
    144 * X**3 * A**3 * F3 + 792 * X**3 * A**3 * F * F2 + 48 * X**2 * (116 * X - 201) * A**2 * F2
    + 54 * X**3 * A**4 * F * F1**2 + 18 * X**2 * (34 * X + 15) * A**3 * F1**2
    + 216 * X**3 * A**4 * F**3 * F1 + 9 * X**2 * (61 * X + 48) * A**3 * F**2 * F1
    + 12 * X * (2336 * X**2 - 3921 * X - 270) * A**2 * F * F1
    + 36 * X * A * (1040 * X**2 - 3560 * X + 2709) * F1
    + 216 * X**3 * A**4 * F**5 - 18 * X**2 * (43 * X + 12) * A**3 * F**4
    + 18 * X * (619 * X**2 - 1027 * X - 252) * A**2 * F**3
    + 24 * A * (3054 * X**3 - 9961 * X**2 + 7146 * X + 405) * F**2
    + (11520 * X**3 - 83264 * X**2 + 148536 * X - 27864) * F + 6048 - 2304 * X)
H0 = X**5 * (
    64 * X**3 * A**2 * F3 + 368 * X**3 * A**2 * F * F2 + 160 * X**2 * (16 * X - 27) * A * F2
    + 63 * X**3 * A**3 * F * F1**2 + 14 * X**2 * (8 * X + 27) * A**2 * F1**2
    + 252 * X**3 * A**3 * F**3 * F1 + 4 * X**2 * (64 * X + 189) * A**2 * F**2 * F1
    + 8 * X * A * (1336 * X**2 - 2025 * X - 567) * F * F1 + 16 * X * (300 * X - 269) * A * F1
    + 252 * X**3 * A**3 * F**5 + 192 * X**3 * A**2 * F**4
    + 4 * X * (7 * X + 9) * (95 * X - 189) * A * F**3
    + (13608 - 86904 * X**2 + 41904 * X + 28800 * X**3) * F**2
    + (3840 * X**2 - 7840 * X - 2016) * F)


@dataclass(frozen=True)
class CoefficientTable:
    """E0..E5 and H0..H6, lowest degree first."""

    E: tuple
    H: tuple


DEFAULT_TABLE = CoefficientTable(E=(E0, E1, E2, E3, E4, E5), H=(H0, H1, H2, H3, H4, H5, H6))


def corrupted(table=DEFAULT_TABLE, which="E", index=0, delta=None):
    """Copy of ``table`` with one coefficient perturbed (negative control fixture).

    ``delta`` defaults to ``X**2 * F`` which vanishes nowhere in the admissible
    region, so the corruption is visible at every sample point.
    """
    if delta is None:
        delta = X**2 * F
    coeffs = list(getattr(table, which))
    coeffs[index] = coeffs[index] + delta
    return replace(table, **{which: tuple(coeffs)})
