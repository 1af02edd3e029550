import random
from fractions import Fraction

import pytest

from webcheck import catalog
from webcheck.errors import DegenerateWeb, SingularMap
from webcheck.polycore import exp
from webcheck.schwarzian import (
    KLMNField, PlaneMap, SchwarzianKLMN, henaut_residuals, linearity_residuals, projective_map,
    pullback_slopes, schwarzian_of_map, syzygy_residuals,
)


def zero(x, y):
    return 0


def const(c):
    return lambda x, y: c


def test_identity_map_is_projective():
    s = schwarzian_of_map(PlaneMap(lambda x, y: x, lambda x, y: y), (Fraction(1, 3), 2))
    assert s.as_tuple() == (0, 0, 0, 0)


def test_quadratic_shear_exact():
    s = schwarzian_of_map(PlaneMap(lambda x, y: x, lambda x, y: y + x ** 2), (Fraction(2, 5), Fraction(-1, 7)))
    assert s.as_tuple() == (0, 0, 2, 0)


def test_projective_map_at_origin():
    phi = PlaneMap(lambda x, y: x / (1 + x), lambda x, y: y / (1 + x))
    assert schwarzian_of_map(phi, (0, 0)).as_tuple() == (0, 0, 0, 0)


@pytest.mark.parametrize("seed", range(5))
def test_random_projective_and_affine_maps(seed):
    rng = random.Random(seed)
    M = [[rng.uniform(-1, 1) for _ in range(3)] for _ in range(3)]
    M[2][2] = 3.0
    A = [[rng.uniform(-1, 1) for _ in range(3)] for _ in range(2)] + [[0, 0, 1]]
    A[0][0] += 2
    A[1][1] += 2
    point = (rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
    for matrix in (M, A):
        s = schwarzian_of_map(projective_map(matrix), point)
        assert max(abs(v) for v in s.as_tuple()) < 1e-12


def test_tensor_symmetry_and_trace():
    S = SchwarzianKLMN(1, 2, 3, 4).tensor()
    for k in range(2):
        assert S[k][0][1] == S[k][1][0]
    for i in range(2):
        assert sum(S[l][i][l] for l in range(2)) == 0


def test_singular_jacobian():
    with pytest.raises(SingularMap):
        schwarzian_of_map(PlaneMap(lambda x, y: x + y, lambda x, y: x + y), (0, 0))


def test_syzygy_zero_field():
    field = KLMNField(zero, zero, zero, zero)
    assert syzygy_residuals(field, (0.3, -0.2)) == (0, 0)


def test_syzygy_y_independent_K():
    field = KLMNField(lambda x, y: x, zero, zero, zero)
    r1, r2 = syzygy_residuals(field, (Fraction(1, 2), Fraction(1, 3)))
    assert (r1, r2) == (0, 0)


@pytest.mark.parametrize("phi", [
    ("x", "y + x^3"),
    ("x + y^2/3", "y + x*y/5"),
    ("exp(x/2) + y", "y - x^2/4"),
])
def test_syzygies_hold_for_genuine_schwarzians(phi):
    field = KLMNField.from_map(PlaneMap.from_exprs(*phi))
    for point in [(0.1, 0.2), (-0.3, 0.15)]:
        r1, r2 = syzygy_residuals(field, point)
        assert abs(r1) <= 1e-9 and abs(r2) <= 1e-9


def test_henaut_constant_slopes_identity():
    slopes = [const(0), const(1), const(2)]
    assert henaut_residuals(slopes, SchwarzianKLMN(0, 0, 0, 0), (0.5, 0.5)) == (0, 0, 0)


def test_henaut_pulled_back_parallel_web():
    slopes = [lambda x, y, c=c: c - 2 * x for c in (0, 1, 2)]
    assert henaut_residuals(slopes, SchwarzianKLMN(0, 0, 2, 0), (Fraction(1, 4), 3)) == (0, 0, 0)


def test_henaut_mismatched_schwarzian():
    slopes = [const(0), const(1), const(2)]
    assert henaut_residuals(slopes, SchwarzianKLMN(0, 0, 2, 0), (1, 1)) == (-2, -2, -2)


@pytest.mark.parametrize("phi", [("x", "y + x^2"), ("x + y^2/4", "y + x^3/3"), ("exp(x/3)", "y*(1 + x/5)")])
def test_pullback_of_parallel_web_satisfies_henaut(phi):
    plane_map = PlaneMap.from_exprs(*phi)
    slopes = pullback_slopes(plane_map, [const(0.0), const(1.0), const(-1.0)])
    point = (0.2, -0.1)
    klmn = schwarzian_of_map(plane_map, point)
    res = henaut_residuals(slopes, klmn, point)
    assert max(abs(v) for v in res) <= 1e-9


def test_linearity_residuals_examples():
    assert linearity_residuals([const(0), const(1), const(2)], (0.1, 0.2)) == (0, 0, 0)
    assert linearity_residuals([lambda x, y: x, const(1), const(2)], (Fraction(1, 2), 0)) == (1, 0, 0)


def test_linearity_of_catalog_web():
    web = catalog.instantiate("Xi1:3")
    bp = catalog.find_base_points(web, 1, seed=0, allow_complex=False)[0]
    fields, uv = catalog.slope_fields(web, (bp.x, bp.y))
    assert max(abs(v) for v in linearity_residuals(fields, uv)) < 1e-9


def test_coinciding_directions():
    with pytest.raises(DegenerateWeb):
        linearity_residuals([const(1), const(1), const(2)], (0, 0))


def test_from_exprs_matches_closure():
    a = schwarzian_of_map(PlaneMap.from_exprs("x", "y + exp(x)"), (0.1, 0.0))
    b = schwarzian_of_map(PlaneMap(lambda x, y: x, lambda x, y: y + exp(x)), (0.1, 0.0))
    assert all(abs(u - v) < 1e-14 for u, v in zip(a.as_tuple(), b.as_tuple()))
