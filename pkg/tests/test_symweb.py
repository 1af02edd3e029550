import math
import random
from fractions import Fraction

import numpy as np
import pytest

from webcheck import catalog
from webcheck.errors import (
    DegenerateNormalization, FlatWeb, SingularS, SingularX, StationaryX, SymmetryTangent,
)
from webcheck.expr import parse_profile
from webcheck.polycore import Jet1
from webcheck.symweb import (
    KNState, LineFamily, SymmetricWeb, X_of_S, cartan_normalize, eqz_system, henaut_symmetric_residual,
    invariant_frame, kn_flow, kn_integrals, make_profile, perturb_profile, profile_fd_oracle,
    s3_generator_a, s3_generator_b, s3_orbit, uv_from_kn, xuv_integrals,
)


def profile(text, t0):
    return make_profile(parse_profile(text), t0)


# -- profiles -------------------------------------------------------------------
def test_exponential_profile_is_flat():
    # S(0) = 1 is excluded by the normalisation, so the check runs at t0 = 1
    assert profile("exp(t)", 1).flat
    with pytest.raises(DegenerateNormalization):
        profile("exp(t)", 0)


def test_gaussian_profile_is_not_flat():
    assert not profile("exp(t^2)", 1).flat


def test_constant_profile_is_flat():
    assert profile("2", 0).flat


# -- invariants -----------------------------------------------------------------
def test_X_values():
    assert X_of_S(Fraction(2)) == Fraction(9, 4)
    assert X_of_S(Fraction(3)) == Fraction(343, 108)


def test_frame_at_S_two_is_stationary():
    with pytest.raises(StationaryX):
        invariant_frame(profile("2+t", 0))


def test_frame_exact_rational():
    fr = invariant_frame(profile("3+t", 0))
    assert fr.X == Fraction(343, 108)
    assert fr.U == Fraction(1, 9)
    assert isinstance(fr.F, Fraction) and fr.F != 0


def test_flat_profile_has_no_frame():
    with pytest.raises(FlatWeb):
        invariant_frame(profile("exp(t)", 1))


# -- S3 action ------------------------------------------------------------------
def test_orbit_of_two():
    vals = [p.value() for p in s3_orbit(profile("2", 0))]
    assert vals == [2, Fraction(1, 2), 2, Fraction(1, 2), -1, -1]
    assert all(X_of_S(Fraction(v)) == Fraction(9, 4) for v in vals)


def test_orbit_of_three():
    vals = [Fraction(p.value()) for p in s3_orbit(profile("3+t", 0))]
    assert set(vals) == {3, Fraction(1, 3), Fraction(3, 2), Fraction(2, 3), Fraction(-1, 2), -2}
    assert all(X_of_S(v) == Fraction(343, 108) for v in vals)


def test_orbit_of_flat_profile_is_flat():
    assert all(p.flat for p in s3_orbit(profile("2", 0)))


def test_generators_are_involutions():
    S = Jet1([Fraction(3), Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5), 0, Fraction(2, 7)], 0)
    assert s3_generator_a(s3_generator_a(S)).c == S.c
    assert s3_generator_b(s3_generator_b(S)).c == S.c


def test_orbit_frames_share_X():
    rng = random.Random(4)
    # S(0) = 7/2 keeps every orbit value away from the stationary set {2, 1/2, -1}
    coeffs = [Fraction(7, 2)] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(5)]
    coeffs[1] = coeffs[1] or Fraction(1)
    text = "+".join(f"({c})*t^{k}" for k, c in enumerate(coeffs))
    Xs = {invariant_frame(p).X for p in s3_orbit(profile(text, 0))}
    assert len(Xs) == 1


# -- K, N system ----------------------------------------------------------------
def test_henaut_symmetric_examples():
    assert henaut_symmetric_residual(2, 1, 0, dS=3) == 9
    assert henaut_symmetric_residual(Fraction(5), 0, 0, dS=0) == 0
    S, dS, N = Fraction(3), Fraction(2), Fraction(1, 7)
    K = S * N + (1 - S) * dS / (3 * S)
    assert henaut_symmetric_residual(S, K, N, dS=dS) == 0


def test_integrals_of_constant_states():
    assert kn_integrals(1, 1, 0, 0) == (1, 2)
    assert kn_integrals(0, 0, 0, 0) == (0, 0)


def test_stationary_flow():
    tr = kn_flow(KNState(0.0, 1.0, 1.0, 0.0, 0.0), 1.0)
    assert np.allclose(tr.states, [1, 1, 0, 0])
    assert tr.I1[0] == 1 and tr.I2[0] == 2


def test_zero_flow():
    tr = kn_flow(KNState(0.0, 0.0, 0.0, 0.0, 0.0), 1.0)
    assert not tr.states.any()


def test_flow_conserves_integrals():
    tr = kn_flow(KNState(0.0, 1.0, 0.0, 0.0, 1.0), 1.0)
    assert tr.I1[0] == 2
    d1, d2 = tr.drift()
    assert d1 <= 1e-9 and d2 <= 1e-9


def test_uv_examples():
    assert uv_from_kn(3, 0, 1) == (Fraction(3, 2), Fraction(49, 120))
    U, V = uv_from_kn(5, Fraction(2, 3), Fraction(2, 3))
    assert U == Fraction(2, 3) and V == 0
    with pytest.raises(SingularS):
        uv_from_kn(2, 0, 1)


def test_xuv_examples():
    assert xuv_integrals(1, 0, 1, 5, 7) == (-45, 675)
    assert xuv_integrals(2, 0, 0, 3, 4) == (0, 0)
    with pytest.raises(SingularX):
        xuv_integrals(0, 1, 1, 0, 0)


def test_eqz_examples():
    Zp, Zpp, res = eqz_system(3, 1, 0, 0)
    assert Zp == 0
    assert res == (0, 0)
    with pytest.raises(SingularX):
        eqz_system(Fraction(9, 4), 1, 0, 0)


# -- Cartan normalisation -------------------------------------------------------
def _parallel(c):
    return LineFamily(lambda t: (1, c, t), lambda t: (0, 0, 1), lambda x, y: [y - c * x])


def test_parallel_web_normalises_to_constant_profile():
    # Y must be transverse to every family, so d/dy rather than d/dx
    web = SymmetricWeb((_parallel(0), _parallel(1), _parallel(-1)), lambda x, y: (0, 1))
    prof = cartan_normalize(web, (0.2, 0.3))
    assert prof.flat
    assert all(abs(c) < 1e-12 for c in prof.jet(0).c[1:])


def test_tangent_symmetry_rejected():
    web = SymmetricWeb((_parallel(0), _parallel(1), _parallel(-1)), lambda x, y: (1, 0))
    with pytest.raises(SymmetryTangent):
        cartan_normalize(web, (0.2, 0.3))


def test_hexagonal_catalog_web_normalises_flat():
    prof, _ = catalog.normalized_profile(catalog.instantiate("Xi1:hex"))
    assert prof.flat


def test_cartan_jets_match_finite_difference_oracle():
    web = catalog.instantiate("Xi1:2")
    prof, bp = catalog.normalized_profile(web)
    assert not prof.flat
    point = (bp.x, bp.y)
    derivs = profile_fd_oracle(web.to_symmetric_web(), point, catalog.choice_for(web, point, bp.params), dps=30)
    jet = prof.jet(0)
    for k, d in enumerate(derivs):
        assert abs(jet.derivative(k) - d) <= 1e-8 * max(1.0, abs(d))


def test_perturbed_profile_differs_at_third_order():
    base = profile("exp(t^2)", 1)
    pert = perturb_profile(base, Fraction(1, 10))
    a, b = base.jet(), pert.jet()
    assert a.c[:3] == b.c[:3]
    assert abs(b.c[3] - a.c[3] - 0.1) < 1e-12
    assert not math.isclose(a.c[3], b.c[3])
