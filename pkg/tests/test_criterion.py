import random
from fractions import Fraction

import numpy as np
import pytest

from webcheck import catalog
from webcheck.appendix import corrupted
from webcheck.criterion import (
    ORACLE_E_CONSTANT, LinVerdict, coeffs_E, coeffs_H, compatibility_oracle, count_linearizations,
    decide_linearizable, euclid_step, factor_quotient, h_oracle, omega, random_frame, resultant_EH,
    resultant_in_X, rho, sigma, tau, tau_sigma, verify_appendix,
)
from webcheck.errors import InvalidInput, SingularX
from webcheck.expr import parse_profile
from webcheck.polycore import MultiPoly
from webcheck.symweb import invariant_frame, make_profile

Fr = Fraction


# -- coefficient tables ---------------------------------------------------------
def test_E_examples():
    assert coeffs_E(3, Fr(1, 2), 1, 2)[5] == 2187
    assert coeffs_E(Fr(9, 4), 0, 0, 0) == (0, Fr(-2187, 4), 0, 0, 0, 0)
    assert coeffs_E(Fr(5, 7), 0, 0, 0)[0] == 0


def test_E5_is_cubic_in_4X_minus_9():
    for X in (Fr(1, 3), 2, Fr(17, 5)):
        assert coeffs_E(X, 1, 2, 3)[5] == 81 * (4 * X - 9) ** 3


def test_H_examples():
    assert coeffs_H(3, 0, 1, 2, 3)[6] == 118098
    assert coeffs_H(Fr(9, 4), 1, 2, 3, 4)[4:] == (0, 0, 0)
    assert coeffs_H(1, 0, 0, 0, 0)[6] == -2733750


def test_H_structure():
    X, F = Fr(5, 3), Fr(-2, 7)
    base = coeffs_H(X, F, 1, 2, 3)
    # H6 depends on (X, F) only
    assert coeffs_H(X, F, 4, 5, 6)[6] == base[6]
    # F''' is linear and confined to H0..H3
    shifted = coeffs_H(X, F, 1, 2, 4)
    twice = coeffs_H(X, F, 1, 2, 5)
    for k in range(7):
        d1, d2 = shifted[k] - base[k], twice[k] - shifted[k]
        assert d1 == d2
        if k > 3:
            assert d1 == 0


def test_rho_examples():
    assert rho(Fr(9, 4), 5, 7) == -8
    assert rho(Fr(11, 3), 0, 0) == -8
    assert rho(1, 1, 1) == 67


def test_tau_sigma_examples():
    assert sigma(Fr(9, 4), 5) == -9
    assert sigma(Fr(9, 4), Fr(-1, 3)) == -9
    assert tau(2, Fr(20, 84 * 2 - 189)) == 0
    assert tau(1, 0) == 36 * (-5) ** 6 * (-20) * 11856
    assert tau_sigma(1, 0, 5) == (tau(1, 0), sigma(1, 5))


# -- transcription oracles ------------------------------------------------------
def test_oracle_at_zero_jet():
    E = coeffs_E(3, 0, 0, 0)
    assert compatibility_oracle(3, (0, 0, 0), 1) == ORACLE_E_CONSTANT * sum(E)


def test_oracle_proportional_over_Z():
    rng = random.Random(2)
    X, F, F1, F2, F3 = random_frame(rng)
    E = coeffs_E(X, F, F1, F2)
    ratios = set()
    for Z in range(2, 8):
        e = sum(c * Fr(Z) ** k for k, c in enumerate(E))
        ratios.add(compatibility_oracle(X, (F, F1, F2), Z) / e)
    assert ratios == {ORACLE_E_CONSTANT}


def test_oracle_vanishes_at_roots_of_E():
    rng = random.Random(5)
    X, F, F1, F2, _ = (float(v) for v in random_frame(rng))
    E = coeffs_E(X, F, F1, F2)
    scale = max(abs(c) for c in E)
    for Z in np.roots(list(reversed(E))):
        val = compatibility_oracle(X, (F, F1, F2), complex(Z))
        # compare to the size of the oracle at a nearby non-root
        ref = abs(compatibility_oracle(X, (F, F1, F2), complex(Z) + 0.1))
        assert abs(val) <= 1e-9 * max(ref, scale)


def test_h_oracle_matches_table():
    rng = random.Random(9)
    X, F, F1, F2, F3 = random_frame(rng)
    H = coeffs_H(X, F, F1, F2, F3)
    for Z in (Fr(1, 3), 2, Fr(-5, 2)):
        assert h_oracle(X, (F, F1, F2, F3), Z) == sum(c * Fr(Z) ** k for k, c in enumerate(H))


def test_oracle_singular_X():
    with pytest.raises(SingularX):
        compatibility_oracle(Fr(9, 4), (1, 1, 1), 2)


# -- resultant ------------------------------------------------------------------
def test_resultant_divisible_by_fixed_factors():
    R = resultant_in_X(1, 0, 0, 0)
    X = MultiPoly.var("X")
    _, rem = R.divmod((4 * X - 9) ** 20 * X ** 26)
    assert rem.is_zero()


def test_resultant_factorization_with_rho_six():
    rng = random.Random(11)
    _, F, F1, F2, F3 = random_frame(rng)
    _, rem = factor_quotient(resultant_in_X(F, F1, F2, F3), F, F1, rho_power=6)
    assert rem.is_zero()


def test_resultant_quintic_in_F3():
    R = resultant_EH(3, 1, 1, 1, MultiPoly.var("F3"))
    assert R.degree("F3") == 5


def test_omega_leading_coefficient():
    rng = random.Random(1)
    X, F, F1, F2, _ = random_frame(rng)
    w = omega(X, F, F1, F2, MultiPoly.var("F3")).value
    assert w.degree("F3") == 5
    lead = w.leading_coeff("F3")
    lead = lead.constant_value() if isinstance(lead, MultiPoly) else lead
    assert lead == X ** 11 * (4 * X - 9) ** 8


def test_resultant_zero_on_shared_root():
    # at a linearizable catalog frame the float resultant is at rounding level
    web = catalog.instantiate("Xi1:1", {"lambda": 2})
    prof, _ = catalog.normalized_profile(web)
    w = omega(invariant_frame(prof, 0.0))
    assert w.ratio <= 1e-8


# -- omega ----------------------------------------------------------------------
def test_omega_exact_on_rational_frames():
    rng = random.Random(3)
    frame = random_frame(rng)
    w = omega(*frame)
    assert w.exact and isinstance(w.value, Fraction)
    assert w.value != 0


def test_omega_nonzero_for_gaussian_profile():
    prof = make_profile(parse_profile("exp(t^2)"), 1.0)
    w = omega(invariant_frame(prof))
    assert w.ratio > 1e3 * 1e-8


def test_float_and_exact_omega_agree():
    rng = random.Random(8)
    frame = random_frame(rng)
    exact = omega(*frame)
    approx = omega(*(float(v) for v in frame))
    assert abs(float(approx.value) - float(exact.value)) <= 1e-9 * abs(float(exact.value))


# -- decisions ------------------------------------------------------------------
def test_decide_catalog_form_linearizable():
    prof, _ = catalog.normalized_profile(catalog.instantiate("Xi32:4"))
    v = decide_linearizable(prof, spacing=0.01)
    assert v.kind == "Linearizable" and v.count >= 1


@pytest.mark.parametrize("t0", [1.0, 0.7])
def test_decide_gaussian_profile(t0):
    v = decide_linearizable(make_profile(parse_profile("exp(t^2)"), t0))
    assert v.kind == "NonLinearizable"


def test_decide_constant_profile():
    assert decide_linearizable(make_profile(parse_profile("2"), 0)).kind == "Flat"


def test_decide_needs_three_samples():
    with pytest.raises(InvalidInput):
        decide_linearizable(make_profile(parse_profile("exp(t^2)"), 1), sample_count=2)


def test_verdict_count_bounds():
    with pytest.raises(InvalidInput):
        LinVerdict("Linearizable", 0)
    with pytest.raises(InvalidInput):
        LinVerdict("Linearizable", 6)


def test_count_zero_for_random_frame():
    rng = random.Random(21)
    assert count_linearizations(*random_frame(rng)) == 0


def test_count_positive_on_catalog_frame():
    prof, _ = catalog.normalized_profile(catalog.instantiate("Xi1:2"))
    assert count_linearizations(invariant_frame(prof, 0.0)) >= 1


def test_euclid_step_degree():
    rng = random.Random(0)
    for _ in range(10):
        assert len(euclid_step(*random_frame(rng))) - 1 <= 4


# -- self-verification ----------------------------------------------------------
def test_verify_appendix_passes():
    results = verify_appendix(2, 1)
    assert [r.name for r in results] == [
        "oracle-proportionality", "exact-factorization", "quintic-leading-coefficient", "euclid-degree"]
    assert all(r.passed for r in results)


def test_verify_appendix_rejects_zero_trials():
    with pytest.raises(InvalidInput):
        verify_appendix(0)


def test_corrupted_table_fails_with_witness():
    res = verify_appendix(1, 1, table=corrupted(which="E", index=3))
    oracle = res[0]
    assert not oracle.passed
    assert oracle.witness["poly"] == "E"
