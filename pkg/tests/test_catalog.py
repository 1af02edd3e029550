import json
import random
from fractions import Fraction

import pytest

from webcheck import catalog
from webcheck.errors import EmptyFamily, InvalidParameters, NoIntersection, NotProvided, SymmetryTangent
from webcheck.schwarzian import linearity_residuals

Fr = Fraction
ALGEBRAIC = ["Xi1:1", "Xi1:2", "Xi1:3", "Xi32:1", "Xi32:2", "Xi32:3", "Xi32:4", "Xi32:5", "Xi32:6"]


def coeff_list(poly):
    """Ascending coefficients of a univariate MultiPoly."""
    out = {}
    for exps, c in poly.terms.items():
        out[sum(exps)] = c
    return [out.get(k, 0) for k in range(max(out) + 1)]


def proportional(a, b):
    a, b = coeff_list(a), coeff_list(b)
    if len(a) != len(b):
        return False
    return all(x * b[-1] == y * a[-1] for x, y in zip(a, b))


def real_base(web, seed=0):
    bp = catalog.find_base_points(web, 1, seed=seed, allow_complex=False)[0]
    return bp.x, bp.y


# -- the table ------------------------------------------------------------------
def test_form_count_and_arities():
    forms = dict(catalog.list_forms())
    assert len(forms) == 26
    assert forms["Xi1:1"] == ("lambda",)
    assert forms["Xi1:2"] == () and forms["Xi1:3"] == ()
    xi33 = {k: v for k, v in forms.items() if k.startswith("Xi33")}
    assert len(xi33) == 9 and all("beta" in v for v in xi33.values())
    assert set(forms["Xi33:1"]) == {"beta", "lambda", "mu"}
    counts = {}
    for k in forms:
        counts[k.split(":")[0]] = counts.get(k.split(":")[0], 0) + 1
    assert counts == {"Xi1": 3, "Xi32": 6, "Xi23": 8, "Xi33": 9}


def test_operator_from_matrix_examples():
    op = catalog.operator_from_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert str(op) == "(q) d/dp + (1) d/dq"
    op = catalog.operator_from_matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    assert op(Fr(2), Fr(3)) == (2, -3)
    assert catalog.operator_from_matrix([[0] * 3] * 3).is_zero()


def test_operator_projective_terms():
    # a nonzero bottom row gives the quadratic terms
    op = catalog.operator_from_matrix([[0, 0, 0], [0, 0, 0], [1, 2, 0]])
    p, q = Fr(1, 2), Fr(3)
    assert op(p, q) == (-p * p - 2 * p * q, -p * q - 2 * q * q)


def test_instantiate_examples():
    web = catalog.instantiate("Xi1:3")
    kinds = [c.kind for c in web.curves]
    assert kinds == ["affine", "affine", "line_at_infinity"]
    web = catalog.instantiate("Xi32:4")
    assert [c.text() for c in web.curves] == ["(t, (1)/t)", "(t, 0)", "(0, 1/t)"]


@pytest.mark.parametrize("lam", [0, 1])
def test_inadmissible_lambda(lam):
    with pytest.raises(InvalidParameters):
        catalog.instantiate("Xi1:1", {"lambda": lam})


@pytest.mark.parametrize("beta", [0, 1, -1, 2, Fr(1, 2)])
def test_inadmissible_beta(beta):
    with pytest.raises(InvalidParameters):
        catalog.instantiate("Xi33:5", {"beta": beta})


def test_xi33_case_three_extra_exclusions():
    for beta in (3, Fr(1, 3), Fr(3, 2), Fr(2, 3)):
        with pytest.raises(InvalidParameters):
            catalog.instantiate("Xi33:3", {"beta": beta})


# -- incidence ------------------------------------------------------------------
def test_slopes_of_xi1_case3():
    sols = catalog.slopes_at(catalog.instantiate("Xi1:3"), (Fr(-3, 2), 0))
    fam1 = sorted(t for k, t, _ in sols if k == 0)
    fam3 = [t for k, t, _ in sols if k == 2]
    assert fam1 == pytest.approx([0, 3])
    assert fam3 == [Fr(3, 2)]


def test_slopes_of_parallel_pencil():
    sols = catalog.slopes_at(catalog.instantiate("Xi1:3"), (0.4, 1.0))
    assert [t for k, t, _ in sols if k == 2] == [pytest.approx(-0.4)]


def test_slopes_through_origin_pencil():
    sols = catalog.slopes_at(catalog.instantiate("Xi32:4"), (1, 2))
    assert [s for k, _, s in sols if k == 1] == [pytest.approx(2)]


def test_no_incident_line():
    web = catalog.instantiate("Xi1:2")
    with pytest.raises(EmptyFamily):
        catalog.slopes_at(web, (0.3, 0.7))


def test_web_equation_examples():
    web = catalog.instantiate("Xi1:3")
    assert catalog.web_equation_residual(web, 0, 1, Fr(3, 2)) == 0
    assert catalog.web_equation_residual(web, 0, 1, 2) != 0
    assert catalog._det3([(1, 0, 0), (1, 1, 0), (1, 0, 1)]) == 1
    assert catalog._det3([(1, 0, 0), (1, 1, 0), (1, 2, 0)]) == 0


def test_solve_third_examples():
    web = catalog.instantiate("Xi1:3")
    fam2 = sorted(t for t, _ in catalog.solve_third(web, 1, {0: 0, 2: Fr(3, 2)}))
    assert fam2 == pytest.approx([1, 2])
    assert catalog.solve_third(web, 2, {0: 0, 1: 1}) == [(Fr(3, 2), 1)]


def test_solve_third_parallel_lines():
    with pytest.raises(NoIntersection):
        catalog.solve_third(catalog.instantiate("Xi32:4"), 2, {0: 1, 1: 1})


# -- reductions -----------------------------------------------------------------
def test_reduction_residual_examples():
    assert catalog.reduction_residual("Xi1:3", Fr(3, 2), 1) == 0
    assert catalog.reduction_residual("Xi32:4", -2, 2) == 0
    for c in (-1.3, 0.2, 2.5):
        assert abs(catalog.reduction_residual("Xi23:7", c, c)) <= 1e-12


def test_reduction_residual_off_surface():
    assert catalog.reduction_residual("Xi1:3", 0, 0) == 2


@pytest.mark.parametrize("form_id", ["Xi1:3", "Xi32:4", "Xi23:7", "Xi33:5"])
def test_reduction_check_on_solutions(form_id):
    params = {"beta": 4} if form_id.startswith("Xi33") else None
    worst, samples = catalog.reduction_check(form_id, params, count=20, seed=1)
    assert len(samples) == 20
    assert worst <= 1e-9


def test_branch_examples():
    assert str(catalog.branch_polynomial("Xi1:3")) == "z_b^2 - 2"
    assert str(catalog.branch_polynomial("Xi32:4")) == "-4*z_b + 1"
    with pytest.raises(NotProvided):
        catalog.branch_polynomial("Xi23:1")


@pytest.mark.parametrize("form_id", [f for f in ALGEBRAIC if f != "Xi32:6"])
def test_branch_matches_discriminant(form_id):
    assert proportional(catalog.branch_polynomial(form_id), catalog.branch_discriminant(form_id))


def test_xi32_case6_branch_drops_root_at_zero():
    # disc(f, w) = z (z + 4); the printed branch polynomial keeps only z + 4
    disc = coeff_list(catalog.branch_discriminant("Xi32:6"))
    printed = coeff_list(catalog.branch_polynomial("Xi32:6"))
    assert disc == [0] + printed


# -- invariants -----------------------------------------------------------------
def sample_params(form_id):
    if form_id.startswith("Xi33"):
        return {"beta": 4}
    return {"lambda": 2} if form_id == "Xi1:1" else None


@pytest.mark.parametrize("form_id", [f for f, _ in catalog.list_forms()])
def test_catalog_webs_are_linear(form_id):
    # Xi23:3 and Xi33:3 use three arcs of one convex curve, so their points are complex
    web = catalog.instantiate(form_id, sample_params(form_id))
    for bp in catalog.find_base_points(web, 5, seed=3, allow_complex=True, strict=False):
        fields, uv = catalog.slope_fields(web, (bp.x, bp.y), params=bp.params, curves=bp.curves)
        assert max(abs(v) for v in linearity_residuals(fields, uv)) <= 1e-9


@pytest.mark.parametrize("form_id", ["Xi1:3", "Xi32:4", "Xi23:2", "Xi33:5"])
def test_dual_operator_tangent_to_focal_curves(form_id):
    web = catalog.instantiate(form_id, sample_params(form_id))
    rng = random.Random(0)
    for curve in web.curves:
        if curve.kind != "affine":
            continue
        lo, hi = curve.window
        for _ in range(5):
            t = rng.uniform(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo))
            p, q = curve.pq(t)
            dp, dq = curve.tangent(t)
            a, b = web.dual_operator(p, q)
            assert abs(dp * b - dq * a) <= 1e-10 * max(1.0, abs(a) + abs(b)) * max(1.0, abs(dp) + abs(dq))


# -- flatness -------------------------------------------------------------------
@pytest.mark.parametrize("name", ["cusp", "conic-secant", "conic-tangent", "triangle", "pencil"])
def test_graf_sauer_flat_configurations(name):
    res = catalog.graf_sauer_test(catalog.flat_configurations()[name])
    assert res.is_flat and res.rank <= 9


def test_graf_sauer_three_parabolas():
    res = catalog.graf_sauer_test(catalog.instantiate("Xi1:1", {"lambda": 2}))
    assert not res.is_flat and res.rank == 10


def test_graf_sauer_rejects_thin_sampling():
    from webcheck.errors import InvalidSampling
    with pytest.raises(InvalidSampling):
        catalog.graf_sauer_test(catalog.instantiate("Xi1:2"), samples_per_curve=3)


def test_parallel_web_closes_exactly():
    web = catalog.flat_configurations()["pencil"]
    assert catalog.hexagonality_closure(web, (0.2, 0.3), 0.05) <= 1e-13


def test_hexagonal_web_at_given_point():
    rep = catalog.hexagonality_exponent(catalog.instantiate("Xi1:hex"), (0.3, 0.7))
    assert rep.hexagonal and rep.exponent >= 4 - 0.3


def test_non_flat_web_has_cubic_defect():
    web = catalog.instantiate("Xi1:2")
    rep = catalog.hexagonality_exponent(web, real_base(web))
    assert not rep.hexagonal and rep.exponent <= 3 + 0.3
    assert rep.defects[0] > 1e-9


def test_symmetry_characterization_true_symmetry():
    web = catalog.instantiate("Xi1:3")
    reps = catalog.symmetry_characterization(web, lambda x, y: (-1, x), real_base(web))
    assert all(r.hexagonal for r in reps)


def test_symmetry_characterization_wrong_field():
    web = catalog.instantiate("Xi1:2")
    reps = catalog.symmetry_characterization(web, lambda x, y: (1, 0), real_base(web))
    assert any(not r.hexagonal for r in reps)


def test_symmetry_characterization_tangent():
    web = catalog.flat_configurations()["pencil"]
    with pytest.raises(SymmetryTangent):
        catalog.symmetry_characterization(web, lambda x, y: (1, 0), (0.2, 0.3))


# -- export ---------------------------------------------------------------------
def test_form_record_is_json():
    rec = catalog.form_record("Xi1:3")
    text = json.dumps(rec, sort_keys=True)
    back = json.loads(text)
    assert back["id"] == "Xi1:3"
    assert back["reduction"]["f"] == "w^2-2*z*w+2"
    assert back["branch_polynomial"] == "z_b^2 - 2"
    assert catalog.form_record("Xi23:1")["branch_polynomial"] is None
