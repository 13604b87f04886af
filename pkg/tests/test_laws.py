import numpy as np
import pytest

from opmeans import errors
from opmeans.laws import (
    check_bounded_estimates,
    check_contour_oracle,
    check_dcd_identity,
    check_geo_symmetry,
    check_geometric_extension,
    check_hga_chain,
    check_inverse_identities,
    check_loewner_heinz,
    check_mean_congruence,
    check_mean_inversion,
    check_mean_symmetry,
    check_norm_chain,
    check_operator_refinement,
    check_power_laws,
    check_representation,
    check_smt,
)
from opmeans.laws.report import LawReport, canonical_json, digest
from opmeans.linalg import squared_modulus
from opmeans.means import f_nu, geometric_mean, quadratic_geometric_mean
from opmeans.rng import random_unitary, SplitMix64

from conftest import diag, random_inv, random_pd


# ---------------------------------------------------------------- report plumbing


def test_report_pass_logic():
    rep = LawReport("demo", "0")
    rep.identity("r", 1e-9, 1e-8).order("o", -1e-10, 1.0, 1e-9)
    assert rep.passed
    assert rep.margin == pytest.approx(-1e-9)
    rep.identity("bad", 1e-7, 1e-8)
    assert not rep.passed
    assert set(rep.to_dict()) == {"law_id", "pass", "residuals", "instance_digest"}


def test_report_nan_fails():
    rep = LawReport("demo", "0").identity("r", float("nan"))
    assert not rep.passed
    assert rep.margin == float("-inf")


def test_digest_is_deterministic_and_input_sensitive():
    x = random_inv(1, 3)
    d1 = digest({"x": x, "nu": 0.5})
    assert d1 == digest({"nu": 0.5, "x": x.copy()})
    assert d1 != digest({"x": x, "nu": 0.25})
    assert len(d1) == 16
    assert canonical_json({"b": 1, "a": [1.5]}) == '{"a":[1.5],"b":1}'


# ---------------------------------------------------------------- dcd


def test_dcd_identity_c_identity():
    d = random_inv(2, 3)
    rep = check_dcd_identity(np.eye(3), d, 2.0, "star")
    assert rep.passed and rep.residuals["residual"] < 1e-12


def test_dcd_identity_d_identity():
    rep = check_dcd_identity(random_pd(3, 4), np.eye(4), -0.5, "selfadjoint")
    assert rep.residuals["residual"] < 1e-12


def test_dcd_identity_hand_instance():
    rep = check_dcd_identity(diag(1, 4), np.array([[1, 1], [0, 1]]), 0.5, "star")
    assert rep.passed and rep.residuals["residual"] <= 1e-8


def test_dcd_selfadjoint_precondition():
    with pytest.raises(errors.VariantPreconditionViolated):
        check_dcd_identity(np.eye(2), np.array([[1, 1], [0, 1]]), 0.5, "selfadjoint")
    with pytest.raises(errors.VariantPreconditionViolated):
        check_dcd_identity(np.eye(2), diag(1, -1), 0.5, "selfadjoint")


# ---------------------------------------------------------------- identities


def test_geo_symmetry_commuting():
    a, b = diag(1, 4), diag(9, 16)
    want = diag(9**0.3, 4**0.7 * 16**0.3)
    np.testing.assert_allclose(geometric_mean(a, b, 0.3), want, atol=1e-14)
    assert check_geo_symmetry(a, b, 0.3).residuals["residual"] < 1e-14


def test_geo_symmetry_equal_and_out_of_range():
    a = random_pd(4, 3)
    assert check_geo_symmetry(a, a, 0.4).residuals["residual"] < 1e-12
    assert check_geo_symmetry(random_pd(5, 4), random_pd(6, 4), 1.5).passed


def test_inverse_identities():
    x = random_inv(7, 3)
    assert max(check_inverse_identities(x, x, 0.6).residuals.values()) < 1e-12
    rep = check_inverse_identities(diag(1, 2), diag(3, 4), 0.5)
    assert max(rep.residuals.values()) < 1e-14
    assert check_inverse_identities(random_inv(8, 3), random_inv(9, 3), 0.25).passed


def test_representation_diagonal():
    rep = check_representation(diag(1, 2), diag(3, 4), 0.5)
    assert max(rep.residuals.values()) < 1e-14
    np.testing.assert_allclose(quadratic_geometric_mean(diag(1, 2), diag(3, 4), 0.5), diag(3, 8), atol=1e-14)


def test_representation_unitary_x():
    u = random_unitary(SplitMix64(3), 4)
    y = random_inv(10, 4)
    from opmeans.funcalc import real_power_spectral

    want = real_power_spectral(squared_modulus(y), 0.3)
    got = quadratic_geometric_mean(u, y, 0.3)
    assert np.linalg.norm(got - want) <= 1e-11 * np.linalg.norm(want)
    assert check_representation(u, y, 0.3).passed


def test_representation_negative_weight():
    assert check_representation(random_inv(11, 4), random_inv(12, 4), -0.5).passed


def test_representation_unitary_invariance():
    x, y = random_inv(13, 4), random_inv(14, 4)
    u = random_unitary(SplitMix64(15), 4)
    r1 = check_representation(x, y, 0.3).residuals["geometric_form"]
    r2 = check_representation(u @ x @ u.conj().T, u @ y @ u.conj().T, 0.3).residuals["geometric_form"]
    # both are round-off; invariance means neither exceeds the other's scale by much
    assert abs(r1 - r2) <= 1e-9


# ---------------------------------------------------------------- chains


def test_hga_hand_instance():
    rep = check_hga_chain(diag(1, 2), diag(3, 4), 0.5, "squared")
    assert rep.passed
    scale = rep.extras["scale"]
    assert rep.residuals["arith_minus_geo"] * scale == pytest.approx(2, abs=1e-13)
    assert rep.residuals["geo_minus_harm"] * scale == pytest.approx(1.2, abs=1e-13)


@pytest.mark.parametrize("kind", ["squared", "half", "positive-pair"])
def test_hga_equality_cases(kind):
    x, y = random_inv(16, 3), random_inv(17, 3)
    for nu in (0.0, 1.0):
        rep = check_hga_chain(x, y, nu, kind)
        assert all(abs(v) <= 1e-10 for v in rep.residuals.values())
    rep = check_hga_chain(x, x, 0.4, kind)
    assert all(abs(v) <= 1e-10 for v in rep.residuals.values())


def test_hga_weight_range():
    with pytest.raises(errors.WeightOutOfRange):
        check_hga_chain(np.eye(2), np.eye(2), 1.2)


def test_norm_chain_examples():
    rep = check_norm_chain(np.eye(2), np.eye(2), 0.3)
    assert all(abs(v) < 1e-15 for v in rep.residuals.values())
    rep = check_norm_chain(diag(1, 2), diag(3, 1), 0.5)
    # 0.5*4 + 0.5*9 >= ||diag(5, 2.5)|| >= ||diag(sqrt 3, sqrt 0.5) diag(1, 2)||^2
    v1, v2, v3 = rep.extras["values"]
    assert (v1, v2, v3) == pytest.approx((6.5, 5, 3))
    assert check_norm_chain(random_inv(18, 3), random_inv(19, 3), 0.75).passed


def test_refinement_scalar_instance():
    rep = check_operator_refinement(np.array([[1.0]]), np.array([[2.0]]), 0.25, 0.5)
    assert rep.passed
    middle = 1.75 - 4**0.25
    scale = rep.extras["scale"]
    assert rep.residuals["upper"] * scale == pytest.approx(0.75 - middle, abs=1e-14)
    assert rep.residuals["lower"] * scale == pytest.approx(middle - 0.25, abs=1e-14)


@pytest.mark.parametrize("form", ["general", "positive-pair"])
def test_refinement_equality_cases(form):
    x, y = random_inv(20, 3), random_inv(21, 3)
    rep = check_operator_refinement(x, y, 0.3, 0.3, form)
    assert all(abs(v) <= 1e-10 for v in rep.residuals.values())
    rep = check_operator_refinement(x, x, 0.3, 0.6, form)
    assert all(abs(v) <= 1e-10 for v in rep.residuals.values())


def test_refinement_midpoint_matches_general():
    x, y = random_inv(22, 4), random_inv(23, 4)
    for p in (0.0, 0.2, 0.5, 0.9):
        g = check_operator_refinement(x, y, p, 0.5, "general")
        m = check_operator_refinement(x, y, p, 0.5, "midpoint")
        assert g.extras["coefficients"] == pytest.approx(m.extras["coefficients"], abs=1e-12)
        for k in g.residuals:
            assert g.residuals[k] == pytest.approx(m.residuals[k], abs=1e-12)


def test_refinement_q_domain():
    with pytest.raises(errors.ParameterOutOfDomain):
        check_operator_refinement(np.eye(2), np.eye(2), 0.5, 1.0)


def test_bounded_hand_instance():
    rep = check_bounded_estimates(diag(1, 2), diag(3, 4), 0.5, "delta")
    assert rep.extras["m"] == pytest.approx(2, abs=1e-12)
    assert rep.extras["M"] == pytest.approx(3, abs=1e-12)
    assert rep.extras["Delta"] == pytest.approx(2, abs=1e-12)
    assert rep.extras["delta"] == pytest.approx(0.5, abs=1e-12)
    assert abs(rep.residuals["upper"]) <= 1e-12
    assert abs(rep.residuals["lower"]) <= 1e-12
    assert rep.passed


def test_bounded_equal_and_scaled():
    x = random_inv(24, 3)
    rep = check_bounded_estimates(x, x, 0.3)
    assert rep.extras["Delta"] == pytest.approx(0, abs=1e-12)
    assert all(abs(v) <= 1e-10 for v in rep.residuals.values())
    rep = check_bounded_estimates(x, 3 * x, 0.3)
    assert rep.extras["Delta"] == pytest.approx(f_nu(9, 0.3), rel=1e-10)
    assert rep.extras["delta"] == pytest.approx(f_nu(9, 0.3), rel=1e-10)
    assert rep.passed


@pytest.mark.parametrize("form", ["delta", "sqrt", "positive-pair-delta", "positive-pair-sqrt"])
@pytest.mark.parametrize("widen", [1.0, 2.0])
def test_bounded_forms_random(form, widen):
    assert check_bounded_estimates(random_inv(25, 4), random_inv(26, 4), 0.7, form, widen).passed


def test_bounded_containment_implies_hga():
    x, y = random_inv(27, 4), random_inv(28, 4)
    b = check_bounded_estimates(x, y, 0.4)
    h = check_hga_chain(x, y, 0.4)
    assert b.residuals["upper"] >= -1e-9 and h.residuals["arith_minus_geo"] >= -1e-9


# ---------------------------------------------------------------- background facts


def test_background_laws():
    a, b, c = random_pd(29, 4), random_pd(30, 4), random_inv(31, 4)
    assert check_geometric_extension(a, b, 0.3).passed
    assert check_mean_symmetry(a, b).passed
    assert check_mean_congruence(a, b, c).passed
    assert check_mean_inversion(a, b, 0.6).passed
    assert check_loewner_heinz(a + b, b, 0.5).passed
    assert check_power_laws(a, 0.7, -1.3).passed
    assert check_smt(a, -0.5).passed


def test_loewner_heinz_fails_for_p_above_one():
    # t^2 is not operator monotone: a classical 2x2 witness
    from opmeans.linalg import min_eig

    a = np.array([[2, 1], [1, 1]], dtype=complex)
    b = diag(1, 0)
    assert min_eig(a - b) >= -1e-15
    assert min_eig(a @ a - b @ b) < -0.1


def test_contour_oracle_law():
    lam = np.array([0.1, 1.0, 10.0])
    a = np.diag(lam).astype(complex)
    assert check_contour_oracle(a, 0.5).passed
