import cmath
import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import above_one, below_one, nonzero_Q, positive_a
from donoghue_lab.errors import ValidationError
from donoghue_lab.herglotz import PerturbedHerglotz
from donoghue_lab.measure import make_measure, rescale_to
from donoghue_lab.realize import (
    Hypothesis,
    RealizationParams,
    class_params,
    classify_and_realize,
    example3_factor,
    matching_Q0,
    model_k_param,
    params_class_M,
    params_class_M_original_basis,
    params_class_Mk,
    params_class_Mk_inv,
    params_universal,
    realize_Q_a,
    sign_flip_factor,
    special_Q_function,
    special_Q_root,
)

SQ2, SQ5, SQ65 = math.sqrt(2), math.sqrt(5), math.sqrt(65)


def mp_kappa(Q, a):
    """The printed quartic fractions in 60-digit arithmetic, without rewriting."""
    with mpmath.workdps(60):
        Q, a = mpmath.mpf(Q), mpmath.mpf(a)
        b = Q**2 + a**2 - 1
        s = mpmath.sqrt(b**2 + 4 * Q**2)
        if a < 1:
            num = (b - 2 * Q**2 - s) ** 2 - a * (b - s) ** 2 + 4 * Q**2 * a * (a - 1)
            den = (b - 2 * Q**2 - s) ** 2 + a * (b - s) ** 2 + 4 * Q**2 * a * (a + 1)
        else:
            num = a * (b + s) ** 2 - (b - 2 * Q**2 + s) ** 2 - 4 * Q**2 * a * (a - 1)
            den = (b - 2 * Q**2 + s) ** 2 + a * (b + s) ** 2 + 4 * Q**2 * a * (a + 1)
        return float(num / den)


def test_class_params():
    assert class_params(1.0, 0.5).b == pytest.approx(0.25)


def test_class_M_example():
    p = params_class_M(1.0)
    assert p.kappa == pytest.approx(1 / SQ5, abs=1e-15)
    assert p.U == pytest.approx((-1 + 2j) / SQ5, abs=1e-15)
    assert p.basis_phase == pytest.approx((1 - 2j) / SQ5, abs=1e-15)
    assert p.hypothesis is Hypothesis.MIXED


def test_class_M_negative_Q():
    p = params_class_M(-1.0)
    assert p.kappa == pytest.approx(1 / SQ5)
    assert p.U == pytest.approx((-1 - 2j) / SQ5)


def test_class_M_unperturbed():
    p = params_class_M(0.0)
    assert (p.kappa, p.U, p.basis_phase, p.hypothesis) == (0.0, -1, 1, Hypothesis.HYP1)


def test_class_M_original_basis():
    p = params_class_M_original_basis(1.0)
    assert p.kappa == pytest.approx((1 - 2j) / 5, abs=1e-15)
    assert p.U == pytest.approx((3 + 4j) / 5, abs=1e-15)
    assert abs(params_class_M_original_basis(2.0).kappa) == pytest.approx(1 / SQ2, rel=1e-15)
    with pytest.raises(ValidationError):
        params_class_M_original_basis(0.0)


@given(nonzero_Q)
def test_original_basis_is_rotated_basis_times_phase(Q):
    rot, orig = params_class_M(Q), params_class_M_original_basis(Q)
    assert abs(orig.kappa - rot.kappa * rot.basis_phase) < 1e-14
    assert abs(orig.U - rot.U * rot.basis_phase) < 1e-14


def test_class_Mk_examples():
    p = params_class_Mk(1.0, 0.5)
    assert p.kappa == pytest.approx(SQ65 / 13, abs=1e-15)
    assert p.U == pytest.approx((-7 + 4j) / SQ65, abs=1e-15)
    assert p.basis_phase == 1
    q = params_class_Mk(0.0, 0.5)
    assert (q.kappa, q.U, q.hypothesis) == (pytest.approx(1 / 3), -1, Hypothesis.HYP1)
    r = params_class_Mk(-1.0, 0.5)
    assert r.kappa == pytest.approx(SQ65 / 13) and r.U == pytest.approx((-7 - 4j) / SQ65)


def test_class_Mk_inv_examples():
    q = params_class_Mk_inv(0.0, 2.0)
    assert (q.kappa, q.U, q.hypothesis) == (pytest.approx(1 / 3), 1, Hypothesis.HYP2)
    assert 0 < params_class_Mk_inv(1.0, 4.0).kappa < 1
    p, m = params_class_Mk_inv(3.0, 2.0), params_class_Mk_inv(-3.0, 2.0)
    assert p.kappa == m.kappa and p.U == pytest.approx(m.U.conjugate(), abs=1e-15)


@pytest.mark.parametrize("a", [0.0, 1.0, 1.5, -0.5])
def test_class_Mk_domain(a):
    with pytest.raises(ValidationError):
        params_class_Mk(1.0, a)


@pytest.mark.parametrize("a", [0.5, 1.0])
def test_class_Mk_inv_domain(a):
    with pytest.raises(ValidationError):
        params_class_Mk_inv(1.0, a)


@given(nonzero_Q, below_one)
def test_Mk_kappa_matches_printed_formula(Q, a):
    assert params_class_Mk(Q, a).kappa == pytest.approx(mp_kappa(Q, a), rel=1e-12, abs=1e-15)


@given(nonzero_Q, above_one)
def test_Mk_inv_kappa_matches_printed_formula(Q, a):
    assert params_class_Mk_inv(Q, a).kappa == pytest.approx(mp_kappa(Q, a), rel=1e-12, abs=1e-15)


@given(nonzero_Q, positive_a)
def test_symmetry_and_range(Q, a):
    p, m = realize_Q_a(Q, a), realize_Q_a(-Q, a)
    assert p.kappa == m.kappa
    assert abs(p.U - m.U.conjugate()) < 1e-12
    assert 0 <= p.kappa < 1
    assert abs(abs(p.U) - 1) < 1e-12


@given(st.floats(1e-3, 1e3))
def test_vertex_value(a):
    assert realize_Q_a(0.0, a).kappa == pytest.approx(abs(1 - a) / (1 + a), abs=1e-15)


@given(st.sampled_from([1e-2, 0.3, 0.5, 1.0, 2.0, 4.0, 50.0]), st.floats(0.01, 100), st.floats(1.0001, 2.0))
def test_kappa_increasing_in_Q(a, Q, factor):
    assert realize_Q_a(Q * factor, a).kappa > realize_Q_a(Q, a).kappa


def test_kappa_tends_to_one():
    for a in (0.1, 0.5, 1.0, 4.0):
        assert realize_Q_a(1e4, a).kappa > 0.999


def test_universal_example_2():
    u = params_universal(1.0, 0.5)
    assert u.kappa_tilde == pytest.approx(1 / SQ2, abs=1e-15)
    assert u.U_tilde == pytest.approx((-1 + 1j) / SQ2, abs=1e-15)
    assert u.phase == pytest.approx((1 - 1j) / SQ2, abs=1e-15)
    assert u.kappa_complex == pytest.approx(SQ2 * (11 - 3j) / 26, abs=1e-15)
    assert u.kappa_modulus == pytest.approx(SQ65 / 13, abs=1e-15)
    # Moving to the original basis reproduces the published (4 - 7i)/13.
    assert u.kappa_complex * u.phase == pytest.approx((4 - 7j) / 13, abs=1e-15)
    assert u.kappa_original == pytest.approx((4 - 7j) / 13, abs=1e-15)


def test_universal_at_unit_a():
    u = params_universal(1.0, 1.0)
    assert u.kappa_complex == pytest.approx(1 / SQ5, abs=1e-15)
    assert u.kappa_original == pytest.approx((1 - 2j) / 5, abs=1e-15)
    assert u.kappa_original == pytest.approx(params_class_M_original_basis(1.0).kappa, abs=1e-15)
    assert u.U_original == pytest.approx(params_class_M_original_basis(1.0).U, abs=1e-15)


@given(nonzero_Q, positive_a)
def test_universal_modulus_matches_dispatch(Q, a):
    u = params_universal(Q, a)
    assert abs(u.kappa_modulus - realize_Q_a(Q, a).kappa) < 1e-12
    assert abs(abs(u.U_tilde) - 1) < 1e-15 and abs(abs(u.phase) - 1) < 1e-15
    assert u.kappa_original == pytest.approx(model_k_param(Q, a), rel=1e-13)


def test_model_k_param_unperturbed():
    assert model_k_param(0.0, 0.5) == pytest.approx(-1 / 3)
    with pytest.raises(ValidationError):
        params_universal(0.0, 0.5)


@pytest.mark.parametrize(
    "kappa, Q0",
    [(SQ65 / 13, math.sqrt(2.5)), (1 / SQ5, 1.0), (1e-9, 2e-9)],
)
def test_matching_Q0(kappa, Q0):
    assert matching_Q0(kappa) == pytest.approx(Q0, rel=1e-14)


@given(st.floats(1e-3, 100))
def test_matching_Q0_inverts_class_M(Q):
    assert matching_Q0(params_class_M(Q).kappa) == pytest.approx(Q, rel=1e-10)


@pytest.mark.parametrize("kappa", [0.0, 1.0, -0.1])
def test_matching_Q0_domain(kappa):
    with pytest.raises(ValidationError):
        matching_Q0(kappa)


def test_sign_flip_factor():
    assert sign_flip_factor(1.0, 1.0) == pytest.approx((-3 + 4j) / 5, abs=1e-15)
    assert sign_flip_factor(1e-9, 0.5) == pytest.approx(1, abs=1e-8)
    with pytest.raises(ValidationError):
        sign_flip_factor(0.0, 1.0)


@given(nonzero_Q, positive_a)
def test_sign_flip_factor_unimodular(Q, a):
    assert abs(abs(sign_flip_factor(Q, a)) - 1) < 1e-13


def test_example3_factor():
    w_theta = -(5 + 2 * math.sqrt(10) * 1j) / 5
    w_11 = -(1 + 8j) / 5
    got = example3_factor()
    assert got == pytest.approx((5 + 2 * math.sqrt(10) * 1j) / (1 + 8j), abs=1e-15)
    assert got == pytest.approx(w_theta / w_11, abs=1e-15)
    assert abs(got) == pytest.approx(1, abs=1e-15)


def test_special_Q_root_a4():
    f = special_Q_function(4.0)
    assert f(1.0) > 0 > f(3.0)
    Q = special_Q_root(4.0)
    assert 1 < Q < 3 and abs(f(Q)) < 1e-10
    assert params_class_Mk_inv(Q, 4.0).kappa == pytest.approx(params_class_M(Q).kappa, abs=1e-9)


@given(st.floats(1.01, 50))
def test_special_Q_root_is_root_or_absent(a):
    Q = special_Q_root(a)
    if Q is not None:
        assert Q > 0 and abs(special_Q_function(a)(Q)) < 1e-10


def test_special_Q_root_domain():
    with pytest.raises(ValidationError):
        special_Q_root(1.0)


def measure_with(a):
    return rescale_to(make_measure([(-2, 1), (0.5, 3), (4, 1)]), a)


def test_classify_and_realize_dispatch():
    assert classify_and_realize(PerturbedHerglotz(1.0, measure_with(1.0))).kappa == pytest.approx(1 / SQ5)
    assert classify_and_realize(PerturbedHerglotz(1.0, measure_with(0.5))).kappa == pytest.approx(SQ65 / 13)
    p = classify_and_realize(PerturbedHerglotz(0.0, measure_with(1.0)))
    assert (p.kappa, p.U, p.hypothesis) == (0.0, -1, Hypothesis.HYP1)
    assert classify_and_realize(PerturbedHerglotz(0.0, measure_with(3.0))).hypothesis is Hypothesis.HYP2


def test_realization_params_invariants():
    with pytest.raises(ValidationError):
        RealizationParams(1.0, 1, 1, Hypothesis.HYP1)
    with pytest.raises(ValidationError):
        RealizationParams(0.1, 2, 1, Hypothesis.HYP1)
    d = params_class_M(1.0).as_dict()
    assert d["hypothesis"] == "Mixed" and d["U"] == [pytest.approx(-1 / SQ5), pytest.approx(2 / SQ5)]
