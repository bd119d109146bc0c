import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import measures, nonzero_Q, positive_a, upper_z
from donoghue_lab.errors import PoleError, ValidationError
from donoghue_lab.measure import make_measure, rescale_to
from donoghue_lab.model import (
    ModelSystem,
    characteristic_function,
    deficiency_vector,
    dissipative_resolvent,
    inner,
    livsic_function,
    livsic_vanishing_test,
    make_model,
    recover_main_operator,
    resolvent_multiplier,
    transfer_and_impedance,
    weighted_hermitian_part,
    weyl_function,
    weyl_function_form,
)
from donoghue_lab.moebius import impedance_to_transfer, transfer_to_impedance
from donoghue_lab.realize import params_universal

PAIR = make_measure([(-1, 1), (1, 1)])
SINGLE = make_measure([(0, 1)])
ZS = (2j, 1 + 1j, -3j, 0.5 + 0.5j, -1 - 2j)


def test_model_fields():
    ms = make_model(make_measure([(2, 1), (-1, 3)]), 0.2, 1j)
    assert np.array_equal(np.diag(ms.B), [-1, 2])
    assert ms.C == pytest.approx(3 * -1 / 2 + 2 / 5)
    with pytest.raises(ValidationError):
        ModelSystem(PAIR, kappa=1.0)
    with pytest.raises(ValidationError):
        ModelSystem(PAIR, U=0.5)


def test_deficiency_vector():
    ms = ModelSystem(SINGLE)
    assert deficiency_vector(ms, 1j) == pytest.approx([1j])
    with pytest.raises(ValidationError):
        deficiency_vector(ms, 2.0)


@given(measures(), upper_z)
def test_deficiency_norm_and_conjugation(m, z):
    ms = ModelSystem(m)
    g = deficiency_vector(ms, 1j)
    assert inner(ms, g, g).real == pytest.approx(ms.a, rel=1e-12)
    assert deficiency_vector(ms, z.conjugate()) == pytest.approx(np.conj(deficiency_vector(ms, z)))


def test_weyl_examples():
    single = ModelSystem(SINGLE)
    for z in (1j, 2 + 1j, -0.3 + 4j):
        assert weyl_function(single, z) == pytest.approx(-1 / z, abs=1e-15)
    assert weyl_function(ModelSystem(PAIR), 1j) == pytest.approx(1j, abs=1e-15)
    with pytest.raises(ValidationError):
        weyl_function(single, -1j)


@given(measures(), upper_z)
def test_weyl_dual_paths(m, z):
    ms = ModelSystem(rescale_to(m, 1.0))
    raw = sum(w * (1 / (l - z) - l / (1 + l * l)) for l, w in ms.measure.atoms)
    assert weyl_function(ms, z) == pytest.approx(raw, rel=1e-9, abs=1e-12)
    assert weyl_function_form(ms, z) == pytest.approx(weyl_function(ms, z), rel=1e-9, abs=1e-12)


def test_livsic_at_i_is_zero():
    assert livsic_function(ModelSystem(PAIR), 1j) == 0


def test_livsic_pair_example():
    ms = ModelSystem(PAIR)
    M = weyl_function(ms, 2j)
    assert livsic_function(ms, 2j) == pytest.approx((M - 1j) / (M + 1j), abs=1e-15)


@given(measures(min_size=2), upper_z)
def test_livsic_weyl_relation_and_contractivity(m, z):
    ms = ModelSystem(m)
    s = livsic_function(ms, z)
    assert abs(s) < 1 + 1e-12
    assert (s + 1) / (s - 1) / 1j == pytest.approx(weyl_function(ms, z), rel=1e-10, abs=1e-10)


@given(measures(min_size=2), upper_z)
def test_livsic_conjugate_symmetry(m, z):
    mirrored = ModelSystem(make_measure((-l, w) for l, w in m.atoms))
    s, t = livsic_function(ModelSystem(m), z), livsic_function(mirrored, -z.conjugate())
    assert t == pytest.approx(s.conjugate(), rel=1e-10, abs=1e-12)


@given(measures(min_size=2), upper_z)
def test_characteristic_zero_kappa(m, z):
    ms = ModelSystem(m)
    assert characteristic_function(ms, z) == -livsic_function(ms, z)


@given(measures(min_size=2), upper_z, st.floats(0, 0.99), st.floats(0, 2 * math.pi))
def test_characteristic_contractive(m, z, r, t):
    ms = ModelSystem(m, kappa=r * cmath.exp(1j * t))
    assert abs(characteristic_function(ms, z)) <= 1 + 1e-9


def test_constant_livsic_stand_in():
    kappa = 1 / 3
    S = (0 - kappa) / (kappa * 0 - 1)
    assert S == pytest.approx(1 / 3)
    assert transfer_to_impedance(1 / S) == pytest.approx(0.5j, abs=1e-15)
    assert impedance_to_transfer(0.5j) == pytest.approx(3, abs=1e-15)


@given(measures(min_size=2), upper_z)
def test_unperturbed_impedance_is_weyl(m, z):
    ms = ModelSystem(rescale_to(m, 1.0))
    assume(abs(livsic_function(ms, z)) > 1e-6)
    W, V = transfer_and_impedance(ms, z)
    assert V == pytest.approx(weyl_function(ms, z), rel=1e-9, abs=1e-9)
    assert W == pytest.approx(impedance_to_transfer(V), rel=1e-9, abs=1e-9)


@settings(max_examples=60)
@given(measures(min_size=2), st.floats(0, 0.9), upper_z)
def test_chain_both_hypotheses(m, k, z):
    ms1 = ModelSystem(rescale_to(m, (1 - k) / (1 + k)), k)
    assert transfer_and_impedance(ms1, z)[1] == pytest.approx(
        (1 - k) / (1 + k) * weyl_function(ms1, z), rel=1e-8, abs=1e-8
    )
    ms2 = ModelSystem(rescale_to(m, (1 + k) / (1 - k)), k)
    assert transfer_and_impedance(ms2, z, "Hyp2")[1] == pytest.approx(
        (1 + k) / (1 - k) * weyl_function(ms2, z), rel=1e-8, abs=1e-8
    )


def test_chain_guard_at_zero_characteristic():
    # s(i) = 0, so with kappa = 0 the transfer value has a pole at z = i.
    with pytest.raises(PoleError):
        transfer_and_impedance(ModelSystem(PAIR), 1j)


def test_chain_rejects_bad_hypothesis():
    with pytest.raises(ValidationError):
        transfer_and_impedance(ModelSystem(PAIR), 1j, "Hyp3")


def test_single_atom_resolvent_by_hand():
    k = (1 - 2j) / 5
    ms = ModelSystem(SINGLE)
    d = 1j * (k + 1) / (k - 1)
    T = recover_main_operator(ms, k)
    assert T[0, 0] == pytest.approx(1 / d, abs=1e-15)
    R = dissipative_resolvent(ms, k, 2j)
    assert R[0, 0] == pytest.approx(1 / (1 / d - 2j), abs=1e-12)


def test_multiplier_at_zero_k():
    ms = ModelSystem(PAIR)
    z = 0.3 + 2j
    M = weyl_function(ms, z)
    assert resolvent_multiplier(ms, 0.0, z) == pytest.approx(1 / (M - 1j), abs=1e-15)
    with pytest.raises(ValidationError):
        resolvent_multiplier(ms, 1.0, z)


@settings(max_examples=100)
@given(measures(max_size=20), st.floats(0, 0.95), st.floats(0, 2 * math.pi))
def test_resolvent_matches_oracle(m, r, t):
    k = r * cmath.exp(1j * t)
    ms = ModelSystem(m)
    T = recover_main_operator(ms, k)
    eye = np.eye(m.size)
    for z in ZS:
        R = dissipative_resolvent(ms, k, z)
        assert np.abs(R - np.linalg.inv(T - z * eye)).max() < 1e-10 * max(1.0, np.abs(R).max())
        assert np.linalg.norm(z * eye + np.linalg.inv(R) - T) < 1e-8 * max(1.0, np.linalg.norm(T))
    R1, R2 = dissipative_resolvent(ms, k, ZS[0]), dissipative_resolvent(ms, k, ZS[1])
    assert np.abs(R1 - R2 - (ZS[0] - ZS[1]) * R1 @ R2).max() < 1e-8


@given(measures(max_size=20), nonzero_Q, positive_a)
def test_dissipative_for_realization_parameters(m, Q, a):
    u = params_universal(Q, a)
    for k in (u.kappa_complex, u.kappa_original):
        ms = ModelSystem(m)
        eig = np.linalg.eigvalsh(weighted_hermitian_part(ms, recover_main_operator(ms, k)))
        assert eig.min() > -1e-10


def test_real_k_gives_dissipative_rank_one():
    ms = ModelSystem(PAIR)
    eig = np.linalg.eigvalsh(weighted_hermitian_part(ms, recover_main_operator(ms, 0.5)))
    assert eig.min() > -1e-12 and eig.max() > 0
    re = weighted_hermitian_part(ms, recover_main_operator(ms, 0.5), imaginary=False)
    assert np.allclose(re, re.conj().T)


def test_resolvent_pole_guard():
    with pytest.raises(PoleError):
        dissipative_resolvent(ModelSystem(SINGLE), 0.2, 1e-11j)


def test_vanishing_test():
    res = livsic_vanishing_test(ModelSystem(PAIR))
    assert not res and not res.degenerate and res.max_abs > 0
    assert livsic_vanishing_test(ModelSystem(PAIR), tol=math.inf)
    single = livsic_vanishing_test(ModelSystem(SINGLE))
    assert single and single.degenerate
    with pytest.raises(ValidationError):
        livsic_vanishing_test(ModelSystem(PAIR), grid=[])
    with pytest.raises(ValidationError):
        livsic_vanishing_test(ModelSystem(PAIR), grid=[-1j])
