import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptlindblad.core_model import PTHamiltonian, metric
from ptlindblad.errors import TooManyOperators
from ptlindblad.lindblad import (
    DissipatorCoefficients,
    LindbladOperator,
    case_A_zero,
    case_B_zero,
    coefficients_from_pauli,
    compatible_operator,
    dissipator_action,
    dissipator_coefficients,
    lindblad_term,
    pauli_coefficients,
    pseudo_hermiticity_residual,
    rate_coefficients,
)
from ptlindblad.core_model import pt_commutator_check
from ptlindblad.pauli import GammaVector, SIGMA1, gamma_of, pauli_compose, pauli_decompose

from conftest import PHI, R, S, angles, operators, small


def test_pauli_coefficients_pure_sigma1():
    assert np.allclose(pauli_coefficients(LindbladOperator(0, 1, 0, 0)), [0, 1, 0, 0])


def test_pauli_coefficients_pure_i_sigma3():
    assert np.allclose(pauli_coefficients(LindbladOperator(1, 0, np.pi / 2, 0)), [0, 0, 0, 1j])


def test_pauli_reconstruction():
    op = LindbladOperator(0.3, 0.4, 0.5, 0.7)
    direct = np.array([[0.3 * np.exp(0.5j), 0.4 * np.exp(0.7j)], [0.4 * np.exp(-0.7j), 0.3 * np.exp(-0.5j)]])
    assert np.abs(pauli_compose(pauli_coefficients(op)) - direct).max() < 1e-14


def test_case_B_zero_coefficients():
    c = dissipator_coefficients(case_B_zero(0.1))
    assert np.allclose([c.A, c.B, c.C, c.D, c.E, c.F], [0.1, 0, 0.1, 0, 0, 0], atol=1e-17)


def test_case_A_zero_coefficients():
    c = dissipator_coefficients(case_A_zero(0.1))
    assert np.allclose([c.A, c.B, c.C, c.D, c.E, c.F], [0, 0.1, 0.1, 0, 0, 0], atol=1e-17)


def test_rate_coefficients_match_operator_form():
    for case, build in (("A0", case_A_zero), ("B0", case_B_zero)):
        assert np.allclose(rate_coefficients(case, 0.3).block(), dissipator_coefficients(build(0.3)).block(), atol=1e-16)


def test_negative_rates_rejected():
    for build in (case_A_zero, case_B_zero):
        with pytest.raises(ValueError):
            build(-0.1)
    with pytest.raises(ValueError):
        rate_coefficients("B0", -1.0)


def test_empty_operator_list():
    assert dissipator_coefficients([]).is_zero


def test_too_many_operators():
    with pytest.raises(TooManyOperators):
        dissipator_coefficients([LindbladOperator(0, 0.1)] * 4)


def test_zero_coefficients_annihilate():
    out = dissipator_action(DissipatorCoefficients(), GammaVector(0.5, 0.1, 0.2, 0.3))
    assert np.allclose(out.as_array(), 0)


def test_commuting_state_is_fixed():
    ops = [LindbladOperator(0, 1, 0, 0)]
    out = dissipator_action(dissipator_coefficients(ops), gamma_of(SIGMA1 / 2))
    assert np.allclose(out.as_array(), 0)


def test_two_random_operators_match_brute_force(rng):
    ops = [LindbladOperator(*rng.uniform(0, 1, 2), *rng.uniform(-3, 3, 2)) for _ in range(2)]
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    bloch = dissipator_action(dissipator_coefficients(ops), gamma_of(rho)).as_array()
    assert np.abs(bloch - pauli_decompose(lindblad_term(ops, rho))).max() < 1e-12


def test_pseudo_hermiticity_identity_metric_hermitian_operator():
    # real diagonal and symmetric off-diagonal: Hermitian, so eta = I works
    op = LindbladOperator(0.3, 0.4, 0.0, 0.7)
    assert pseudo_hermiticity_residual(op, np.eye(2)) < 1e-14


def test_pseudo_hermiticity_general_four_parameter_form_fails():
    # the four-parameter form is PT-symmetric but not pseudo-Hermitian in general
    assert pseudo_hermiticity_residual(LindbladOperator(1, 0, np.pi / 2, 0), np.eye(2)) > 1.0
    eta = metric(PTHamiltonian(R, S, PHI))
    assert pseudo_hermiticity_residual(LindbladOperator(0, 1, 0, 0), eta) > 1.0


def test_pseudo_hermiticity_compatible_operator_under_system_metric():
    h = PTHamiltonian(R, S, PHI)
    eta = metric(h)
    op = compatible_operator(0.4, 0.0, eta.alpha, r0=0.2)
    assert pseudo_hermiticity_residual(op, eta) < 1e-13
    # B = 0 operators (proportional to sigma2) are compatible with any metric of this family
    assert pseudo_hermiticity_residual(case_B_zero(0.1)[0], eta) < 1e-13


def test_pseudo_hermiticity_negative_control(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert pseudo_hermiticity_residual(m, metric(PTHamiltonian(R, S, PHI))) > 1e-3


def test_sum_identity_for_A_plus_B():
    ops = [LindbladOperator(0.3, 0.4, 0.5, 0.7), LindbladOperator(0.2, 0.1, -1.0, 2.0)]
    c = dissipator_coefficients(ops)
    direct = sum(op.s_j**2 - 2 * (op.r_j * np.sin(op.varphi_j)) ** 2 for op in ops)
    assert np.isclose(c.A + c.B, direct)
    assert np.isclose(c.A + c.B - c.C, -2 * sum((op.r_j * np.sin(op.varphi_j)) ** 2 for op in ops))


@given(operators(1, 3))
def test_closed_coefficients_match_pauli_definitions(ops):
    assert np.allclose(dissipator_coefficients(ops).block(), coefficients_from_pauli(ops).block(), atol=1e-14)


@given(operators(1, 3), st.lists(st.floats(-1, 1), min_size=8, max_size=8))
def test_block_matches_brute_force(ops, entries):
    rho = np.array(entries[:4]).reshape(2, 2) + 1j * np.array(entries[4:]).reshape(2, 2)
    bloch = dissipator_action(dissipator_coefficients(ops), gamma_of(rho)).as_array()
    assert np.abs(bloch - pauli_decompose(lindblad_term(ops, rho))).max() < 1e-12
    assert bloch[0] == 0


@given(operators(1, 3))
def test_operator_pt_commutation(ops):
    assert max(pt_commutator_check(op.matrix()) for op in ops) < 1e-14


@given(operators(0, 3))
def test_E_F_purely_imaginary(ops):
    c = dissipator_coefficients(ops)
    assert abs(c.E.real) < 1e-14 and abs(c.F.real) < 1e-14
    assert abs(c.C.imag) == 0 and c.C.real >= 0


@given(small, angles, st.floats(-1.2, 1.2), small)
def test_pseudo_hermiticity_condition(s_j, phi_j, alpha, r0):
    op = compatible_operator(s_j, phi_j, alpha, r0)
    m = np.array([[1 / np.cos(alpha), -1j * np.tan(alpha)], [1j * np.tan(alpha), 1 / np.cos(alpha)]])
    assert pseudo_hermiticity_residual(op, m) < 1e-12 * (1 + np.linalg.norm(m)) ** 2
