import numpy as np
import pytest
from hypothesis import given

from ptlindblad.core_model import (
    NeutrinoHamiltonian,
    PTHamiltonian,
    eigenvalues,
    eigenvectors,
    hermitian_counterpart,
    metric,
    mixing_angle,
    pt_commutator_check,
    similarity_transform,
)
from ptlindblad.errors import PhaseBoundary, UnsupportedPhase

from conftest import PHI, R, S, pt_hamiltonians

# frozen from an independent hand evaluation: arcsin(0.1 * sin(pi/3) / 0.2)
ALPHA = 0.44783239692893325
SEC_ALPHA = 1.1094003924504583


def test_eigenvalues_match_numpy(reference_system):
    eig = eigenvalues(reference_system)
    assert eig.pt_symmetric
    ref = np.sort(np.linalg.eigvals(reference_system.matrix()).real)
    assert np.allclose(sorted([eig.lambda_minus.real, eig.lambda_plus.real]), ref, atol=1e-14)
    # r cos(varphi) = 0.05, s^2 - r^2 sin^2(varphi) = 0.04 - 0.0075
    assert abs(eig.lambda_plus - (0.05 + np.sqrt(0.0325))) < 1e-15


def test_eigenvalues_hermitian_limit():
    eig = eigenvalues(PTHamiltonian(0.0, 0.3))
    assert np.isclose(eig.lambda_plus, 0.3) and np.isclose(eig.lambda_minus, -0.3)


def test_eigenvalues_diagonal_branch():
    eig = eigenvalues(PTHamiltonian(0.5, 0.0, 0.7))
    assert np.isclose(eig.lambda_plus, 0.5 * np.exp(0.7j))
    assert np.isclose(eig.lambda_minus, 0.5 * np.exp(-0.7j))
    assert not eig.pt_symmetric


def test_mixing_angle_value(reference_system):
    assert np.isclose(mixing_angle(reference_system), ALPHA, atol=1e-15)
    assert abs(mixing_angle(reference_system) - 0.45) < 5e-3


def test_metric_value_and_determinant(reference_system):
    m = metric(reference_system)
    assert np.isclose(m.matrix[0, 0], SEC_ALPHA)
    assert np.isclose(np.linalg.det(m.matrix), 1.0)
    assert np.all(np.linalg.eigvalsh(m.matrix) > 0)


def test_metric_from_eigenvector_projectors(reference_system):
    up, um = eigenvectors(reference_system)
    proj = np.outer(up, up.conj()) + np.outer(um, um.conj())
    assert np.allclose(np.linalg.inv(proj), metric(reference_system).matrix, atol=1e-13)


def test_eigenvectors_are_eigenvectors(reference_system):
    eig = eigenvalues(reference_system)
    up, um = eigenvectors(reference_system)
    h = reference_system.matrix()
    assert np.allclose(h @ up, eig.lambda_plus * up, atol=1e-14)
    assert np.allclose(h @ um, eig.lambda_minus * um, atol=1e-14)


def test_diagonal_system_has_trivial_metric():
    h = PTHamiltonian(0.1, 0.0, PHI)
    assert np.allclose(metric(h).matrix, np.eye(2))
    up, um = eigenvectors(h)
    assert np.allclose(up, [1, 0]) and np.allclose(um, [0, 1])


def test_phase_boundary_raises():
    with pytest.raises(PhaseBoundary):
        metric(PTHamiltonian(1.0, 0.1, np.pi / 2))
    with pytest.raises(PhaseBoundary):
        metric(PTHamiltonian(0.2, 0.2, np.pi / 2))


def test_offdiag_phase_unsupported():
    with pytest.raises(UnsupportedPhase):
        metric(PTHamiltonian(R, S, PHI, 0.3))


def test_similarity_transform_gives_explicit_hermitian(reference_system):
    g = similarity_transform(reference_system)
    assert np.allclose(g.g @ g.g_inverse, np.eye(2), atol=1e-14)
    assert np.allclose(g.g @ g.g, metric(reference_system).matrix, atol=1e-14)
    herm = g.g @ reference_system.matrix() @ g.g_inverse
    assert np.allclose(herm, hermitian_counterpart(reference_system), atol=1e-14)


def test_pt_commutator_negative_control():
    m = PTHamiltonian(R, S, PHI).matrix()
    m[0, 0] += 0.01j
    assert pt_commutator_check(m) > 1e-3


def test_neutrino_hamiltonian():
    h = NeutrinoHamiltonian(0.2, np.pi / 3)
    assert np.allclose(h.matrix(), np.diag([-0.2, 0.2]))
    assert np.allclose(h.pauli(), [0, 0, 0, -0.2])


def test_negative_parameters_rejected():
    with pytest.raises(ValueError):
        PTHamiltonian(-0.1, 0.2)


@given(pt_hamiltonians())
def test_pt_commutation_property(h):
    assert pt_commutator_check(h) < 1e-14


@given(pt_hamiltonians())
def test_metric_pseudo_hermiticity_property(h):
    eta = metric(h).matrix
    m = h.matrix()
    assert np.allclose(eta @ m @ np.linalg.inv(eta), m.conj().T, atol=1e-12)


@given(pt_hamiltonians())
def test_similarity_transform_hermitian_property(h):
    g = similarity_transform(h)
    herm = g.g @ h.matrix() @ g.g_inverse
    assert np.allclose(herm, herm.conj().T, atol=1e-12)
    eig = eigenvalues(h)
    assert np.allclose(np.linalg.eigvalsh(herm), sorted([eig.lambda_minus.real, eig.lambda_plus.real]), atol=1e-12)
