"""PT-symmetric two-level Hamiltonians: spectrum, eigenvectors, metric.

The Hamiltonian is parametrized by four real numbers::

    H = [[r e^{i varphi},  s e^{i phi}],
         [s e^{-i phi},    r e^{-i varphi}]]

with ``varphi`` the diagonal phase and ``phi`` the off-diagonal phase. The
PT-symmetric phase is ``s**2 > r**2 sin(varphi)**2``; there the spectrum is
real and a positive-definite metric ``eta`` with ``eta H eta^-1 = H^dagger``
exists.

The parity operator is the 2x2 swap matrix and time reversal is plain complex
conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PhaseBoundary, UnsupportedPhase
from .pauli import pauli_decompose

# relative margin on s^2 - r^2 sin^2(varphi) below which eta is declared singular
BOUNDARY_RTOL = 1e-12

PARITY = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class PTHamiltonian:
    r: float
    s: float
    diag_phase: float = 0.0
    offdiag_phase: float = 0.0

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("r and s must be non-negative")

    def matrix(self) -> np.ndarray:
        r, s, vp, p = self.r, self.s, self.diag_phase, self.offdiag_phase
        return np.array(
            [[r * np.exp(1j * vp), s * np.exp(1j * p)], [s * np.exp(-1j * p), r * np.exp(-1j * vp)]],
            dtype=complex,
        )

    def pauli(self) -> np.ndarray:
        """Coefficients (H0, H1, H2, H3) = (r cos varphi, s cos phi, -s sin phi, i r sin varphi)."""
        r, s, vp, p = self.r, self.s, self.diag_phase, self.offdiag_phase
        return np.array([r * np.cos(vp), s * np.cos(p), -s * np.sin(p), 1j * r * np.sin(vp)], dtype=complex)

    @property
    def discriminant(self) -> float:
        """``s**2 - r**2 sin(varphi)**2``; positive in the PT-symmetric phase."""
        return self.s**2 - (self.r * np.sin(self.diag_phase)) ** 2

    @property
    def is_diagonal(self) -> bool:
        return self.s == 0

    @property
    def is_hermitian(self) -> bool:
        return self.r * np.sin(self.diag_phase) == 0


@dataclass(frozen=True)
class NeutrinoHamiltonian:
    """Two-flavor neutrino Hamiltonian ``diag(-omega, omega)`` in the mass basis.

    ``theta`` is the vacuum mixing angle that defines the flavor states.
    """

    omega: float
    theta: float = 0.0

    def matrix(self) -> np.ndarray:
        return np.diag([-self.omega, self.omega]).astype(complex)

    def pauli(self) -> np.ndarray:
        return np.array([0, 0, 0, -self.omega], dtype=complex)


@dataclass(frozen=True)
class Spectrum:
    lambda_plus: complex
    lambda_minus: complex
    pt_symmetric: bool


@dataclass(frozen=True, eq=False)
class Metric:
    alpha: float
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class SimilarityTransform:
    g: np.ndarray
    g_inverse: np.ndarray


def eigenvalues(h: PTHamiltonian) -> Spectrum:
    """Closed-form eigenvalues ``r cos(varphi) +/- sqrt(s^2 - r^2 sin^2 varphi)``.

    In the broken phase the square root is continued as
    ``i sign(sin varphi) sqrt(r^2 sin^2 varphi - s^2)`` so that ``s = 0``
    gives ``r e^{+/- i varphi}``.
    """
    d = h.discriminant
    if d >= 0:
        root = complex(np.sqrt(d))
    else:
        root = 1j * np.sign(np.sin(h.diag_phase)) * np.sqrt(-d)
    center = h.r * np.cos(h.diag_phase)
    return Spectrum(center + root, center - root, bool(d > 0))


def _check_phase(h: PTHamiltonian) -> None:
    if h.offdiag_phase != 0:
        raise UnsupportedPhase("eigenvectors and metric are constructed for offdiag_phase = 0 only")
    if h.s > 0 and h.discriminant < BOUNDARY_RTOL * h.s**2:
        raise PhaseBoundary(
            f"s^2 - r^2 sin^2(varphi) = {h.discriminant:.3g} is not positive "
            f"(r={h.r}, s={h.s}, varphi={h.diag_phase}); the metric diverges"
        )


def mixing_angle(h: PTHamiltonian) -> float:
    """``alpha = arcsin(r sin(varphi) / s)`` on (-pi/2, pi/2); zero for ``s = 0``."""
    _check_phase(h)
    if h.s == 0:
        return 0.0
    return float(np.arcsin(h.r * np.sin(h.diag_phase) / h.s))


def eigenvectors(h: PTHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Return the normalized eigenvectors ``(u_plus, u_minus)``."""
    _check_phase(h)
    if h.s == 0:
        return np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    a = mixing_angle(h)
    norm = 1 / np.sqrt(2 * np.cos(a))
    u_plus = norm * np.array([np.exp(0.5j * a), np.exp(-0.5j * a)])
    u_minus = norm * np.array([np.exp(-0.5j * a), -np.exp(0.5j * a)])
    return u_plus, u_minus


def metric(h: PTHamiltonian) -> Metric:
    a = mixing_angle(h)
    sec, tan = 1 / np.cos(a), np.tan(a)
    m = np.array([[sec, -1j * tan], [1j * tan, sec]], dtype=complex)
    return Metric(a, m)


def similarity_transform(h: PTHamiltonian) -> SimilarityTransform:
    """Hermitian ``G`` with ``G^2 = eta``; ``G H G^-1`` is Hermitian."""
    a = mixing_angle(h)
    c, s = np.cos(a / 2), np.sin(a / 2)
    g = np.array([[c, -1j * s], [1j * s, c]], dtype=complex) / np.sqrt(np.cos(a))
    return SimilarityTransform(g, g.conj())


def hermitian_counterpart(h: PTHamiltonian) -> np.ndarray:
    """The explicit Hermitian matrix that ``G H G^-1`` equals."""
    _check_phase(h)
    d = np.sqrt(h.discriminant) if h.s > 0 else 0.0
    c = h.r * np.cos(h.diag_phase)
    if h.s == 0:
        return h.matrix()
    return np.array([[c, d], [d, c]], dtype=complex)


def pt_commutator_check(h) -> float:
    """Norm of ``[H, PT]`` where T is complex conjugation.

    ``H (P T) v - (P T) H v = H P conj(v) - P conj(H v) = (H P - P conj(H)) conj(v)``,
    so the commutator vanishes on every vector iff ``H P = P conj(H)``.
    ``h`` may be a :class:`PTHamiltonian` or any 2x2 array.
    """
    m = h.matrix() if hasattr(h, "matrix") else np.asarray(h, dtype=complex)
    return float(np.linalg.norm(m @ PARITY - PARITY @ m.conj()))


def hamiltonian_pauli(h) -> np.ndarray:
    """Pauli coefficients of any Hamiltonian-like object or raw 2x2 array."""
    if hasattr(h, "pauli"):
        return h.pauli()
    return pauli_decompose(h)


def metric_matrix(h) -> np.ndarray:
    """The metric as a bare array; identity for Hermitian or diagonal systems."""
    if isinstance(h, PTHamiltonian):
        return metric(h).matrix
    return np.eye(2, dtype=complex)
