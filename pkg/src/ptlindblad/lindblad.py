"""Lindblad operators of PT-symmetric form and their Bloch-space dissipator.

An operator shares the Hamiltonian's four-parameter form::

    L = [[r e^{i varphi},  s e^{i phi}],
         [s e^{-i phi},    r e^{-i varphi}]]
      = r cos(varphi) s0 + s cos(phi) s1 - s sin(phi) s2 + i r sin(varphi) s3

With Pauli coefficients ``L^k`` (k = 1, 2, 3) the dissipator acting on the
vector part of a density matrix is the symmetric block

    [[A, D, E],
     [D, B, F],
     [E, F, C]]

where ``A = sum (L^2)^2 + (L^3)^2`` and so on, and ``D = -sum L^1 L^2``,
``E = -sum L^1 L^3``, ``F = -sum L^2 L^3``. The squares are ordinary (not
modulus) squares, since the coefficients are complex in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import TooManyOperators
from .pauli import GammaVector, pauli_compose

MAX_OPERATORS = 3


@dataclass(frozen=True)
class LindbladOperator:
    r_j: float = 0.0
    s_j: float = 0.0
    varphi_j: float = 0.0
    phi_j: float = 0.0

    def matrix(self) -> np.ndarray:
        return pauli_compose(pauli_coefficients(self))


@dataclass(frozen=True)
class DissipatorCoefficients:
    """The six dissipator entries. ``E`` and ``F`` are purely imaginary for
    four-parameter operators; everything is stored as complex."""

    A: complex = 0j
    B: complex = 0j
    C: complex = 0j
    D: complex = 0j
    E: complex = 0j
    F: complex = 0j

    def block(self) -> np.ndarray:
        A, B, C, D, E, F = self.A, self.B, self.C, self.D, self.E, self.F
        return np.array([[A, D, E], [D, B, F], [E, F, C]], dtype=complex)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.block())


def pauli_coefficients(op: LindbladOperator) -> np.ndarray:
    """``(L^0, L^1, L^2, L^3) = (r cos varphi, s cos phi, -s sin phi, i r sin varphi)``."""
    return np.array(
        [
            op.r_j * np.cos(op.varphi_j),
            op.s_j * np.cos(op.phi_j),
            -op.s_j * np.sin(op.phi_j),
            1j * op.r_j * np.sin(op.varphi_j),
        ],
        dtype=complex,
    )


def pseudo_hermiticity_residual(op, eta) -> float:
    """Return ``||eta L eta^-1 - L^dagger||`` (Frobenius).

    ``op`` may be a :class:`LindbladOperator` or a raw 2x2 array; ``eta`` a
    metric object or array. For the metric of a PT-symmetric Hamiltonian with
    mixing angle ``alpha`` the residual vanishes exactly when
    ``r_j sin(varphi_j) = s_j cos(phi_j) sin(alpha)``.
    """
    m = op.matrix() if hasattr(op, "matrix") and callable(op.matrix) else np.asarray(op, dtype=complex)
    e = getattr(eta, "matrix", eta)
    e = np.asarray(e, dtype=complex)
    return float(np.linalg.norm(e @ m @ np.linalg.inv(e) - m.conj().T))


def compatible_operator(s_j: float, phi_j: float, alpha: float, r0: float = 0.0) -> LindbladOperator:
    """Build an operator that is pseudo-Hermitian for the metric with angle ``alpha``.

    The diagonal imaginary part is fixed to ``s_j cos(phi_j) sin(alpha)``;
    ``r0`` sets the (irrelevant for the dissipator) identity component.
    """
    im = s_j * np.cos(phi_j) * np.sin(alpha)
    r_j = float(np.hypot(r0, im))
    varphi_j = float(np.arctan2(im, r0)) if r_j > 0 else 0.0
    return LindbladOperator(r_j, s_j, varphi_j, phi_j)


def _check_count(ops: Sequence) -> None:
    if len(ops) > MAX_OPERATORS:
        raise TooManyOperators(f"a two-level system takes at most {MAX_OPERATORS} operators, got {len(ops)}")


def dissipator_coefficients(ops: Sequence[LindbladOperator]) -> DissipatorCoefficients:
    """Evaluate A..F from the operator parameters (closed trigonometric forms)."""
    _check_count(ops)
    A = B = C = D = E = F = 0j
    for op in ops:
        r, s, vp, p = op.r_j, op.s_j, op.varphi_j, op.phi_j
        rs2 = (r * np.sin(vp)) ** 2
        A += (s * np.sin(p)) ** 2 - rs2
        B += (s * np.cos(p)) ** 2 - rs2
        C += s**2
        D += s**2 * np.sin(p) * np.cos(p)
        E += -1j * r * s * np.cos(p) * np.sin(vp)
        F += 1j * r * s * np.sin(p) * np.sin(vp)
    return DissipatorCoefficients(A, B, C, D, E, F)


def coefficients_from_pauli(ops: Sequence[LindbladOperator]) -> DissipatorCoefficients:
    """Evaluate A..F directly from the Pauli-coefficient definitions."""
    _check_count(ops)
    vecs = np.array([pauli_coefficients(op)[1:] for op in ops], dtype=complex).reshape(-1, 3)
    sq = (vecs**2).sum(axis=0)
    total = sq.sum()
    outer = vecs.T @ vecs
    return DissipatorCoefficients(
        A=total - sq[0],
        B=total - sq[1],
        C=total - sq[2],
        D=-outer[0, 1],
        E=-outer[0, 2],
        F=-outer[1, 2],
    )


def case_A_zero(xi: float) -> list[LindbladOperator]:
    """One operator ``sqrt(xi) s1``: gives A = 0, B = C = xi, D = E = F = 0."""
    if xi < 0:
        raise ValueError(f"damping rate xi must be non-negative, got {xi}")
    return [LindbladOperator(0.0, float(np.sqrt(xi)), 0.0, 0.0)]


def case_B_zero(zeta: float) -> list[LindbladOperator]:
    """One operator ``-sqrt(zeta) s2``: gives B = 0, A = C = zeta, D = E = F = 0."""
    if zeta < 0:
        raise ValueError(f"damping rate zeta must be non-negative, got {zeta}")
    return [LindbladOperator(0.0, float(np.sqrt(zeta)), 0.0, np.pi / 2)]


def rate_coefficients(case: str, rate: float) -> DissipatorCoefficients:
    """Exact coefficients of the two one-parameter cases (no trigonometric rounding)."""
    if rate < 0:
        raise ValueError(f"damping rate must be non-negative, got {rate}")
    if case == "A0":
        return DissipatorCoefficients(A=0j, B=rate, C=rate)
    if case == "B0":
        return DissipatorCoefficients(A=rate, B=0j, C=rate)
    raise ValueError(f"unknown dissipator case {case!r}; expected 'A0' or 'B0'")


def dissipator_action(coeffs: DissipatorCoefficients, rho_vec) -> GammaVector:
    """Bloch image of the Lindblad term; the zeroth component is always 0."""
    g = rho_vec.as_array() if isinstance(rho_vec, GammaVector) else np.asarray(rho_vec, dtype=complex)
    out = np.zeros(4, dtype=complex)
    out[1:] = -2 * coeffs.block() @ g[1:]
    return GammaVector.from_array(out)


def lindblad_term(ops: Sequence, rho) -> np.ndarray:
    """Direct 2x2 evaluation ``sum_j -1/2 (L^2 rho + rho L^2) + L rho L``."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for op in ops:
        m = op.matrix() if hasattr(op, "matrix") else np.asarray(op, dtype=complex)
        m2 = m @ m
        out += -0.5 * (m2 @ rho + rho @ m2) + m @ rho @ m
    return out
