"""Pauli-basis bookkeeping for 2x2 density matrices.

A density matrix is written as ``rho = G0*s0 + G1*s1 + G2*s2 + G3*s3`` with
complex coefficients ``G``. The coefficient vector is what the Bloch-space
generators act on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


def pauli_decompose(matrix) -> np.ndarray:
    """Return the four complex coefficients of ``matrix`` in the (s0, s1, s2, s3) basis."""
    m = np.asarray(matrix, dtype=complex)
    return np.array([np.trace(m @ s) / 2 for s in PAULI])


def pauli_compose(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    return c[0] * SIGMA0 + c[1] * SIGMA1 + c[2] * SIGMA2 + c[3] * SIGMA3


class Basis(str, Enum):
    ORDINARY = "ordinary"
    GENERALIZED = "generalized"
    GENERALIZED_NORMALIZED = "generalized-normalized"


@dataclass(frozen=True)
class GammaVector:
    """Pauli coefficients (G0, G1, G2, G3) of a 2x2 density matrix."""

    gamma0: complex
    gamma1: complex
    gamma2: complex
    gamma3: complex

    @classmethod
    def from_array(cls, values) -> "GammaVector":
        v = np.asarray(values, dtype=complex).reshape(4)
        return cls(*(complex(x) for x in v))

    def as_array(self) -> np.ndarray:
        return np.array([self.gamma0, self.gamma1, self.gamma2, self.gamma3], dtype=complex)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A 2x2 complex density matrix together with the kind of object it represents.

    ``ordinary`` matrices are Hermitian; ``generalized`` ones are a Hermitian
    matrix multiplied by the metric, and ``generalized-normalized`` ones are
    additionally divided by their trace. Mixtures with ensemble weights are
    built by the caller as weighted sums of projectors.
    """

    matrix: np.ndarray
    basis: Basis = Basis.GENERALIZED

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis", Basis(self.basis))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


def gamma_of(rho) -> GammaVector:
    """Map a density matrix (or raw 2x2 array) to its Pauli coefficient vector."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return GammaVector(
        (m[0, 0] + m[1, 1]) / 2,
        (m[0, 1] + m[1, 0]) / 2,
        (m[1, 0] - m[0, 1]) / 2j,
        (m[0, 0] - m[1, 1]) / 2,
    )


def density_of(gv, basis: Basis | str = Basis.GENERALIZED) -> DensityMatrix:
    """Inverse of :func:`gamma_of`."""
    g = gv.as_array() if isinstance(gv, GammaVector) else np.asarray(gv, dtype=complex)
    m = np.array(
        [[g[0] + g[3], g[1] - 1j * g[2]], [g[1] + 1j * g[2], g[0] - g[3]]],
        dtype=complex,
    )
    return DensityMatrix(m, basis)
