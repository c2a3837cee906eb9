"""Initial density matrices for mass, flavor and rotated states.

Mass states are the eigenvector projectors times the metric. Flavor states
are the canonical basis vectors, obtained from the mass states with the mixing
matrix, again times the metric. For probabilities the flavor matrices are
divided by their trace (``sec(alpha)``) so that every initial state has unit
trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core_model import NeutrinoHamiltonian, PTHamiltonian, eigenvectors, mixing_angle
from .errors import OutOfDomain
from .pauli import Basis, DensityMatrix, density_of, gamma_of

__all__ = [
    "StateLabel",
    "MixingMatrix",
    "MASS_PLUS",
    "MASS_MINUS",
    "FLAVOR_A",
    "FLAVOR_B",
    "rotated_alpha",
    "rotated_beta",
    "initial_density",
    "mixing_matrix",
    "rotated_projector",
    "gamma_of",
    "density_of",
]

KINDS = ("mass_plus", "mass_minus", "flavor_a", "flavor_b", "rotated_alpha", "rotated_beta")


@dataclass(frozen=True)
class StateLabel:
    kind: str
    theta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown state {self.kind!r}; expected one of {KINDS}")
        rotated = self.kind.startswith("rotated")
        if rotated and (self.theta is None or not np.isfinite(self.theta)):
            raise ValueError("rotated states need a finite theta")
        if not rotated and self.theta is not None:
            raise ValueError(f"{self.kind} takes no theta")

    @property
    def is_mass(self) -> bool:
        return self.kind.startswith("mass")

    @property
    def is_flavor(self) -> bool:
        return self.kind.startswith("flavor")

    @property
    def short(self) -> str:
        """One-letter channel symbol used in column names."""
        return {"mass_plus": "p", "mass_minus": "m", "flavor_a": "a", "flavor_b": "b",
                "rotated_alpha": "a", "rotated_beta": "b"}[self.kind]


MASS_PLUS = StateLabel("mass_plus")
MASS_MINUS = StateLabel("mass_minus")
FLAVOR_A = StateLabel("flavor_a")
FLAVOR_B = StateLabel("flavor_b")


def rotated_alpha(theta: float) -> StateLabel:
    return StateLabel("rotated_alpha", float(theta))


def rotated_beta(theta: float) -> StateLabel:
    return StateLabel("rotated_beta", float(theta))


@dataclass(frozen=True, eq=False)
class MixingMatrix:
    """Coefficients expressing flavor states in terms of mass eigenvectors.

    Row ``a`` applied to ``(u_plus, u_minus)`` gives ``(1, 0)`` and row ``b``
    gives ``(0, 1)``. ``trivial`` marks the diagonal Hamiltonian, where the two
    bases coincide.
    """

    matrix: np.ndarray
    trivial: bool = False


def mixing_matrix(h: PTHamiltonian) -> MixingMatrix:
    a = mixing_angle(h)
    if h.s == 0:
        return MixingMatrix(np.eye(2, dtype=complex), trivial=True)
    e = np.exp(0.5j * a)
    m = np.array([[e, e.conjugate()], [e.conjugate(), -e]], dtype=complex) / np.sqrt(2 * np.cos(a))
    return MixingMatrix(m)


def rotated_projector(kind: str, theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    alpha = np.array([[c * c, s * c], [s * c, s * s]], dtype=complex)
    if kind == "rotated_alpha":
        return alpha
    return np.eye(2, dtype=complex) - alpha


def _system_density(label: StateLabel, h: PTHamiltonian, normalized: bool) -> np.ndarray:
    a = mixing_angle(h)
    sec, tan = 1 / np.cos(a), np.tan(a)
    if label.is_mass:
        if h.s == 0:
            return np.diag([1, 0] if label.kind == "mass_plus" else [0, 1]).astype(complex)
        plus = 0.5 * np.array([[1 + 1j * tan, sec], [sec, 1 - 1j * tan]], dtype=complex)
        return plus if label.kind == "mass_plus" else np.eye(2) - plus
    if label.kind == "flavor_a":
        if normalized:
            return np.array([[1, -1j * np.sin(a)], [0, 0]], dtype=complex)
        return np.array([[sec, -1j * tan], [0, 0]], dtype=complex)
    if normalized:
        return np.array([[0, 0], [1j * np.sin(a), 1]], dtype=complex)
    return np.array([[0, 0], [1j * tan, sec]], dtype=complex)


def _neutrino_density(label: StateLabel, h: NeutrinoHamiltonian) -> np.ndarray:
    if label.kind == "mass_plus":
        return np.diag([1, 0]).astype(complex)
    if label.kind == "mass_minus":
        return np.diag([0, 1]).astype(complex)
    kind = "rotated_alpha" if label.kind == "flavor_a" else "rotated_beta"
    return rotated_projector(kind, h.theta)


def initial_density(label: StateLabel, h, normalized: bool = True) -> DensityMatrix:
    """Initial generalized density matrix for ``label`` in the system ``h``.

    Parameters
    ----------
    label
        Which state.
    h
        A :class:`PTHamiltonian` or :class:`NeutrinoHamiltonian`. For the
        neutrino system the flavor states are the ``theta``-rotated projectors.
        Rotated states are only defined for a trivial metric.
    normalized
        Divide flavor matrices by their trace. Mass and rotated states already
        have unit trace.
    """
    if label.kind.startswith("rotated"):
        if isinstance(h, PTHamiltonian) and h.s != 0 and h.r * np.sin(h.diag_phase) != 0:
            raise OutOfDomain("rotated states need a trivial metric (s = 0 or r sin(diag_phase) = 0)")
        m, basis = rotated_projector(label.kind, label.theta), Basis.GENERALIZED_NORMALIZED
    elif isinstance(h, NeutrinoHamiltonian):
        m, basis = _neutrino_density(label, h), Basis.ORDINARY
    else:
        m = _system_density(label, h, normalized)
        basis = Basis.GENERALIZED_NORMALIZED if (normalized or label.is_mass) else Basis.GENERALIZED
    return DensityMatrix(m, basis)


def flavor_vectors(h: PTHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Rebuild ``(u_a, u_b)`` from the mass eigenvectors via the mixing matrix."""
    mix = mixing_matrix(h).matrix
    up, um = eigenvectors(h)
    basis = np.stack([up, um])
    return mix[0] @ basis, mix[1] @ basis
