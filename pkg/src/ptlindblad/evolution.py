"""Bloch-space generator, its exact exponential, and time propagation.

The Pauli coefficient vector of a generalized density matrix obeys the linear
equation ``dG/dt = -2 R G`` with a 4x4 generator ``R`` whose zeroth row and
column vanish. The exponential ``M(t) = exp(-2 R t)`` is evaluated in closed
form with Cayley-Hamilton: the 3x3 block is made traceless, the roots of its
depressed characteristic cubic are found, and ``M`` becomes a quadratic
polynomial in that block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core_model import NeutrinoHamiltonian, PTHamiltonian, hamiltonian_pauli
from .errors import StepTooLarge
from .lindblad import DissipatorCoefficients
from .pauli import DensityMatrix, GammaVector, density_of, gamma_of

# relative root separation below which the polynomial solve is abandoned
DEGENERACY_RTOL = 1e-3
SERIES_TERMS = 30
# oracle integrator refuses steps with 2 ||R|| dt above this
MAX_STEP_NORM = 0.1


@dataclass(frozen=True, eq=False)
class Generator:
    r_matrix: np.ndarray
    tag: str = "general"

    @property
    def block(self) -> np.ndarray:
        return self.r_matrix[1:, 1:]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.r_matrix, 2))


@dataclass(frozen=True, eq=False)
class Propagator:
    m_matrix: np.ndarray
    cubic_roots: np.ndarray
    coeffs: tuple
    t: float = 0.0
    fallback: bool = False


def _tag(h, coeffs: DissipatorCoefficients) -> str:
    if isinstance(h, NeutrinoHamiltonian):
        return "neutrino"
    if isinstance(h, PTHamiltonian):
        if h.s == 0:
            return "diagonal-s0"
        if h.r == 0:
            return "hermitian-r0"
    cross = coeffs.D == 0 and coeffs.E == 0 and coeffs.F == 0
    if cross and coeffs.A == 0:
        return "A-zero"
    if cross and coeffs.B == 0:
        return "B-zero"
    return "general"


def build_generator(h, coeffs: Optional[DissipatorCoefficients] = None) -> Generator:
    """Assemble ``R`` from the Hamiltonian's Pauli coefficients and A..F.

    ``h`` may be a :class:`PTHamiltonian`, a :class:`NeutrinoHamiltonian` or a
    raw 2x2 array.
    """
    coeffs = coeffs or DissipatorCoefficients()
    _, h1, h2, h3 = hamiltonian_pauli(h)
    A, B, C, D, E, F = coeffs.A, coeffs.B, coeffs.C, coeffs.D, coeffs.E, coeffs.F
    r = np.zeros((4, 4), dtype=complex)
    r[1:, 1:] = [
        [A, D + h3, E - h2],
        [D - h3, B, F + h1],
        [E + h2, F - h1, C],
    ]
    return Generator(r, _tag(h, coeffs))


def depressed_reduce(g: Generator) -> tuple[np.ndarray, complex]:
    """Return ``(S, shift)`` with ``S = R3 - shift * I`` traceless and ``shift = tr(R3) / 3``."""
    block = g.block
    shift = np.trace(block) / 3
    return block - shift * np.eye(3), complex(shift)


def cubic_roots(S) -> np.ndarray:
    """Roots of the depressed characteristic cubic ``x^3 + c1 x + c0 = 0`` of a traceless ``S``.

    ``c1 = -tr(S^2)/2`` and ``c0 = -det(S)``. Cardano's formula in complex
    arithmetic, followed by one Newton step per root.
    """
    S = np.asarray(S, dtype=complex)
    c1 = -np.trace(S @ S) / 2
    c0 = -_det3(S)
    return _depressed_cubic(complex(c1), complex(c0))


def _det3(m) -> complex:
    # cofactor expansion; LU-based det divides by pivots and fails on subnormal entries
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def _depressed_cubic(p: complex, q: complex) -> np.ndarray:
    disc = np.sqrt((q / 2) ** 2 + (p / 3) ** 3 + 0j)
    # pick the sign that avoids cancellation
    w = -q / 2 + disc if abs(-q / 2 + disc) >= abs(-q / 2 - disc) else -q / 2 - disc
    if w == 0:
        return np.zeros(3, dtype=complex)
    u = w ** (1 / 3)
    omega = np.exp(2j * np.pi / 3)
    roots = []
    for k in range(3):
        uk = u * omega**k
        x = uk - p / (3 * uk)
        fp = 3 * x * x + p
        if fp != 0:
            x = x - (x**3 + p * x + q) / fp
        roots.append(x)
    return np.array(roots, dtype=complex)


def _expm1(z: complex) -> complex:
    """Complex ``exp(z) - 1`` without cancellation for small ``|z|``."""
    x, y = z.real, z.imag
    re = math.expm1(x) * math.cos(y) - 2 * math.sin(y / 2) ** 2
    im = math.exp(x) * math.sin(y)
    return complex(re, im)


def _divided(x: complex, y: complex, t: float) -> complex:
    """First divided difference of ``f(l) = exp(-2 l t)`` at ``x, y``."""
    d = x - y
    if d == 0:
        return -2 * t * np.exp(-2 * y * t)
    return np.exp(-2 * y * t) * _expm1(-2 * d * t) / d


def series_exp(matrix, terms: int = SERIES_TERMS) -> np.ndarray:
    """Scaled-and-squared truncated Taylor series of ``exp(matrix)``."""
    a = np.asarray(matrix, dtype=complex)
    nrm = np.linalg.norm(a, 1)
    k = max(0, int(math.ceil(math.log2(nrm / 0.5)))) if nrm > 0.5 else 0
    a = a / 2**k
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for n in range(1, terms + 1):
        term = term @ a / n
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def _embed(m3: np.ndarray) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    m[1:, 1:] = m3
    return m


def cayley_hamilton_exp(g: Generator, t: float) -> Propagator:
    """Exact ``exp(-2 R t)`` as ``Phi (a0 I - 2 S t a1 + 4 S^2 t^2 a2)`` in the 3x3 block.

    The interpolation conditions ``exp(-2 l_i t) = a0 - 2 l_i t a1 + 4 l_i^2 t^2 a2``
    are solved in Newton divided-difference form. Nearly coincident roots make
    that system ill-conditioned, so the series oracle is used instead and the
    propagator is flagged ``fallback``.
    """
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    S, shift = depressed_reduce(g)
    roots = cubic_roots(S)
    if t * t == 0:
        # below ~1e-162 the step is invisible next to the identity in double precision
        return Propagator(np.eye(4, dtype=complex), roots, (1 + 0j, 0j, 0j), float(t))
    phi = np.exp(-2 * t * shift)

    seps = [abs(roots[i] - roots[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    scale = 1 + max(abs(roots))
    if not np.all(np.isfinite(roots)) or min(seps) < DEGENERACY_RTOL * scale:
        m3 = series_exp(-2 * t * g.block)
        return Propagator(_embed(m3), roots, _coeffs_from_block(m3 / phi, S, t), t, fallback=True)

    # order so that the outer pair (x, z) is the widest one
    widest = int(np.argmax(seps))
    order = {0: (0, 2, 1), 1: (0, 1, 2), 2: (1, 0, 2)}[widest]
    x, y, z = roots[list(order)]
    f_z = np.exp(-2 * z * t)
    f_zy = _divided(y, z, t)
    f_zyx = (_divided(x, y, t) - f_zy) / (x - z)

    eye = np.eye(3)
    sz = S - z * eye
    m3 = phi * (f_z * eye + f_zy * sz + f_zyx * sz @ (S - y * eye))

    # monomial form p(l) = c0 + c1 l + c2 l^2 for reporting (a0, a1, a2)
    c2 = f_zyx
    c1 = f_zy - f_zyx * (z + y)
    c0 = f_z - f_zy * z + f_zyx * z * y
    with np.errstate(over="ignore", invalid="ignore"):  # reporting only; may overflow for huge t
        coeffs = (complex(c0), complex(-c1 / (2 * t)), complex(c2 / (4 * t * t)))
    return Propagator(_embed(m3), roots, coeffs, t)


def _coeffs_from_block(m3, S, t):
    """Recover (a0, a1, a2) by least squares when the root system is singular."""
    basis = np.stack([np.eye(3).ravel(), (-2 * t * S).ravel(), (4 * t * t * S @ S).ravel()], axis=1)
    sol, *_ = np.linalg.lstsq(basis, np.asarray(m3).ravel(), rcond=None)
    return tuple(complex(c) for c in sol)


def propagate(p: Propagator, gamma0) -> GammaVector:
    g = gamma0.as_array() if isinstance(gamma0, GammaVector) else np.asarray(gamma0, dtype=complex)
    return GammaVector.from_array(p.m_matrix @ g)


def default_steps(g: Generator, t: float) -> int:
    return max(1, math.ceil(2000 * t * max(1.0, g.norm)))


def _check_step(norm: float, t: float, steps: int) -> None:
    if steps <= 0:
        raise ValueError("steps must be positive")
    h = 2 * norm * t / steps
    if h >= MAX_STEP_NORM:
        raise StepTooLarge(f"2*||R||*t/steps = {h:.3g} must stay below {MAX_STEP_NORM}")


def _rk4(rhs, y0, t, steps):
    y = np.array(y0, dtype=complex)
    dt = t / steps
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def integrate_oracle(g: Generator, gamma0, t: float, steps: Optional[int] = None) -> GammaVector:
    """Classical RK4 integration of ``dG/dt = -2 R G`` with a fixed step."""
    steps = default_steps(g, t) if steps is None else steps
    _check_step(g.norm, t, steps)
    y0 = gamma0.as_array() if isinstance(gamma0, GammaVector) else np.asarray(gamma0, dtype=complex)
    r = g.r_matrix
    return GammaVector.from_array(_rk4(lambda y: -2 * r @ y, y0, t, steps))


@dataclass(frozen=True, eq=False)
class NormalizedSystem:
    """Right-hand side of the trace-normalized nonlinear evolution.

    ``dv/dt = (-2K + 2 Im(H0)) v - 2 D v - 4 v (Im(H) . v)`` where ``K`` collects the
    Hamiltonian part, ``D`` the dissipator block and ``Im(H)`` the anti-Hermitian
    Pauli coefficients. The last term keeps ``tr rho = 2 v0`` fixed at one.
    """

    linear: np.ndarray
    im_h: np.ndarray
    quadratic: bool = True
    _norm: float = field(init=False, default=0.0)

    def __post_init__(self):
        object.__setattr__(self, "_norm", float(np.linalg.norm(self.linear, 2) + 4 * np.linalg.norm(self.im_h)))

    def __call__(self, v: np.ndarray) -> np.ndarray:
        out = self.linear @ v
        if self.quadratic:
            out = out - 4 * v * (self.im_h @ v)
        return out


def normalized_rhs(h, coeffs: Optional[DissipatorCoefficients] = None, quadratic: bool = True) -> NormalizedSystem:
    coeffs = coeffs or DissipatorCoefficients()
    hc = hamiltonian_pauli(h)
    re, im = hc.real, hc.imag
    k = np.array(
        [
            [0, -im[1], -im[2], -im[3]],
            [-im[1], 0, re[3], -re[2]],
            [-im[2], -re[3], 0, re[1]],
            [-im[3], re[2], -re[1], 0],
        ],
        dtype=complex,
    )
    d = np.zeros((4, 4), dtype=complex)
    d[1:, 1:] = coeffs.block()
    linear = -2 * k + 2 * im[0] * np.eye(4) - 2 * d
    return NormalizedSystem(linear, np.asarray(im, dtype=float), quadratic)


def evolve_normalized(
    h,
    coeffs: Optional[DissipatorCoefficients],
    rho0,
    t: float,
    steps: Optional[int] = None,
    quadratic: bool = True,
) -> DensityMatrix:
    """Integrate the nonlinear equation for ``rho / tr(rho)`` with RK4.

    With ``quadratic=False`` the state-dependent term is dropped, which shows
    the trace drift that term exists to cancel.
    """
    system = normalized_rhs(h, coeffs, quadratic)
    if steps is None:
        steps = max(1, math.ceil(2000 * t * max(1.0, system._norm)))
    _check_step(system._norm, t, steps)
    v = _rk4(system, gamma_of(rho0).as_array(), t, steps)
    return density_of(v, "generalized-normalized")
