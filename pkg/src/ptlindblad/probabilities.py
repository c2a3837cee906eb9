"""Transition probabilities: numeric evolution and the closed-form families.

A probability is ``Re tr[rho_from(t) rho_to(0)]``. In Pauli coefficients this
is ``2 * sum_mu G_mu(t) G_mu^to`` (no complex conjugation), so a table over a
time grid costs one 4x4 propagator per time point.

Every closed-form family is evaluated on scalar or array ``t`` and returns one
:class:`ProbabilityQuad` per basis it describes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional

import numpy as np

from .core_model import NeutrinoHamiltonian, PTHamiltonian, mixing_angle
from .errors import NonRealProbability, OutOfDomain
from .evolution import build_generator, cayley_hamilton_exp
from .lindblad import DissipatorCoefficients, rate_coefficients
from .pauli import gamma_of
from .states import (
    FLAVOR_A,
    FLAVOR_B,
    MASS_MINUS,
    MASS_PLUS,
    StateLabel,
    initial_density,
    rotated_alpha,
    rotated_beta,
)

# imaginary residual above which a probability is rejected
IMAG_TOL = 1e-8

CHANNEL_NAMES = {
    "mass": ("P_pp", "P_pm", "P_mp", "P_mm"),
    "flavor": ("P_aa", "P_ab", "P_ba", "P_bb"),
    "rotated": ("P_aa", "P_ab", "P_ba", "P_bb"),
}


@dataclass(frozen=True, eq=False)
class ProbabilityQuad:
    """Four transition probabilities ``(from, to)`` = (1,1), (1,2), (2,1), (2,2).

    In the mass basis 1 and 2 are ``+`` and ``-``; otherwise ``a`` and ``b``.
    Values are floats or arrays matching the time argument. ``sums`` holds
    ``(P_aa + P_ab, P_bb + P_ba)`` when a family supplies its own expression
    for them.
    """

    p_pp: object
    p_pm: object
    p_mp: object
    p_mm: object
    basis: str = "mass"
    overdamped: bool = False
    sums: Optional[tuple] = None

    @property
    def columns(self) -> tuple:
        return CHANNEL_NAMES[self.basis]

    def as_array(self) -> np.ndarray:
        return np.array([self.p_pp, self.p_pm, self.p_mp, self.p_mm], dtype=float)

    def as_dict(self) -> dict:
        return dict(zip(self.columns, (self.p_pp, self.p_pm, self.p_mp, self.p_mm)))


@dataclass(frozen=True)
class FamilyParams:
    r: float = 0.0
    s: float = 0.0
    varphi: float = 0.0
    xi: float = 0.0
    zeta: float = 0.0
    omega: float = 0.0
    theta: float = 0.0


class FormulaFamily(Enum):
    """Closed-form families; ``reads`` names the parameters each one uses."""

    NEUTRINO_A0 = ("neutrino_A0", ("omega", "xi", "theta"), ("mass", "flavor"))
    NEUTRINO_B0 = ("neutrino_B0", ("omega", "zeta", "theta"), ("mass", "flavor"))
    NO_LINDBLAD = ("no_lindblad", ("r", "s", "varphi"), ("mass", "flavor"))
    S0_A0 = ("s0_A0", ("xi",), ("mass", "flavor"))
    S0_B0 = ("s0_B0", ("zeta",), ("mass", "flavor"))
    S0_A0_ROTATED = ("s0_A0_rotated", ("r", "varphi", "xi", "theta"), ("rotated",))
    S0_B0_ROTATED = ("s0_B0_rotated", ("r", "varphi", "zeta", "theta"), ("rotated",))
    R0_A0 = ("r0_A0", ("s", "xi"), ("mass", "flavor"))
    R0_B0 = ("r0_B0", ("s", "zeta"), ("mass", "flavor"))
    GENERAL_B0_EXACT = ("general_B0_exact", ("r", "s", "varphi", "zeta"), ("mass", "flavor"))
    GENERAL_A0_SERIES = ("general_A0_series", ("r", "s", "varphi", "xi"), ("mass", "flavor"))

    def __init__(self, key, reads, bases):
        self.key = key
        self.reads = reads
        self.bases = bases

    @classmethod
    def from_key(cls, key: str) -> "FormulaFamily":
        for member in cls:
            if member.key == key or member.name == key.upper():
                return member
        raise ValueError(f"unknown formula family {key!r}")

    @property
    def rate_name(self) -> Optional[str]:
        return next((p for p in ("xi", "zeta") if p in self.reads), None)


def _osc(omega_sq: float, t):
    """Return ``(cos(W t), sin(W t) / W)`` for ``W = sqrt(omega_sq)``.

    Negative ``omega_sq`` continues to ``cosh``/``sinh``; zero gives ``(1, t)``.
    """
    t = np.asarray(t, dtype=float)
    if omega_sq > 0:
        w = np.sqrt(omega_sq)
        return np.cos(w * t), np.sin(w * t) / w
    if omega_sq < 0:
        k = np.sqrt(-omega_sq)
        return np.cosh(k * t), np.sinh(k * t) / k
    return np.ones_like(t), t


def _rate(params: FamilyParams, name: str) -> float:
    value = getattr(params, name)
    if value < 0:
        raise OutOfDomain(f"{name} must be non-negative, got {value}")
    return value


def _need_pt_phase(params: FamilyParams) -> None:
    if params.s <= 0:
        raise OutOfDomain(f"this family needs s > 0, got s={params.s}")
    if params.s**2 <= (params.r * np.sin(params.varphi)) ** 2:
        raise OutOfDomain(
            f"s^2 - r^2 sin^2(varphi) must be positive (r={params.r}, s={params.s}, varphi={params.varphi})"
        )


def _symmetric(keep, basis, overdamped=False, sums=None) -> ProbabilityQuad:
    """Quad with ``P_11 = P_22 = keep`` and ``P_12 = P_21 = 1 - keep``."""
    return ProbabilityQuad(keep, 1 - keep, 1 - keep, keep, basis, overdamped, sums)


def _decay_mass(rate: float, t) -> ProbabilityQuad:
    return _symmetric(0.5 * (1 + np.exp(-2 * rate * np.asarray(t, dtype=float))), "mass")


def _mixed(rate, theta, omega_sq, sign, t, basis):
    """``1/2 [1 + e^{-2 g t} cos^2 2th + e^{-g t} sin^2 2th (c + sign g s/W)]``."""
    t = np.asarray(t, dtype=float)
    c, sw = _osc(omega_sq, t)
    inner = c + sign * rate * sw
    keep = 0.5 * (1 + np.exp(-2 * rate * t) * np.cos(2 * theta) ** 2 + np.exp(-rate * t) * np.sin(2 * theta) ** 2 * inner)
    return _symmetric(keep, basis, overdamped=omega_sq < 0)


def _neutrino(params, rate_name, sign, t):
    rate = _rate(params, rate_name)
    omega_sq = 4 * params.omega**2 - rate**2
    return {"mass": _decay_mass(rate, t), "flavor": _mixed(rate, params.theta, omega_sq, sign, t, "flavor")}


def _no_lindblad(params, t):
    _need_pt_phase(params)
    t = np.asarray(t, dtype=float)
    alpha = np.arcsin(params.r * np.sin(params.varphi) / params.s)
    beta = 2 * np.sqrt(params.s**2 - (params.r * np.sin(params.varphi)) ** 2)
    one = np.ones_like(t)
    keep = np.cos(beta * t / 2) ** 2
    flavor = ProbabilityQuad(
        keep, np.sin(alpha - beta * t / 2) ** 2, np.sin(alpha + beta * t / 2) ** 2, keep, "flavor"
    )
    return {"mass": ProbabilityQuad(one, 0 * one, 0 * one, one, "mass"), "flavor": flavor}


def _s0(params, rate_name, t):
    mass = _decay_mass(_rate(params, rate_name), t)
    flavor = ProbabilityQuad(mass.p_pp, mass.p_pm, mass.p_mp, mass.p_mm, "flavor")
    return {"mass": mass, "flavor": flavor}


def _s0_rotated(params, rate_name, sign, t):
    rate = _rate(params, rate_name)
    # the hyperbolic frequency sqrt(4 r^2 sin^2 varphi + rate^2) as an imaginary W
    omega_sq = -(4 * (params.r * np.sin(params.varphi)) ** 2 + rate**2)
    quad = _mixed(rate, params.theta, omega_sq, sign, t, "rotated")
    return {"rotated": ProbabilityQuad(quad.p_pp, quad.p_pm, quad.p_mp, quad.p_mm, "rotated")}


def _r0_A0(params, t):
    if params.s <= 0:
        raise OutOfDomain(f"this family needs s > 0, got s={params.s}")
    xi = _rate(params, "xi")
    t = np.asarray(t, dtype=float)
    one = np.ones_like(t)
    keep = 0.5 * (1 + np.exp(-2 * xi * t) * np.cos(2 * params.s * t))
    return {"mass": ProbabilityQuad(one, 0 * one, 0 * one, one, "mass"), "flavor": _symmetric(keep, "flavor")}


def _r0_B0(params, t):
    if params.s <= 0:
        raise OutOfDomain(f"this family needs s > 0, got s={params.s}")
    zeta = _rate(params, "zeta")
    t = np.asarray(t, dtype=float)
    omega_sq = 4 * (params.s**2 - zeta**2 / 4)
    c, sw = _osc(omega_sq, t)
    keep = 0.5 * (1 + np.exp(-zeta * t) * (c - zeta * sw))
    return {"mass": _decay_mass(zeta, t), "flavor": _symmetric(keep, "flavor", overdamped=omega_sq < 0)}


def _b0_pieces(params):
    _need_pt_phase(params)
    zeta = _rate(params, "zeta")
    rs = params.r * np.sin(params.varphi)
    k = 1 - 2 * rs**2 / params.s**2
    q = 4 * rs * (1 - rs**2 / params.s**2)
    omega_sq = 4 * (params.s**2 - rs**2 - zeta**2 / 4)
    return zeta, k, q, omega_sq


def _general_B0(params, t):
    zeta, k, q, omega_sq = _b0_pieces(params)
    t = np.asarray(t, dtype=float)
    c, sw = _osc(omega_sq, t)
    damp = np.exp(-zeta * t)
    keep = 0.5 * (1 + damp * (c - zeta * k * sw))
    p_ab = 0.5 * (1 - damp * (k * c - (zeta - q) * sw))
    p_ba = 0.5 * (1 - damp * (k * c - (zeta + q) * sw))
    flavor = ProbabilityQuad(keep, p_ab, p_ba, keep, "flavor", overdamped=omega_sq < 0)
    return {"mass": _decay_mass(zeta, t), "flavor": flavor}


def _general_A0_series(params, t):
    if params.s <= 0:
        raise OutOfDomain(f"this family needs s > 0, got s={params.s}")
    xi = _rate(params, "xi")
    r, s, vp = params.r, params.s, params.varphi
    t = np.asarray(t, dtype=float)
    sin2, cos2 = np.sin(2 * s * t), np.cos(2 * s * t)
    r2, vp2 = r * r, vp * vp

    leak = r2 * t / s**2 * vp2 * xi - r2 * np.sin(s * t) ** 2 / s**4 * vp2 * xi**2
    mass = ProbabilityQuad(1 + leak, -leak, -leak, 1 + leak, "mass")

    keep = (
        np.cos(s * t) ** 2
        - t * cos2 * xi
        + t**2 * cos2 * xi**2
        + r2 * t * sin2 / (2 * s) * vp2
        - r2 * (sin2 + 2 * s * t * (cos2 + 2 * s * t * sin2)) / (4 * s**3) * vp2 * xi
        + r2 * t**2 * (cos2 + s * t * sin2) / s**2 * vp2 * xi**2
    )
    common = (
        np.sin(s * t) ** 2
        + t * cos2 * xi
        + r2 * (2 * cos2 - s * t * sin2) / (2 * s**2) * vp2
        - t**2 * cos2 * xi**2
        + r2 * ((1 + 4 * s**2 * t**2) * sin2 - 6 * s * t * cos2) / (4 * s**3) * vp2 * xi
        + r2 * t**2 * (cos2 - s * t * sin2) / s**2 * vp2 * xi**2
    )
    odd = -r * sin2 / s * vp + 2 * r * t * sin2 / s * vp * xi - 2 * r * t**2 * sin2 / s * vp * xi**2
    growth = 1 + 2 * xi * t * (xi * t - 1)
    sums = (
        1 + r * vp / s**2 * (r * vp * cos2 - s * sin2) * growth,
        1 + r * vp / s**2 * (r * vp * cos2 + s * sin2) * growth,
    )
    flavor = ProbabilityQuad(keep, common + odd, common - odd, keep, "flavor", sums=sums)
    return {"mass": mass, "flavor": flavor}


def closed_form(family: FormulaFamily, params: FamilyParams, t) -> Dict[str, ProbabilityQuad]:
    """Evaluate ``family`` at ``t`` (scalar or array); one quad per basis."""
    family = FormulaFamily.from_key(family) if isinstance(family, str) else family
    F = FormulaFamily
    if family is F.NEUTRINO_A0:
        return _neutrino(params, "xi", +1, t)
    if family is F.NEUTRINO_B0:
        return _neutrino(params, "zeta", -1, t)
    if family is F.NO_LINDBLAD:
        return _no_lindblad(params, t)
    if family is F.S0_A0:
        return _s0(params, "xi", t)
    if family is F.S0_B0:
        return _s0(params, "zeta", t)
    if family is F.S0_A0_ROTATED:
        return _s0_rotated(params, "xi", +1, t)
    if family is F.S0_B0_ROTATED:
        return _s0_rotated(params, "zeta", -1, t)
    if family is F.R0_A0:
        return _r0_A0(params, t)
    if family is F.R0_B0:
        return _r0_B0(params, t)
    if family is F.GENERAL_B0_EXACT:
        return _general_B0(params, t)
    return _general_A0_series(params, t)


def ab_ba_difference(params: FamilyParams, t):
    """``P_ab - P_ba`` for the exact B = 0 family."""
    zeta, _, q, omega_sq = _b0_pieces(params)
    _, sw = _osc(omega_sq, t)
    return -q * np.exp(-zeta * np.asarray(t, dtype=float)) * sw


def secular_indicator(xi: float, t):
    """``max(xi t, (xi t)^2)``: the size of the terms that limit the series family."""
    x = xi * np.asarray(t, dtype=float)
    return np.maximum(x, x * x)


def family_system(family: FormulaFamily, params: FamilyParams):
    """The Hamiltonian and dissipator that a family describes."""
    family = FormulaFamily.from_key(family) if isinstance(family, str) else family
    rate_name = family.rate_name
    case = "A0" if rate_name == "xi" else "B0"
    coeffs = rate_coefficients(case, getattr(params, rate_name)) if rate_name else DissipatorCoefficients()
    if family in (FormulaFamily.NEUTRINO_A0, FormulaFamily.NEUTRINO_B0):
        return NeutrinoHamiltonian(params.omega, params.theta), coeffs
    if family.key.startswith("s0"):
        return PTHamiltonian(params.r, 0.0, params.varphi), coeffs
    if family.key.startswith("r0"):
        return PTHamiltonian(0.0, params.s, params.varphi), coeffs
    return PTHamiltonian(params.r, params.s, params.varphi), coeffs


def basis_labels(basis: str, theta: float = 0.0) -> tuple[StateLabel, StateLabel]:
    if basis == "mass":
        return MASS_PLUS, MASS_MINUS
    if basis == "flavor":
        return FLAVOR_A, FLAVOR_B
    if basis == "rotated":
        return rotated_alpha(theta), rotated_beta(theta)
    raise ValueError(f"unknown basis {basis!r}")


def _pair_value(gamma_t: np.ndarray, gamma_to: np.ndarray) -> np.ndarray:
    value = 2 * (gamma_t * gamma_to).sum(axis=-1)
    worst = np.max(np.abs(value.imag)) if value.size else 0.0
    if worst > IMAG_TOL:
        raise NonRealProbability(f"probability has imaginary part {worst:.3g}")
    return value.real


def transition_probability_numeric(h, coeffs, source: StateLabel, target: StateLabel, t: float) -> float:
    """``Re tr[rho_source(t) rho_target(0)]`` through the exact propagator."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    g = build_generator(h, coeffs)
    m = cayley_hamilton_exp(g, t).m_matrix
    g_from = m @ gamma_of(initial_density(source, h)).as_array()
    g_to = gamma_of(initial_density(target, h)).as_array()
    return float(_pair_value(g_from, g_to))


def propagators(h, coeffs, times: Iterable[float]) -> np.ndarray:
    """Stack of ``M(t)`` for every time in ``times``; shape ``(n, 4, 4)``."""
    g = build_generator(h, coeffs)
    return np.array([cayley_hamilton_exp(g, float(t)).m_matrix for t in times])


def probability_table(h, coeffs, basis: str, times, theta: float = 0.0, stack=None) -> ProbabilityQuad:
    """Numeric quad over a time grid; ``stack`` reuses precomputed propagators."""
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    stack = propagators(h, coeffs, times) if stack is None else stack
    one, two = basis_labels(basis, theta)
    v1 = gamma_of(initial_density(one, h)).as_array()
    v2 = gamma_of(initial_density(two, h)).as_array()
    e1, e2 = stack @ v1, stack @ v2
    return ProbabilityQuad(
        _pair_value(e1, v1), _pair_value(e1, v2), _pair_value(e2, v1), _pair_value(e2, v2), basis
    )


def numeric(family: FormulaFamily, params: FamilyParams, times) -> Dict[str, ProbabilityQuad]:
    """Numeric counterpart of :func:`closed_form` for the same system."""
    family = FormulaFamily.from_key(family) if isinstance(family, str) else family
    h, coeffs = family_system(family, params)
    stack = propagators(h, coeffs, np.asarray(times, dtype=float))
    return {b: probability_table(h, coeffs, b, times, params.theta, stack) for b in family.bases}


@dataclass(frozen=True, eq=False)
class Comparison:
    basis: str
    times: np.ndarray
    numeric: np.ndarray
    closed: np.ndarray
    columns: tuple = field(default=())

    @property
    def diff(self) -> np.ndarray:
        return np.abs(self.numeric - self.closed)

    @property
    def max_diff(self) -> dict:
        return dict(zip(self.columns, self.diff.max(axis=1)))


def compare(family: FormulaFamily, params: FamilyParams, times) -> Dict[str, Comparison]:
    """Numeric vs closed form, channel by channel, for every basis of ``family``."""
    family = FormulaFamily.from_key(family) if isinstance(family, str) else family
    times = np.asarray(times, dtype=float)
    closed = closed_form(family, params, times)
    num = numeric(family, params, times)
    out = {}
    for b in family.bases:
        cf = np.broadcast_to(closed[b].as_array(), (4, times.size))
        out[b] = Comparison(b, times, num[b].as_array(), np.array(cf), CHANNEL_NAMES[b])
    return out


def mixing_sin2(params: FamilyParams) -> float:
    """``sin^2(alpha)``, the initial off-diagonal flavor probability."""
    return float(np.sin(mixing_angle(PTHamiltonian(params.r, params.s, params.varphi))) ** 2)
