"""Self-check suite behind ``ptlindblad validate``.

Each check samples a fixed-seed batch of systems, records the worst residual
and compares it with a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from . import core_model as cm
from . import evolution as ev
from . import lindblad as lb
from . import probabilities as pr
from .pauli import gamma_of, pauli_decompose
from .states import initial_density

SEED = 20240607


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34} max residual {self.residual:.3e}  (tol {self.tolerance:.0e})"


def random_pt_hamiltonian(rng) -> cm.PTHamiltonian:
    """A PT-symmetric system comfortably away from the phase boundary."""
    s = rng.uniform(0.05, 1.0)
    varphi = rng.uniform(-np.pi, np.pi)
    limit = 0.9 * s / max(abs(np.sin(varphi)), 1e-12)
    r = rng.uniform(0, min(1.0, limit))
    return cm.PTHamiltonian(r, s, varphi)


def random_phased_hamiltonian(rng) -> cm.PTHamiltonian:
    """As :func:`random_pt_hamiltonian` with a random off-diagonal phase as well."""
    h = random_pt_hamiltonian(rng)
    return cm.PTHamiltonian(h.r, h.s, h.diag_phase, rng.uniform(-np.pi, np.pi))


def random_operators(rng, count=None) -> list:
    count = rng.integers(0, 4) if count is None else count
    return [lb.LindbladOperator(*rng.uniform(0, 0.5, 2), *rng.uniform(-np.pi, np.pi, 2)) for _ in range(count)]


def random_compatible_operators(rng, h: cm.PTHamiltonian, count=None) -> list:
    """Operators that are pseudo-Hermitian for the metric of ``h``; the propagator then stays bounded."""
    count = rng.integers(0, 4) if count is None else count
    alpha = cm.mixing_angle(h)
    return [lb.compatible_operator(rng.uniform(0, 0.5), rng.uniform(-np.pi, np.pi), alpha, rng.uniform(0, 0.3))
            for _ in range(count)]


def _hamiltonian_checks(rng, n):
    pt = herm = metric = 0.0
    for _ in range(n):
        h = random_pt_hamiltonian(rng)
        m = h.matrix()
        eta = cm.metric(h).matrix
        g = cm.similarity_transform(h)
        pt = max(pt, cm.pt_commutator_check(h))
        metric = max(metric, np.abs(eta @ m @ np.linalg.inv(eta) - m.conj().T).max())
        hm = g.g @ m @ g.g_inverse
        herm = max(herm, np.abs(hm - hm.conj().T).max())
    return [
        CheckResult("hamiltonian PT commutation", pt, 1e-14),
        CheckResult("metric pseudo-Hermiticity", metric, 1e-12),
        CheckResult("similarity transform Hermitian", herm, 1e-12),
    ]


def _dissipator_checks(rng, n):
    block = trace = real_ef = lpt = 0.0
    for _ in range(n):
        ops = random_operators(rng, rng.integers(1, 4))
        coeffs = lb.dissipator_coefficients(ops)
        rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        direct = pauli_decompose(lb.lindblad_term(ops, rho))
        bloch = lb.dissipator_action(coeffs, gamma_of(rho)).as_array()
        block = max(block, np.abs(direct - bloch).max())
        trace = max(trace, abs(bloch[0]))
        real_ef = max(real_ef, abs(coeffs.E.real), abs(coeffs.F.real))
        lpt = max(lpt, max(cm.pt_commutator_check(op.matrix()) for op in ops))
    return [
        CheckResult("dissipator block vs 2x2 evaluation", block, 1e-12),
        CheckResult("dissipator trace annihilation", trace, 1e-14),
        CheckResult("E and F purely imaginary", real_ef, 1e-14),
        CheckResult("Lindblad operator PT commutation", lpt, 1e-14),
    ]


def _random_generator(rng):
    r = np.zeros((4, 4), dtype=complex)
    r[1:, 1:] = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    r /= np.linalg.norm(r, 2) * rng.uniform(1, 2)
    return ev.Generator(r)


def _generator_checks(rng, n):
    # -2 R Gamma must be the Pauli image of -i[H, rho] + L(rho)
    worst = 0.0
    for _ in range(n):
        h = random_phased_hamiltonian(rng)
        ops = random_operators(rng, rng.integers(1, 4))
        g = ev.build_generator(h, lb.dissipator_coefficients(ops))
        rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = h.matrix()
        direct = pauli_decompose(-1j * (m @ rho - rho @ m) + lb.lindblad_term(ops, rho))
        worst = max(worst, np.abs(direct + 2 * g.r_matrix @ pauli_decompose(rho)).max())
    return [CheckResult("generator vs 2x2 master equation", worst, 1e-12)]


def _propagator_checks(rng, n):
    exact = semi = 0.0
    for _ in range(n):
        g = _random_generator(rng)
        t = rng.uniform(0, 2)
        p = ev.cayley_hamilton_exp(g, t)
        exact = max(exact, np.abs(p.m_matrix - ev.series_exp(-2 * t * g.r_matrix)).max())
    for _ in range(max(1, n // 4)):
        h = random_pt_hamiltonian(rng)
        g = ev.build_generator(h, lb.dissipator_coefficients(random_operators(rng)))
        t1, t2 = rng.uniform(0, 10, 2)
        m1, m2 = ev.cayley_hamilton_exp(g, t1).m_matrix, ev.cayley_hamilton_exp(g, t2).m_matrix
        m12 = ev.cayley_hamilton_exp(g, t1 + t2).m_matrix
        semi = max(semi, np.abs(m1 @ m2 - m12).max() / max(1.0, np.abs(m12).max()))

    # a generator with a repeated root must route through the series fallback
    r = np.zeros((4, 4), dtype=complex)
    r[1:, 1:] = [[0.2, 1.0, 0.0], [0.0, 0.2, 0.5], [0.0, 0.0, 0.2]]
    p = ev.cayley_hamilton_exp(ev.Generator(r), 3.0)
    degenerate = np.abs(p.m_matrix - ev.series_exp(-6.0 * r)).max()
    return [
        CheckResult("Cayley-Hamilton vs series oracle", exact, 1e-10),
        CheckResult("propagator semigroup", semi, 1e-9),
        CheckResult("degenerate roots use fallback", degenerate if p.fallback else np.inf, 1e-10),
    ]


def _trace_checks(rng, n):
    worst = 0.0
    for _ in range(n):
        h = random_pt_hamiltonian(rng)
        g = ev.build_generator(h, lb.dissipator_coefficients(random_operators(rng)))
        v = gamma_of(initial_density(pr.MASS_PLUS, h)).as_array()
        for t in (1.0, 5.0, 25.0):
            out = ev.cayley_hamilton_exp(g, t).m_matrix @ v
            worst = max(worst, abs(out[0] - v[0]))
    return [CheckResult("generalized trace conservation", worst, 1e-12)]


def _probability_checks():
    times = np.linspace(0, 50, 501)
    general = dict(r=0.1, s=0.2, varphi=np.pi / 3)
    b0 = pr.FamilyParams(**general, zeta=0.1)
    exact = max(max(c.max_diff.values()) for c in pr.compare(pr.FormulaFamily.GENERAL_B0_EXACT, b0, times).values())
    neutrino = pr.FamilyParams(omega=0.2, xi=0.1, theta=np.pi / 3)
    nu = max(max(c.max_diff.values()) for c in pr.compare(pr.FormulaFamily.NEUTRINO_A0, neutrino, times).values())

    conserve = 0.0
    for family, params in ((pr.FormulaFamily.GENERAL_B0_EXACT, b0),
                           (pr.FormulaFamily.GENERAL_A0_SERIES, pr.FamilyParams(**general, xi=0.1))):
        quad = pr.numeric(family, params, times)["mass"]
        conserve = max(conserve, np.abs(quad.p_pp + quad.p_pm - 1).max(), np.abs(quad.p_mm + quad.p_mp - 1).max())

    flavor = pr.numeric(pr.FormulaFamily.NO_LINDBLAD, pr.FamilyParams(**general), [0.0])["flavor"]
    sin2 = pr.mixing_sin2(pr.FamilyParams(**general))
    initial = max(abs(flavor.p_pp[0] - 1), abs(flavor.p_mm[0] - 1), abs(flavor.p_pm[0] - sin2), abs(flavor.p_mp[0] - sin2))
    return [
        CheckResult("B = 0 exact family vs numeric", exact, 1e-9),
        CheckResult("neutrino A = 0 family vs numeric", nu, 1e-9),
        CheckResult("mass-basis conservation", conserve, 1e-12),
        CheckResult("flavor initial values", initial, 1e-12),
    ]


def _normalized_checks():
    h = cm.PTHamiltonian(0.1, 0.2, np.pi / 3)
    rho = initial_density(pr.FLAVOR_A, h)
    out = ev.evolve_normalized(h, None, rho, 10.0)
    return [CheckResult("normalized evolution keeps trace", abs(out.trace - 1), 1e-8)]


def run_checks(samples: int = 200, seed: int = SEED) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    results += _hamiltonian_checks(rng, samples)
    results += _dissipator_checks(rng, samples)
    results += _generator_checks(rng, samples)
    results += _propagator_checks(rng, samples)
    results += _trace_checks(rng, max(1, samples // 2))
    results += _probability_checks()
    results += _normalized_checks()
    return results
