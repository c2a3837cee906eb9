"""Parameter sets and data tables for the ten reference figures fig1..fig10.

fig8 is the s = 0, B = 0 case, whose curves coincide with fig4, and fig9 is
the two-flavor neutrino B = 0 case. Every figure is regenerated from the
numeric propagator; fig1 also carries the second-order series curves it is
compared against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .probabilities import CHANNEL_NAMES, FamilyParams, FormulaFamily, closed_form, numeric

DEFAULT_T_END = 50.0
DEFAULT_POINTS = 501

_GENERAL = dict(r=0.1, s=0.2, varphi=np.pi / 3)
# for s = 0 only the rate is fixed; r and varphi do not enter these curves
_DIAGONAL = dict(r=0.1, varphi=np.pi / 3)


@dataclass(frozen=True)
class FigureSpec:
    fig_id: str
    title: str
    family: FormulaFamily
    params: FamilyParams
    bases: tuple
    series: bool = False


FIGURES: Dict[str, FigureSpec] = {
    spec.fig_id: spec
    for spec in (
        FigureSpec("fig1", "A = 0, numeric vs second-order series", FormulaFamily.GENERAL_A0_SERIES,
                   FamilyParams(**_GENERAL, xi=0.1), ("mass", "flavor"), series=True),
        FigureSpec("fig2", "two-flavor neutrinos, A = 0", FormulaFamily.NEUTRINO_A0,
                   FamilyParams(omega=0.2, xi=0.1, theta=np.pi / 3), ("mass", "flavor")),
        FigureSpec("fig3", "no Lindblad term", FormulaFamily.NO_LINDBLAD,
                   FamilyParams(**_GENERAL), ("flavor",)),
        FigureSpec("fig4", "s = 0, A = 0", FormulaFamily.S0_A0,
                   FamilyParams(**_DIAGONAL, xi=0.1), ("mass", "flavor")),
        FigureSpec("fig5", "r = 0, A = 0", FormulaFamily.R0_A0,
                   FamilyParams(s=0.2, xi=0.1), ("flavor",)),
        FigureSpec("fig6", "general A = 0, numeric", FormulaFamily.GENERAL_A0_SERIES,
                   FamilyParams(**_GENERAL, xi=0.1), ("flavor",)),
        FigureSpec("fig7", "general B = 0, exact", FormulaFamily.GENERAL_B0_EXACT,
                   FamilyParams(**_GENERAL, zeta=0.1), ("mass", "flavor")),
        FigureSpec("fig8", "s = 0, B = 0", FormulaFamily.S0_B0,
                   FamilyParams(**_DIAGONAL, zeta=0.1), ("mass", "flavor")),
        FigureSpec("fig9", "two-flavor neutrinos, B = 0", FormulaFamily.NEUTRINO_B0,
                   FamilyParams(omega=0.2, zeta=0.1, theta=np.pi / 3), ("mass", "flavor")),
        FigureSpec("fig10", "r = 0, B = 0", FormulaFamily.R0_B0,
                   FamilyParams(s=0.2, zeta=0.1), ("mass", "flavor")),
    )
}


@dataclass(frozen=True, eq=False)
class Table:
    name: str
    columns: tuple
    data: np.ndarray  # shape (points, len(columns))


def time_grid(points: int = DEFAULT_POINTS, t_end: float = DEFAULT_T_END, t_start: float = 0.0) -> np.ndarray:
    if points < 2:
        raise ValueError("a time grid needs at least 2 points")
    return np.linspace(t_start, t_end, points)


def quad_table(name: str, times, quad) -> Table:
    cols = ("t",) + CHANNEL_NAMES[quad.basis]
    values = np.broadcast_to(quad.as_array(), (4, len(times)))
    return Table(name, cols, np.column_stack([times, values.T]))


def figure_tables(fig_id: str, points: int = DEFAULT_POINTS, t_end: float = DEFAULT_T_END) -> list[Table]:
    """All data tables behind figure ``fig_id``; names encode figure and basis."""
    if fig_id not in FIGURES:
        raise KeyError(f"unknown figure {fig_id!r}; expected one of {', '.join(FIGURES)}")
    spec = FIGURES[fig_id]
    times = time_grid(points, t_end)
    num = numeric(spec.family, spec.params, times)
    tables = [quad_table(f"{fig_id}_{b}", times, num[b]) for b in spec.bases]
    if spec.series:
        approx = closed_form(spec.family, spec.params, times)
        tables += [quad_table(f"{fig_id}_{b}_series", times, approx[b]) for b in spec.bases]
    return tables
