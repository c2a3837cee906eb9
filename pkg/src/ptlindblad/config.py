"""Scenario files for the command line.

A scenario is a TOML document::

    mode = "simulate"            # simulate | compare | figure

    [hamiltonian]
    r = 0.1
    s = 0.2
    diag_phase = "pi/3"          # numbers or simple expressions in pi
    # kind = "neutrino", omega = 0.2, theta = "pi/3"

    [dissipator]
    case = "B0"                  # shorthand ...
    rate = 0.1
    # [[dissipator.operators]]   # ... or up to three explicit operators
    # r_j = 0.0, s_j = 0.3, varphi_j = 0.0, phi_j = 0.0

    [states]
    bases = ["mass", "flavor"]   # rotated needs theta
    theta = 0.0

    [time]
    start = 0.0
    end = 50.0
    points = 501

    [output]
    format = "csv"
    prefix = "scenario"
    family = "general_B0_exact"  # compare mode only
    figure = "fig7"              # figure mode only
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .core_model import NeutrinoHamiltonian, PTHamiltonian
from .errors import ConfigError
from .lindblad import LindbladOperator, dissipator_coefficients, rate_coefficients
from .probabilities import FamilyParams, FormulaFamily

MODES = ("simulate", "compare", "figure")
BASES = ("mass", "flavor", "rotated")
FORMATS = ("csv", "json")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi, "e": math.e}


def parse_number(value, key: str = "value") -> float:
    """Accept a number or an arithmetic expression such as ``"pi/3"``."""
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    try:
        tree = ast.parse(value, mode="eval")
        return float(_eval(tree.body))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ConfigError(f"{key}: cannot evaluate {value!r} ({exc})") from None


def _eval(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval(node.operand))
    raise ValueError("only numbers, pi, e and + - * / ** are allowed")


@dataclass(frozen=True)
class Scenario:
    mode: str = "simulate"
    hamiltonian: object = None
    case: Optional[str] = None
    rate: float = 0.0
    operators: tuple = ()
    bases: tuple = ("mass", "flavor")
    theta: float = 0.0
    t_start: float = 0.0
    t_end: float = 50.0
    points: int = 501
    fmt: str = "csv"
    prefix: str = "scenario"
    family: Optional[str] = None
    figure: Optional[str] = None
    source: Optional[str] = field(default=None, compare=False)

    def coefficients(self):
        if self.operators:
            return dissipator_coefficients(list(self.operators))
        if self.case is None:
            return rate_coefficients("A0", 0.0)
        return rate_coefficients(self.case, self.rate)

    def family_params(self) -> FamilyParams:
        h = self.hamiltonian
        rates = {"xi": self.rate} if self.case == "A0" else {"zeta": self.rate} if self.case == "B0" else {}
        if isinstance(h, NeutrinoHamiltonian):
            return FamilyParams(omega=h.omega, theta=h.theta, **rates)
        return FamilyParams(r=h.r, s=h.s, varphi=h.diag_phase, theta=self.theta, **rates)


def _table(doc: dict, key: str) -> dict:
    value = doc.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(f"[{key}] must be a table")
    return value


def _hamiltonian(tbl: dict):
    kind = tbl.get("kind", "pt")
    if kind == "neutrino":
        return NeutrinoHamiltonian(parse_number(tbl.get("omega", 0.0), "omega"),
                                   parse_number(tbl.get("theta", 0.0), "theta"))
    if kind != "pt":
        raise ConfigError(f"hamiltonian.kind must be 'pt' or 'neutrino', got {kind!r}")
    try:
        return PTHamiltonian(
            parse_number(tbl.get("r", 0.0), "r"),
            parse_number(tbl.get("s", 0.0), "s"),
            parse_number(tbl.get("diag_phase", 0.0), "diag_phase"),
            parse_number(tbl.get("offdiag_phase", 0.0), "offdiag_phase"),
        )
    except ValueError as exc:
        raise ConfigError(f"hamiltonian: {exc}") from None


def _operators(items) -> tuple:
    if not isinstance(items, list):
        raise ConfigError("dissipator.operators must be an array of tables")
    ops = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ConfigError(f"dissipator.operators[{i}] must be a table")
        ops.append(LindbladOperator(*(parse_number(item.get(k, 0.0), f"operators[{i}].{k}")
                                      for k in ("r_j", "s_j", "varphi_j", "phi_j"))))
    return tuple(ops)


def scenario_from_dict(doc: dict, source: Optional[str] = None) -> Scenario:
    mode = doc.get("mode", "simulate")
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
    ham = _table(doc, "hamiltonian")
    diss = _table(doc, "dissipator")
    states = _table(doc, "states")
    tgrid = _table(doc, "time")
    out = _table(doc, "output")

    case = diss.get("case")
    if case is not None and case not in ("A0", "B0"):
        raise ConfigError(f"dissipator.case must be 'A0' or 'B0', got {case!r}")
    rate = parse_number(diss.get("rate", 0.0), "rate")
    if rate < 0:
        raise ConfigError(f"rate must be non-negative, got {rate}")
    operators = _operators(diss["operators"]) if "operators" in diss else ()
    if operators and case is not None:
        raise ConfigError("give either dissipator.case or dissipator.operators, not both")

    bases = tuple(states.get("bases", ("mass", "flavor")))
    bad = [b for b in bases if b not in BASES]
    if bad or not bases:
        raise ConfigError(f"states.bases must be a non-empty subset of {BASES}, got {list(bases)}")

    points = tgrid.get("points", 501)
    if isinstance(points, bool) or not isinstance(points, int) or points < 2:
        raise ConfigError(f"time.points must be an integer >= 2, got {points!r}")
    t_start = parse_number(tgrid.get("start", 0.0), "time.start")
    t_end = parse_number(tgrid.get("end", 50.0), "time.end")
    if t_start < 0 or t_end <= t_start:
        raise ConfigError(f"time grid must satisfy 0 <= start < end, got [{t_start}, {t_end}]")

    fmt = out.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"output.format must be one of {FORMATS}, got {fmt!r}")
    family = out.get("family")
    if mode == "compare":
        if family is None:
            raise ConfigError("compare mode needs output.family")
        try:
            FormulaFamily.from_key(family)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    return Scenario(
        mode=mode,
        hamiltonian=_hamiltonian(ham),
        case=case,
        rate=rate,
        operators=operators,
        bases=bases,
        theta=parse_number(states.get("theta", 0.0), "theta"),
        t_start=t_start,
        t_end=t_end,
        points=points,
        fmt=fmt,
        prefix=str(out.get("prefix", "scenario")),
        family=family,
        figure=out.get("figure"),
        source=source,
    )


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return scenario_from_dict(doc, str(path))
