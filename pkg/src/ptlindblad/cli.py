"""Command line: ``ptlindblad {run,simulate,compare,figure,validate}``.

Exit codes: 0 success, 1 a validation check failed, 2 configuration error,
3 domain error (for instance parameters outside the PT-symmetric phase). On
failure the error's class name is the first token written to standard error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .config import FORMATS, Scenario, load_scenario
from .errors import ConfigError, PTLindbladError
from .figures import DEFAULT_POINTS, FIGURES, Table, figure_tables, quad_table
from .probabilities import CHANNEL_NAMES, FormulaFamily, compare, probability_table
from .validation import run_checks

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_table(table: Table, out_dir: Path, fmt: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{table.name}.{fmt}"
    if fmt == "csv":
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(table.columns)
            writer.writerows([_fmt(v) for v in row] for row in table.data)
    else:
        payload = {"name": table.name, "columns": list(table.columns),
                   "rows": [[float(v) for v in row] for row in table.data]}
        path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    return path


def simulate_tables(sc: Scenario) -> list[Table]:
    times = np.linspace(sc.t_start, sc.t_end, sc.points)
    coeffs = sc.coefficients()
    return [quad_table(f"{sc.prefix}_{b}", times, probability_table(sc.hamiltonian, coeffs, b, times, sc.theta))
            for b in sc.bases]


def compare_tables(sc: Scenario) -> list[Table]:
    family = FormulaFamily.from_key(sc.family)
    times = np.linspace(sc.t_start, sc.t_end, sc.points)
    tables = []
    for basis, cmp in compare(family, sc.family_params(), times).items():
        cols = ["t"]
        blocks = [times]
        for i, name in enumerate(CHANNEL_NAMES[basis]):
            cols += [name, f"{name}_closed", f"{name}_diff"]
            blocks += [cmp.numeric[i], cmp.closed[i], cmp.diff[i]]
        tables.append(Table(f"{sc.prefix}_{basis}_compare", tuple(cols), np.column_stack(blocks)))
    return tables


def _emit(tables, out_dir: Path, fmt: str) -> None:
    for table in tables:
        print(write_table(table, out_dir, fmt))


def cmd_scenario(args, mode: Optional[str] = None) -> int:
    sc = load_scenario(args.config)
    mode = mode or sc.mode
    fmt = args.format or sc.fmt
    if args.points is not None:
        sc = dataclasses.replace(sc, points=args.points)
    out = Path(args.out)
    if mode == "simulate":
        _emit(simulate_tables(sc), out, fmt)
    elif mode == "compare":
        if sc.family is None:
            raise ConfigError("compare mode needs output.family")
        _emit(compare_tables(sc), out, fmt)
    else:
        if sc.figure not in FIGURES:
            raise ConfigError(f"figure mode needs output.figure in {', '.join(FIGURES)}")
        _emit(figure_tables(sc.figure, sc.points), out, fmt)
    return EXIT_OK


def cmd_figure(args) -> int:
    ids = list(FIGURES) if args.fig_id == "all" else [args.fig_id]
    for fig_id in ids:
        if fig_id not in FIGURES:
            raise ConfigError(f"unknown figure {fig_id!r}; expected one of {', '.join(FIGURES)} or 'all'")
        start = time.perf_counter()
        _emit(figure_tables(fig_id, args.points or DEFAULT_POINTS), Path(args.out), args.format or "csv")
        print(f"{fig_id}: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_checks(samples=args.samples)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptlindblad", description="PT-symmetric two-level Lindblad dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config: bool):
        if config:
            p.add_argument("--config", required=True, help="scenario TOML file")
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--format", choices=FORMATS, default=None, help="csv or json")
        p.add_argument("--points", type=_points, default=None, help="time-grid points")

    for name, helptext in (("run", "run the scenario in the mode it names"),
                           ("simulate", "numeric probabilities for a scenario"),
                           ("compare", "numeric vs closed form for a scenario")):
        common(sub.add_parser(name, help=helptext), config=True)

    fig = sub.add_parser("figure", help="data behind one figure (fig1..fig10, or all)")
    fig.add_argument("fig_id")
    common(fig, config=False)

    val = sub.add_parser("validate", help="run the built-in invariant checks")
    val.add_argument("--samples", type=int, default=200)
    return parser


def _points(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("points must be >= 2")
    return value


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "figure":
            return cmd_figure(args)
        return cmd_scenario(args, None if args.command == "run" else args.command)
    except ConfigError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PTLindbladError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
