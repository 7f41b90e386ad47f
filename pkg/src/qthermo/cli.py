"""Command-line front end: config ingestion, experiment dispatch, and
structured output (CSV tables, JSON summaries, gnuplot companions)."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .config import EXPERIMENTS, RunConfig, parse_config_file, resolve
from .errors import (
    BadDimension,
    DegenerateSteadyState,
    NegativeFrequency,
    NoConvergence,
    NonFinite,
    NonHermitianInput,
    NonPositiveInput,
    ParseError,
    PositivityViolation,
    PureStateSingularity,
    QThermoError,
    SingularOutcome,
    StepTooLarge,
    ValidationError,
    ZeroVariance,
)
from . import experiments as _exp
from .selftest import run_selftest

#: Distinct exit code per library error class (documented in the README).
EXIT_CODES = [
    (ParseError, 2),
    (ValidationError, 3),
    (NonHermitianInput, 4),
    (PositivityViolation, 5),
    (NoConvergence, 6),
    (DegenerateSteadyState, 7),
    (StepTooLarge, 8),
    (PureStateSingularity, 9),
    (SingularOutcome, 10),
    (ZeroVariance, 11),
    (NegativeFrequency, 12),
    (NonPositiveInput, 13),
    (BadDimension, 14),
    (NonFinite, 15),
    (QThermoError, 16),
]


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path: str, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in columns) + "\n")


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def write_summary(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


_GP_STYLES = {
    "theta_scan": ("t", "qfi", "theta"),
    "direct_vs_ancilla": ("t", "qfi", "scheme"),
    "kappa_sweep": ("t", "qfi", "kappa"),
    "two_qubit_configs": ("t", "qfi", "config"),
    "coherence_parametric": ("max_coherence", "qsnr_opt", None),
    "steady_qsnr": ("ratio", "qsnr", None),
    "evolve": ("t", "coherence_abs", None),
    "qfi_point": (None, None, None),
}


def write_gnuplot(path: str, experiment: str, csv_name: str, columns, rows) -> None:
    xcol, ycol, group = _GP_STYLES.get(experiment, (None, None, None))
    lines = [
        f"# gnuplot companion for the {experiment} data file",
        "set datafile separator ','",
        "set key outside",
    ]
    if xcol is None:
        lines.append(f"print 'no plot defined for {experiment}; see {csv_name}'")
    else:
        xi, yi = columns.index(xcol) + 1, columns.index(ycol) + 1
        lines += [f"set xlabel '{xcol}'", f"set ylabel '{ycol}'"]
        if group is None:
            lines.append(f"plot '{csv_name}' using {xi}:{yi} with linespoints title '{ycol}'")
        else:
            gi = columns.index(group) + 1
            seen = []
            for row in rows:
                if row[group] not in seen:
                    seen.append(row[group])
            parts = []
            for val in seen:
                if isinstance(val, str):
                    cond = f"strcol({gi}) eq '{val}'"
                else:
                    cond = f"column({gi}) == {_fmt(val)}"
                parts.append(
                    f"'{csv_name}' using {xi}:({cond} ? column({yi}) : 1/0) "
                    f"with lines title '{group}={val}'"
                )
            lines.append("plot \\\n    " + ", \\\n    ".join(parts))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _dispatch(cfg: RunConfig):
    """Run one experiment; returns (ScanResult, results payload for JSON)."""
    opt = dict(cfg.options)
    name = cfg.experiment
    if name == "theta_scan":
        scan = _exp.run_theta_scan(opt.pop("theta_list"), **opt)
        peaks = {}
        for row in scan.rows:
            peaks[row["theta"]] = max(peaks.get(row["theta"], 0.0), row["qfi"])
        results = {"peak_qfi_by_theta": peaks}
    elif name == "direct_vs_ancilla":
        scan = _exp.run_direct_vs_ancilla(**opt)
        by = {"direct": [], "ancilla": []}
        for row in scan.rows:
            by[row["scheme"]].append(row)
        crossover = None
        n = len(by["direct"])
        for i in range(1, n):
            if all(by["ancilla"][j]["qfi"] > by["direct"][j]["qfi"] for j in range(i, n)):
                crossover = by["ancilla"][i]["t"]
                break
        results = {
            "crossover_time": crossover,
            "peak_qfi": {k: max(r["qfi"] for r in v) for k, v in by.items()},
        }
    elif name == "kappa_sweep":
        scan, optima = _exp.run_kappa_sweep(opt.pop("kappa_list"), **opt)
        results = {
            "optima": [
                {"kappa": k, "t_opt": o.argmax, "qsnr_opt": o.value}
                for k, o in zip(scan.params["kappa_list"], optima)
            ]
        }
    elif name == "coherence_parametric":
        scan = _exp.run_coherence_parametric(opt.pop("kappa_list"), **opt)
        results = {"parametric": scan.rows}
    elif name == "two_qubit_configs":
        scan = _exp.run_two_qubit_configs(**opt)
        results = {"steady_qfi": scan.params["steady_qfi"], "t_99": scan.params["t_99"]}
    elif name == "steady_qsnr":
        grid = np.linspace(opt.pop("ratio_min"), opt.pop("ratio_max"), opt.pop("ratio_points"))
        scan = _exp.run_steady_qsnr_curve(grid, **opt)
        results = {
            "located_max": scan.params["located_max"],
            "root_condition": scan.params["root_condition"],
        }
    elif name == "evolve":
        scan = _exp.run_evolve(opt.pop("model"), **opt)
        results = {"final_row": scan.rows[-1]}
    elif name == "qfi_point":
        scan = _exp.run_qfi_point(opt.pop("model"), **opt)
        results = {"record": scan.rows[0]}
    else:  # pragma: no cover - resolve() already screens names
        raise ValidationError("experiment", f"unknown experiment {name!r}")
    return scan, results


def run(cfg: RunConfig, quiet: bool = False) -> int:
    started = time.perf_counter()
    scan, results = _dispatch(cfg)
    os.makedirs(cfg.out_dir, exist_ok=True)
    base = os.path.join(cfg.out_dir, cfg.experiment)
    csv_path = base + ".csv"
    write_csv(csv_path, scan.columns, scan.rows)
    write_gnuplot(base + ".gp", cfg.experiment, os.path.basename(csv_path), scan.columns, scan.rows)
    payload = {
        "experiment": cfg.experiment,
        "version": __version__,
        "parameters": scan.params,
        "results": results,
        "csv": os.path.basename(csv_path),
        "wall_time_s": time.perf_counter() - started,
    }
    write_summary(base + ".summary.json", payload)
    if not quiet:
        print(f"{cfg.experiment}: {len(scan.rows)} rows -> {csv_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qthermo",
        description="Dephasing-qubit thermometry simulations and estimation scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file path")
    common.add_argument("--out", help="output directory (default '.')")
    common.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )
    common.add_argument("--quiet", action="store_true")
    for name in EXPERIMENTS:
        sub.add_parser(name, parents=[common], help=f"run the {name} experiment")
    sub.add_parser("validate", parents=[common], help="check a config file and exit")
    sub.add_parser("selftest", parents=[common], help="run the built-in invariant suite")
    return parser


def _overrides(pairs) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValidationError("param", f"expected KEY=VALUE, got {pair!r}")
        key, _, value = pair.partition("=")
        out[key.strip()] = value.strip()
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            ok = run_selftest(out=(lambda *_: None) if args.quiet else print)
            return 0 if ok else 1
        sections = parse_config_file(args.config) if args.config else None
        if args.command == "validate":
            todo = [s for s in (sections or {}) if s] or list(EXPERIMENTS)
            for name in todo:
                resolve(name, sections, _overrides(args.param), args.out)
            if not args.quiet:
                print(f"config valid for: {', '.join(todo)}")
            return 0
        cfg = resolve(args.command, sections, _overrides(args.param), args.out)
        return run(cfg, quiet=args.quiet)
    except QThermoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for klass, code in EXIT_CODES:
            if isinstance(exc, klass):
                return code
        return 1  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
