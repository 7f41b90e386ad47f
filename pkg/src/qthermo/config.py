"""Run configuration: file parsing, defaults, validation, overrides.

Config grammar (documented in the README):

* ``key = value`` pairs, one per line
* ``#`` starts a comment, blank lines are ignored
* ``[experiment]`` section headers scope the keys that follow to one
  experiment; keys before any header apply to every experiment
* list values are comma separated numbers, e.g. ``kappa_list = 0.6, 0.8``

Precedence: command-line ``--param key=value`` overrides the file, the file
overrides per-experiment defaults.  Defaults reproduce the package's
standard parameter sets.  Unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError

__all__ = ["EXPERIMENTS", "RunConfig", "parse_config_file", "resolve", "coerce_value"]

_PI = float(np.pi)

# key -> (type tag, default) per experiment; None default means required-less
# optional key whose absence keeps the runner's own default.
_COMMON_KEYS: dict[str, tuple[str, object]] = {"out": ("str", ".")}

EXPERIMENTS: dict[str, dict[str, tuple[str, object]]] = {
    "theta_scan": {
        "temperature": ("pos_float", 0.4),
        "kappa": ("pos_float", 0.8),
        "eta": ("nonneg_float", 0.01),
        "cutoff": ("pos_float", 10.0),
        "t_max": ("pos_float", 50.0),
        "n_points": ("grid_int", 500),
        "theta_list": ("angle_list", [0.0, _PI / 4, _PI / 2, 3 * _PI / 4, _PI]),
    },
    "direct_vs_ancilla": {
        "temperature": ("pos_float", 0.4),
        "kappa": ("pos_float", 0.8),
        "eta": ("nonneg_float", 0.01),
        "cutoff": ("pos_float", 10.0),
        "theta": ("angle", _PI / 2),
        "t_max": ("pos_float", 50.0),
        "n_points": ("grid_int", 500),
    },
    "kappa_sweep": {
        "temperature": ("pos_float", 0.4),
        "eta": ("nonneg_float", 0.01),
        "cutoff": ("pos_float", 10.0),
        "theta": ("angle", _PI / 2),
        "t_max": ("pos_float", 120.0),
        "n_points": ("grid_int", 600),
        "kappa_list": ("pos_list", [0.6, 0.7, 0.8, 0.9]),
    },
    "coherence_parametric": {
        "temperature": ("pos_float", 0.4),
        "eta": ("nonneg_float", 0.1),
        "cutoff": ("pos_float", 10.0),
        "theta": ("angle", _PI / 2),
        "t_max": ("pos_float", 50.0),
        "n_points": ("grid_int", 500),
        "kappa_list": ("pos_list", [0.2, 0.4, 0.6, 0.8, 1.0, 1.2]),
    },
    "two_qubit_configs": {
        "temperature": ("pos_float", 0.4),
        "kappa": ("pos_float", 0.6),
        "eta1": ("nonneg_float", 0.01),
        "eta2": ("nonneg_float", 0.05),
        "cutoff": ("pos_float", 10.0),
        "t_max": ("pos_float", 2000.0),
        "n_points": ("grid_int", 240),
    },
    "steady_qsnr": {
        "ratio_min": ("pos_float", 0.05),
        "ratio_max": ("pos_float", 5.0),
        "ratio_points": ("grid_int", 200),
        "n_line": ("grid_int", 50),
        "line_t_min": ("pos_float", 0.05),
        "line_t_max": ("pos_float", 2.0),
    },
    "evolve": {
        "model": ("model", "probe_ancilla"),
        "temperature": ("pos_float", 0.4),
        "eta": ("nonneg_float", 0.01),
        "eta2": ("opt_nonneg_float", None),
        "cutoff": ("pos_float", 10.0),
        "kappa": ("pos_float", 0.8),
        "theta": ("angle", _PI / 2),
        "t_max": ("pos_float", 50.0),
        "n_points": ("grid_int", 500),
    },
    "qfi_point": {
        "model": ("model", "probe_ancilla"),
        "at": ("time_or_steady", "steady"),
        "temperature": ("pos_float", 0.4),
        "eta": ("nonneg_float", 0.01),
        "eta2": ("opt_nonneg_float", None),
        "cutoff": ("pos_float", 10.0),
        "kappa": ("pos_float", 0.8),
        "theta": ("angle", _PI / 2),
    },
}

_MODELS = ("direct", "probe_ancilla", "two_qubit_local", "two_qubit_common")


@dataclass
class RunConfig:
    experiment: str
    options: dict = field(default_factory=dict)
    out_dir: str = "."


def _parse_scalar(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"{text!r} is not a number") from None


def coerce_value(key: str, kind: str, raw) -> object:
    """Coerce and range-check one config value; raw is a string or a number."""
    try:
        if kind == "str":
            return str(raw).strip()
        if kind == "model":
            value = str(raw).strip()
            if value not in _MODELS:
                raise ValueError(f"must be one of {', '.join(_MODELS)}")
            return value
        if kind == "time_or_steady":
            value = str(raw).strip()
            if value == "steady":
                return value
            t = _parse_scalar(value)
            if t < 0:
                raise ValueError("must be >= 0 or 'steady'")
            return t
        if kind in ("pos_float", "nonneg_float", "opt_nonneg_float", "angle"):
            value = _parse_scalar(raw) if isinstance(raw, str) else float(raw)
            if kind == "pos_float" and value <= 0:
                raise ValueError("must be > 0")
            if kind in ("nonneg_float", "opt_nonneg_float") and value < 0:
                raise ValueError("must be >= 0")
            if kind == "angle" and not 0.0 <= value <= _PI + 1e-12:
                raise ValueError("must lie in [0, pi]")
            return value
        if kind == "grid_int":
            value = _parse_scalar(raw) if isinstance(raw, str) else raw
            if float(value) != int(float(value)):
                raise ValueError("must be an integer")
            value = int(float(value))
            if value < 2:
                raise ValueError("must be >= 2")
            return value
        if kind in ("pos_list", "angle_list"):
            if isinstance(raw, str):
                parts = [p for p in (s.strip() for s in raw.split(",")) if p]
                values = [_parse_scalar(p) for p in parts]
            else:
                values = [float(v) for v in raw]
            if not values:
                raise ValueError("list must not be empty")
            for v in values:
                if kind == "pos_list" and v <= 0:
                    raise ValueError("list entries must be > 0")
                if kind == "angle_list" and not 0.0 <= v <= _PI + 1e-12:
                    raise ValueError("list entries must lie in [0, pi]")
            return values
    except ValueError as exc:
        raise ValidationError(key, str(exc)) from None
    raise ValidationError(key, f"unhandled config type {kind!r}")  # pragma: no cover


def parse_config_file(path: str) -> dict[str, dict[str, str]]:
    """Parse the flat key-value format into raw {section: {key: value}}.

    The pseudo-section ``""`` holds keys that precede any header.
    """
    sections: dict[str, dict[str, str]] = {"": {}}
    current = ""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read config file {path!r}: {exc}")
    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", line=lineno)
            name = line[1:-1].strip()
            if name not in EXPERIMENTS:
                raise ParseError(f"unknown experiment section [{name}]", line=lineno)
            sections.setdefault(name, {})
            current = name
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ParseError("empty key", line=lineno)
        sections[current][key] = value
    return sections


def resolve(
    experiment: str,
    file_sections: dict[str, dict[str, str]] | None = None,
    overrides: dict[str, str] | None = None,
    out_dir: str | None = None,
) -> RunConfig:
    """Merge defaults, config file and overrides for one experiment."""
    if experiment not in EXPERIMENTS:
        raise ValidationError("experiment", f"unknown experiment {experiment!r}")
    schema = EXPERIMENTS[experiment]
    options = {k: default for k, (_, default) in schema.items()}
    resolved_out = _COMMON_KEYS["out"][1]

    def apply(key: str, raw):
        nonlocal resolved_out
        if key == "out":
            resolved_out = str(raw).strip()
            return
        if key not in schema:
            raise ValidationError(key, f"unknown key for experiment {experiment!r}")
        options[key] = coerce_value(key, schema[key][0], raw)

    if file_sections:
        # keys outside any section must be valid for the chosen run too
        for section in ("", experiment):
            for key, raw in file_sections.get(section, {}).items():
                apply(key, raw)
    for key, raw in (overrides or {}).items():
        apply(key, raw)
    if out_dir is not None:
        resolved_out = out_dir
    return RunConfig(experiment=experiment, options=options, out_dir=resolved_out)
