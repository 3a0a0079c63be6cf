"""Command-line front end: profile, sweep, verify, figures, convergence.

Configuration is JSON (all keys optional; CLI flags override file values):

.. code-block:: json

    {
      "params": {"gr": 15.0, "gc": 5.0, "pr": 0.71, "sc": 0.78, "alpha_deg": 30.0},
      "times": [0.2],
      "field": "velocity",
      "grid": {"y_max": 4.0, "samples": 161},
      "fdm": {"y_max": 20.0, "delta_y": 0.01, "dt": 1e-4, "theta": 0.5},
      "tolerance": 1e-3,
      "levels": 3,
      "sweep": {"parameter": "pr", "values": [0.17, 0.5, 0.71]},
      "output_dir": ".",
      "format": "csv"
    }

Defaults mirror the alpha=30 deg reference case (gr=15, gc=5, pr=0.71,
sc=0.78, t=0.2). Angles are degrees at this interface and radians inside.
Outputs are deterministic: fixed column order, 17-significant-digit floats,
'\\n' line endings, and a '#'-prefixed provenance block recording the fully
resolved parameter set. Exit status: 0 on success, 1 when an embedded
verification check fails, 2 on configuration or domain errors (reported as a
JSON record on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import profile as analytic_profile
from .fdm import FdmConfig, NonFiniteField, OutOfDomain, convergence_study
from .model import FIELD_KINDS, FlowParameters, ParameterError
from .verify import DEFAULT_TOLERANCE, compare

MODES = ("profile", "sweep", "verify", "figures", "convergence")

#: Observed-order acceptance band for the convergence mode.
ORDER_BAND = (1.7, 2.3)

_FIELD_SYMBOL = {"velocity": "V", "temperature": "T", "concentration": "phi"}

_DEFAULTS = {
    "gr": 15.0, "gc": 5.0, "pr": 0.71, "sc": 0.78, "alpha_deg": 30.0,
    "times": (0.2,), "field": "velocity",
    "y_grid_max": 4.0, "samples": 161,
    "fdm_y_max": 20.0, "fdm_theta": 0.5,
}

# mode-specific grid defaults: verify runs the reference comparison grid,
# convergence starts coarse so three refinement levels stay cheap
_FDM_DEFAULTS = {
    "verify": {"delta_y": 0.01, "dt": 1e-4},
    "convergence": {"delta_y": 0.04, "dt": 8e-4},
}

# Figure datasets: (number, field, swept parameter, values, base overrides, t)
# Values are plotted in ascending order; figure 3 sweeps time itself.
_FIGURES = (
    (1, "velocity", "pr", (0.17, 0.5, 0.71),
     {"gr": 15.0, "gc": 5.0, "sc": 0.16, "alpha_deg": 30.0}, 0.4),
    (2, "velocity", "sc", (0.16, 0.6, 2.01),
     {"gr": 15.0, "gc": 5.0, "pr": 5.0, "alpha_deg": 30.0}, 0.6),
    (3, "velocity", "t", (0.2, 0.4, 0.6),
     {"gr": 5.0, "gc": 5.0, "pr": 0.71, "sc": 0.6, "alpha_deg": 30.0}, None),
    (4, "velocity", "gr", (10.0, 50.0, 100.0),
     {"gc": 50.0, "pr": 0.71, "sc": 2.01, "alpha_deg": 30.0}, 0.2),
    (5, "velocity", "gc", (10.0, 50.0, 100.0),
     {"gr": 50.0, "pr": 0.71, "sc": 0.6, "alpha_deg": 30.0}, 0.4),
    (6, "velocity", "alpha_deg", (15.0, 30.0, 60.0),
     {"gr": 15.0, "gc": 5.0, "pr": 0.71, "sc": 0.78}, 0.2),
    (7, "temperature", "pr", (0.17, 0.5, 0.71),
     {"gr": 15.0, "gc": 5.0, "sc": 0.6, "alpha_deg": 30.0}, 0.2),
    (8, "concentration", "sc", (0.16, 0.3, 0.6),
     {"gr": 15.0, "gc": 5.0, "pr": 0.71, "alpha_deg": 30.0}, 0.2),
)


class ConfigError(ValueError):
    """A configuration key is missing, malformed, or out of range."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved job description for :func:`run`."""

    mode: str
    gr: float
    gc: float
    pr: float
    sc: float
    alpha_deg: float
    times: tuple[float, ...]
    field: str
    y_grid_max: float
    samples: int
    fdm_y_max: float
    fdm_delta_y: float
    fdm_dt: float
    fdm_theta: float
    tolerance: float
    levels: int
    sweep_param: str | None
    sweep_values: tuple[float, ...]
    output_dir: Path
    format: str

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.format not in ("csv", "json"):
            raise ConfigError("format: expected 'csv' or 'json'")
        if self.field not in FIELD_KINDS:
            raise ConfigError(f"field: expected one of {FIELD_KINDS}")
        if not 0 <= self.alpha_deg < 90:
            raise ConfigError("alpha_deg: expected a value in [0, 90)")
        if self.samples < 2:
            raise ConfigError("grid.samples: expected an integer >= 2")
        if not self.times or any(t <= 0 for t in self.times):
            raise ConfigError("times: expected a non-empty list of positive values")
        if self.levels < 2:
            raise ConfigError("levels: expected an integer >= 2")

    @property
    def params(self) -> FlowParameters:
        try:
            return FlowParameters(gr=self.gr, gc=self.gc, pr=self.pr, sc=self.sc,
                                  alpha=math.radians(self.alpha_deg))
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc

    def fdm_config(self, t_end: float) -> FdmConfig:
        ny = max(16, int(round(self.fdm_y_max / self.fdm_delta_y)) - 1)
        return FdmConfig(ny=ny, dt=self.fdm_dt, t_end=t_end,
                         y_max=self.fdm_y_max, theta=self.fdm_theta)

    def y_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.y_grid_max, self.samples)


def _expect(mapping: dict, key: str, kind, where: str):
    value = mapping[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"{where}{key}: expected a number, got {value!r}")
        return float(value)
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"{where}{key}: expected an integer, got {value!r}")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"{where}{key}: expected a string, got {value!r}")
        return value
    raise AssertionError(kind)


def _check_keys(mapping: dict, allowed: tuple, where: str) -> None:
    for key in mapping:
        if key not in allowed:
            raise ConfigError(
                f"unknown key '{where}{key}'; expected one of {allowed}")


def parse_config(text: str, mode: str = "profile",
                 overrides: dict | None = None) -> RunConfig:
    """Parse a JSON configuration, then apply CLI-style overrides.

    Every field has a documented default; parse errors name the offending
    key and the expected range.
    """
    if text.strip():
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config: expected a JSON object at top level")
    else:
        raw = {}
    _check_keys(raw, ("mode", "params", "times", "field", "grid", "fdm",
                      "tolerance", "levels", "sweep", "output_dir", "format"), "")

    mode = raw.get("mode", mode)
    fdm_raw = raw.get("fdm", {})
    _check_keys(fdm_raw, ("y_max", "delta_y", "dt", "theta"), "fdm.")
    fdm_defaults = _FDM_DEFAULTS.get(mode, _FDM_DEFAULTS["verify"])

    params_raw = raw.get("params", {})
    _check_keys(params_raw, ("gr", "gc", "pr", "sc", "alpha_deg"), "params.")
    grid_raw = raw.get("grid", {})
    _check_keys(grid_raw, ("y_max", "samples"), "grid.")
    sweep_raw = raw.get("sweep", {})
    _check_keys(sweep_raw, ("parameter", "values"), "sweep.")

    values: dict = {}
    for key in ("gr", "gc", "pr", "sc", "alpha_deg"):
        values[key] = (_expect(params_raw, key, float, "params.")
                       if key in params_raw else _DEFAULTS[key])

    if "times" in raw:
        if (not isinstance(raw["times"], list) or not raw["times"]
                or not all(isinstance(t, (int, float)) and not isinstance(t, bool)
                           for t in raw["times"])):
            raise ConfigError("times: expected a non-empty list of numbers")
        times = tuple(float(t) for t in raw["times"])
    else:
        times = _DEFAULTS["times"]

    config = dict(
        mode=mode,
        times=times,
        field=raw.get("field", _DEFAULTS["field"]),
        y_grid_max=(_expect(grid_raw, "y_max", float, "grid.")
                    if "y_max" in grid_raw else _DEFAULTS["y_grid_max"]),
        samples=(_expect(grid_raw, "samples", int, "grid.")
                 if "samples" in grid_raw else _DEFAULTS["samples"]),
        fdm_y_max=(_expect(fdm_raw, "y_max", float, "fdm.")
                   if "y_max" in fdm_raw else _DEFAULTS["fdm_y_max"]),
        fdm_delta_y=(_expect(fdm_raw, "delta_y", float, "fdm.")
                     if "delta_y" in fdm_raw else fdm_defaults["delta_y"]),
        fdm_dt=(_expect(fdm_raw, "dt", float, "fdm.")
                if "dt" in fdm_raw else fdm_defaults["dt"]),
        fdm_theta=(_expect(fdm_raw, "theta", float, "fdm.")
                   if "theta" in fdm_raw else _DEFAULTS["fdm_theta"]),
        tolerance=(_expect(raw, "tolerance", float, "")
                   if "tolerance" in raw else DEFAULT_TOLERANCE),
        levels=_expect(raw, "levels", int, "") if "levels" in raw else 3,
        sweep_param=sweep_raw.get("parameter"),
        sweep_values=tuple(float(v) for v in sweep_raw.get("values", ())),
        output_dir=Path(raw.get("output_dir", ".")),
        format=raw.get("format", "csv"),
        **values,
    )

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "t":
            config["times"] = tuple(value) if isinstance(value, (list, tuple)) else (value,)
        elif key == "out":
            config["output_dir"] = Path(value)
        else:
            config[key] = value

    return RunConfig(**config)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _provenance(config: RunConfig, extra: list[tuple[str, object]]) -> list[tuple[str, object]]:
    items: list[tuple[str, object]] = [
        ("generator", f"freeconv {__version__}"),
        ("mode", config.mode),
        ("gr", _fmt(config.gr)), ("gc", _fmt(config.gc)),
        ("pr", _fmt(config.pr)), ("sc", _fmt(config.sc)),
        ("alpha_deg", _fmt(config.alpha_deg)),
        ("times", ",".join(_fmt(t) for t in config.times)),
        ("format", config.format),
    ]
    items.extend(extra)
    return items


def _write_table(path: Path, provenance: list[tuple[str, object]],
                 columns: list[str], rows: list[list]) -> None:
    if path.suffix == ".json":
        payload = {
            "provenance": {k: v for k, v in provenance},
            "columns": columns,
            "rows": [[c if isinstance(c, (str, bool)) else float(c) for c in row]
                     for row in rows],
        }
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in provenance:
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(c if isinstance(c, str)
                              else ("true" if c is True else "false") if isinstance(c, bool)
                              else _fmt(c)
                              for c in row) + "\n")


def _out_path(config: RunConfig, stem: str) -> Path:
    config.output_dir.mkdir(parents=True, exist_ok=True)
    return config.output_dir / f"{stem}.{config.format}"


def _sweep_table(config: RunConfig, field: str, param: str,
                 values: tuple[float, ...], base: FlowParameters,
                 t: float) -> tuple[list[str], list[list]]:
    y = config.y_grid()
    columns = ["Y"]
    data = [y]
    symbol = _FIELD_SYMBOL[field]
    for value in values:
        if param == "t":
            params, t_eval, label = base, value, f"t={value:g}"
        elif param == "alpha_deg":
            params = replace(base, alpha=math.radians(value))
            t_eval, label = t, f"alpha={value:g}deg"
        else:
            params = replace(base, **{param: value})
            t_eval, label = t, f"{param}={value:g}"
        columns.append(f"{symbol}[{label}]")
        data.append(analytic_profile(params, t_eval, y, field).values)
    rows = [[col[i] for col in data] for i in range(len(y))]
    return columns, rows


def _run_profile(config: RunConfig) -> int:
    y = config.y_grid()
    symbol = _FIELD_SYMBOL[config.field]
    columns = ["Y"]
    data = [y]
    for t in config.times:
        columns.append(f"{symbol}[t={t:g}]")
        data.append(analytic_profile(config.params, t, y, config.field).values)
    rows = [[col[i] for col in data] for i in range(len(y))]
    extra = [("field", config.field), ("grid_y_max", _fmt(config.y_grid_max)),
             ("samples", config.samples)]
    _write_table(_out_path(config, "profile"), _provenance(config, extra),
                 columns, rows)
    return 0


def _run_sweep(config: RunConfig) -> int:
    if not config.sweep_param:
        raise ConfigError("sweep.parameter: expected one of "
                          "('gr', 'gc', 'pr', 'sc', 'alpha_deg', 't')")
    if config.sweep_param not in ("gr", "gc", "pr", "sc", "alpha_deg", "t"):
        raise ConfigError(f"sweep.parameter: {config.sweep_param!r} is not one of "
                          "('gr', 'gc', 'pr', 'sc', 'alpha_deg', 't')")
    if len(config.sweep_values) < 2:
        raise ConfigError("sweep.values: expected at least two values")
    columns, rows = _sweep_table(config, config.field, config.sweep_param,
                                 config.sweep_values, config.params,
                                 config.times[0])
    extra = [("field", config.field),
             ("sweep_parameter", config.sweep_param),
             ("sweep_values", ",".join(_fmt(v) for v in config.sweep_values)),
             ("grid_y_max", _fmt(config.y_grid_max)), ("samples", config.samples)]
    _write_table(_out_path(config, "sweep"), _provenance(config, extra),
                 columns, rows)
    return 0


def _run_figures(config: RunConfig) -> int:
    for number, field, param, values, base_over, t in _FIGURES:
        base_kwargs = {"gr": config.gr, "gc": config.gc, "pr": config.pr,
                       "sc": config.sc, "alpha_deg": config.alpha_deg}
        base_kwargs.update(base_over)
        alpha = math.radians(base_kwargs.pop("alpha_deg"))
        base = FlowParameters(alpha=alpha, **base_kwargs)
        t_eval = t if t is not None else config.times[0]
        columns, rows = _sweep_table(config, field, param, values, base, t_eval)
        extra = [("figure", number), ("field", field),
                 ("base_gr", _fmt(base.gr)), ("base_gc", _fmt(base.gc)),
                 ("base_pr", _fmt(base.pr)), ("base_sc", _fmt(base.sc)),
                 ("base_alpha_deg", _fmt(math.degrees(base.alpha))),
                 ("t", "swept" if param == "t" else _fmt(t_eval)),
                 ("sweep_parameter", param),
                 ("sweep_values", ",".join(_fmt(v) for v in values)),
                 ("grid_y_max", _fmt(config.y_grid_max)),
                 ("samples", config.samples)]
        path = config.output_dir / f"fig{number}.{config.format}"
        config.output_dir.mkdir(parents=True, exist_ok=True)
        _write_table(path, _provenance(config, extra), columns, rows)
    return 0


def _run_verify(config: RunConfig) -> int:
    t_probe = config.times[0]
    cfg = config.fdm_config(t_end=t_probe)
    reports = compare(config.params, cfg, t_probe, tolerance=config.tolerance)
    columns = ["field", "l_inf", "l2", "tolerance", "passed",
               "delta_y", "dt", "y_max", "theta", "t_probe"]
    rows = []
    for name in FIELD_KINDS:
        rep = reports[name]
        rows.append([name, rep.l_inf, rep.l2, rep.tolerance, rep.passed,
                     cfg.delta_y, cfg.dt, cfg.y_max, cfg.theta, t_probe])
    extra = [("fdm_delta_y", _fmt(cfg.delta_y)), ("fdm_dt", _fmt(cfg.dt)),
             ("fdm_y_max", _fmt(cfg.y_max)), ("fdm_theta", _fmt(cfg.theta)),
             ("tolerance", _fmt(config.tolerance))]
    _write_table(_out_path(config, "verify"), _provenance(config, extra),
                 columns, rows)
    return 0 if all(rep.passed for rep in reports.values()) else 1


def _run_convergence(config: RunConfig) -> int:
    base = config.fdm_config(t_end=config.times[0])
    rows_out = []
    levels = convergence_study(config.params, base, config.levels)
    ok = True
    for level in levels:
        for order in (level.order_v, level.order_t, level.order_phi):
            if order is not None and not ORDER_BAND[0] <= order <= ORDER_BAND[1]:
                ok = False
        rows_out.append([level.delta_y, level.dt,
                         level.err_v, level.err_t, level.err_phi,
                         "" if level.order_v is None else _fmt(level.order_v),
                         "" if level.order_t is None else _fmt(level.order_t),
                         "" if level.order_phi is None else _fmt(level.order_phi)])
    columns = ["delta_y", "dt", "err_v", "err_t", "err_phi",
               "order_v", "order_t", "order_phi"]
    extra = [("levels", config.levels),
             ("base_delta_y", _fmt(base.delta_y)), ("base_dt", _fmt(base.dt)),
             ("fdm_y_max", _fmt(base.y_max)), ("fdm_theta", _fmt(base.theta)),
             ("order_band", f"{ORDER_BAND[0]:g}..{ORDER_BAND[1]:g}")]
    _write_table(_out_path(config, "convergence"), _provenance(config, extra),
                 columns, rows_out)
    return 0 if ok else 1


_RUNNERS = {
    "profile": _run_profile,
    "sweep": _run_sweep,
    "verify": _run_verify,
    "figures": _run_figures,
    "convergence": _run_convergence,
}


def run(config: RunConfig) -> int:
    """Execute one job; returns the process exit status."""
    return _RUNNERS[config.mode](config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeconv",
        description="Closed-form free-convection profiles past an accelerating "
                    "inclined plate, with a finite-difference verification oracle.")
    sub = parser.add_subparsers(dest="mode", required=True)

    def shared(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, help="JSON configuration file")
        p.add_argument("--out", type=Path, help="output directory (default '.')")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--gr", type=float, help="thermal Grashof number")
        p.add_argument("--gc", type=float, help="mass Grashof number")
        p.add_argument("--pr", type=float, help="Prandtl number")
        p.add_argument("--sc", type=float, help="Schmidt number")
        p.add_argument("--alpha-deg", type=float, dest="alpha_deg",
                       help="plate inclination in degrees, [0, 90)")
        p.add_argument("--t", type=float, action="append",
                       help="evaluation time (repeatable)")

    p = sub.add_parser("profile", help="sample one field on a Y grid")
    shared(p)
    p.add_argument("--field", choices=FIELD_KINDS)
    p.add_argument("--y-grid-max", type=float, dest="y_grid_max")
    p.add_argument("--samples", type=int)

    p = sub.add_parser("sweep", help="profiles across one swept parameter")
    shared(p)
    p.add_argument("--field", choices=FIELD_KINDS)
    p.add_argument("--param", dest="sweep_param",
                   choices=("gr", "gc", "pr", "sc", "alpha_deg", "t"))
    p.add_argument("--values", dest="sweep_values",
                   help="comma-separated parameter values")
    p.add_argument("--y-grid-max", type=float, dest="y_grid_max")
    p.add_argument("--samples", type=int)

    p = sub.add_parser("verify", help="compare closed form against the FD oracle")
    shared(p)
    p.add_argument("--delta-y", type=float, dest="fdm_delta_y")
    p.add_argument("--dt", type=float, dest="fdm_dt")
    p.add_argument("--fdm-y-max", type=float, dest="fdm_y_max")
    p.add_argument("--theta", type=float, dest="fdm_theta")
    p.add_argument("--tolerance", type=float)

    p = sub.add_parser("figures", help="write the eight reference figure datasets")
    shared(p)
    p.add_argument("--y-grid-max", type=float, dest="y_grid_max")
    p.add_argument("--samples", type=int)

    p = sub.add_parser("convergence", help="grid refinement study of the FD oracle")
    shared(p)
    p.add_argument("--levels", type=int)
    p.add_argument("--delta-y", type=float, dest="fdm_delta_y")
    p.add_argument("--dt", type=float, dest="fdm_dt")
    p.add_argument("--fdm-y-max", type=float, dest="fdm_y_max")
    p.add_argument("--theta", type=float, dest="fdm_theta")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items()
                 if k not in ("mode", "config") and v is not None}
    if "sweep_values" in overrides:
        try:
            overrides["sweep_values"] = tuple(
                float(v) for v in str(overrides["sweep_values"]).split(","))
        except ValueError:
            _emit_error(ConfigError(
                "sweep.values: expected comma-separated numbers"))
            return 2
    try:
        text = args.config.read_text(encoding="utf-8") if args.config else ""
        config = parse_config(text, mode=args.mode, overrides=overrides)
        return run(config)
    except (ConfigError, ParameterError, OutOfDomain, NonFiniteField, OSError) as exc:
        _emit_error(exc)
        return 2


def _emit_error(exc: Exception) -> None:
    record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(record), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
