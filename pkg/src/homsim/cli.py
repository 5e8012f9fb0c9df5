"""Scenario runner: declarative TOML configs in, CSV + metadata out.

Subcommands
-----------
run          evaluate one scenario config, write fringe CSV, optional
             type-indicator CSV, and a metadata sidecar
sweep        evaluate one config once per value of a single swept
             parameter and write a summary CSV
check-table1 run the four regime/correlation cells of the free-space
             scenario and assert the rate and visibility bounds,
             printing a pass/fail matrix

Exit codes: 0 success, 2 config error, 3 quadrature non-convergence,
4 degenerate scenario, 1 failed check.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import classify, interference, spectra
from .interference import (DegenerateScenarioError, ScanGrid, Scenario,
                           UndefinedVisibilityError)
from .multilayer import (SPEED_OF_LIGHT, StackSpec, build_quarter_wave_stack,
                         stack_from_mapping)
from .numerics import ConvergenceError
from .spectra import BandShape, PumpSpec

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_DEGENERATE = 4

_CONVENTION_NOTE = (
    "transmission amplitudes exclude free propagation outside the stack; "
    "the common path phase cancels in the normalized rate and shifts only "
    "the absolute dip position of asymmetric scenarios")

_SWEEPABLE = ("barrier_I.N", "barrier_II.N", "pump.omega_rad_s",
              "pulse.t0_s", "regime", "correlation")


class ConfigError(ValueError):
    """Bad scenario config; message carries the offending field or line."""


def _fail(message):
    raise ConfigError(message)


def _check_keys(table, allowed, where):
    unknown = set(table) - set(allowed)
    if unknown:
        _fail(f"{where}: unknown key(s) {sorted(unknown)}; allowed: {sorted(allowed)}")


def _number(table, key, where, *, required=True, default=None):
    if key not in table:
        if required:
            _fail(f"{where}: missing required key '{key}'")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{where}.{key}: expected a number, got {value!r}")
    return float(value)


@dataclasses.dataclass
class RunConfig:
    scenario: Scenario
    target_rel_error: float
    indicator: dict | None  # None when no indicator export requested
    fringe_csv: str
    indicator_csv: str
    metadata_file: str
    sweep: dict | None


def _parse_barrier(data, where, base_dir):
    if data is None:
        return StackSpec()
    if isinstance(data, dict) and "file" in data:
        extra = set(data) - {"file"}
        if extra:
            _fail(f"{where}: keys {sorted(extra)} cannot accompany 'file'")
        path = Path(base_dir) / str(data["file"])
        if not path.exists():
            _fail(f"{where}.file: no such file {path}")
        try:
            with open(path, "rb") as fh:
                loaded = tomllib.load(fh)
            return stack_from_mapping(loaded)
        except (tomllib.TOMLDecodeError, ValueError) as exc:
            _fail(f"{where}.file ({path}): {exc}")
    try:
        return stack_from_mapping(data)
    except ValueError as exc:
        _fail(f"{where}: {exc}")


def parse_config(data, base_dir=".", stem="scenario"):
    """Validate parsed TOML data and build a RunConfig."""
    _check_keys(data, ["regime", "correlation", "pump", "pulse", "barrier_I",
                       "barrier_II", "scan", "quadrature", "indicator",
                       "output", "sweep"], "config")
    for key in ("regime", "correlation", "pump", "pulse", "scan"):
        if key not in data:
            _fail(f"config: missing required key '{key}'")

    regime = data["regime"]
    if regime not in interference.REGIMES:
        _fail(f"regime: must be one of {interference.REGIMES}, got {regime!r}")
    correlation = data["correlation"]
    if correlation not in interference.CORRELATIONS:
        _fail(f"correlation: must be one of {interference.CORRELATIONS}, "
              f"got {correlation!r}")

    pump_tbl = data["pump"]
    _check_keys(pump_tbl, ["omega_rad_s"], "pump")
    pump = PumpSpec(_number(pump_tbl, "omega_rad_s", "pump"))

    pulse_tbl = data["pulse"]
    _check_keys(pulse_tbl, ["model", "t0_s", "center_rad_s"], "pulse")
    model = pulse_tbl.get("model", "rect_time")
    if model not in spectra.PULSE_MODELS:
        _fail(f"pulse.model: must be one of {spectra.PULSE_MODELS}, got {model!r}")
    t0 = _number(pulse_tbl, "t0_s", "pulse")
    center = _number(pulse_tbl, "center_rad_s", "pulse", required=False,
                     default=0.5 * pump.frequency)
    try:
        pulse = BandShape(model=model, center=center, half_duration=t0)
    except ValueError as exc:
        _fail(f"pulse: {exc}")

    scan_tbl = data["scan"]
    _check_keys(scan_tbl, ["s_min_m", "s_max_m", "n_points"], "scan")
    n_points = scan_tbl.get("n_points")
    if not isinstance(n_points, int) or isinstance(n_points, bool):
        _fail(f"scan.n_points: expected an integer, got {n_points!r}")
    try:
        scan_grid = ScanGrid(_number(scan_tbl, "s_min_m", "scan"),
                             _number(scan_tbl, "s_max_m", "scan"), n_points)
    except ValueError as exc:
        _fail(f"scan: {exc}")

    barrier_i = _parse_barrier(data.get("barrier_I"), "barrier_I", base_dir)
    barrier_ii = _parse_barrier(data.get("barrier_II"), "barrier_II", base_dir)

    quad = data.get("quadrature", {})
    _check_keys(quad, ["target_rel_error"], "quadrature")
    target = _number(quad, "target_rel_error", "quadrature", required=False,
                     default=1e-7)
    if not target > 0:
        _fail("quadrature.target_rel_error: must be positive")

    indicator = data.get("indicator")
    if indicator is not None:
        _check_keys(indicator, ["enabled", "s_min_m", "s_max_m", "n_points",
                                "tolerance"], "indicator")
        if not indicator.get("enabled", True):
            indicator = None

    output = data.get("output", {})
    _check_keys(output, ["fringe_csv", "indicator_csv", "metadata"], "output")

    sweep = data.get("sweep")
    if sweep is not None:
        _check_keys(sweep, ["parameter", "values"], "sweep")
        for key in ("parameter", "values"):
            if key not in sweep:
                _fail(f"sweep: missing required key '{key}'")
        if sweep["parameter"] not in _SWEEPABLE:
            _fail(f"sweep.parameter: must be one of {_SWEEPABLE}, "
                  f"got {sweep['parameter']!r}")
        if not isinstance(sweep["values"], list) or not sweep["values"]:
            _fail("sweep.values: expected a non-empty list")

    try:
        scenario = Scenario(regime=regime, correlation=correlation,
                            barrier_I=barrier_i, barrier_II=barrier_ii,
                            pump=pump, pulse=pulse, scan=scan_grid)
    except ValueError as exc:
        _fail(f"config: {exc}")

    return RunConfig(
        scenario=scenario,
        target_rel_error=target,
        indicator=indicator,
        fringe_csv=output.get("fringe_csv", f"{stem}_fringe.csv"),
        indicator_csv=output.get("indicator_csv", f"{stem}_indicator.csv"),
        metadata_file=output.get("metadata", f"{stem}_meta.toml"),
        sweep=sweep,
    )


def load_config(path):
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        _fail(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        _fail(f"{path}: TOML parse error: {exc}")
    return parse_config(data, base_dir=path.parent, stem=path.stem)


def _stack_summary(stack):
    return [{"n": lay.refractive_index, "d_m": lay.thickness}
            for lay in stack.layers]


def _toml_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return repr(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, list):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k} = {_toml_value(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {value!r}")


def _write_metadata(path, sections):
    lines = []
    for name, table in sections:
        lines.append(f"[{name}]")
        for key, value in table.items():
            if value is None:
                continue
            lines.append(f"{key} = {_toml_value(value)}")
        lines.append("")
    Path(path).write_text("\n".join(lines))


def _write_fringe_csv(path, fringe):
    with open(path, "w") as fh:
        fh.write("s_m,r_normalized\n")
        for s, r in zip(fringe.s_values, fringe.r_normalized):
            fh.write(f"{float(s)!r},{float(r)!r}\n")


def _write_indicator_csv(path, s_values, f_values):
    with open(path, "w") as fh:
        fh.write("s_m,F_value\n")
        for s, f in zip(s_values, f_values):
            fh.write(f"{float(s)!r},{float(f)!r}\n")


def _run_indicator(cfg, fringe):
    """Indicator scan on the same converged frequency grid as the fringe."""
    scenario = cfg.scenario
    spec = cfg.indicator or {}
    grid = interference.scenario_frequency_grid(scenario,
                                                fringe.n_quadrature_points)
    packet_i = spectra.effective_packet(scenario.pulse, scenario.barrier_I, grid)
    packet_ii = spectra.effective_packet(scenario.pulse, scenario.barrier_II, grid)
    s_lo = spec.get("s_min_m", scenario.scan.s_min)
    s_hi = spec.get("s_max_m", scenario.scan.s_max)
    n = spec.get("n_points", max(scenario.scan.n_points, 32))
    tol = spec.get("tolerance", classify.DEFAULT_VERDICT_TOLERANCE)
    verdict = classify.classify_type(packet_i, packet_ii, scenario.pump,
                                     (s_lo, s_hi), n, tol)
    s_values = np.linspace(s_lo, s_hi, n)
    f_values = [classify.fourier_indicator(packet_i, packet_ii, scenario.pump, s)
                for s in s_values]
    return verdict, s_values, np.asarray(f_values)


def _scenario_section(scenario):
    return {
        "regime": scenario.regime,
        "correlation": scenario.correlation,
        "pump_omega_rad_s": scenario.pump.frequency,
        "pulse_model": scenario.pulse.model,
        "pulse_t0_s": scenario.pulse.half_duration,
        "pulse_center_rad_s": scenario.pulse.center,
        "barrier_I": _stack_summary(scenario.barrier_I),
        "barrier_II": _stack_summary(scenario.barrier_II),
        "scan_s_min_m": scenario.scan.s_min,
        "scan_s_max_m": scenario.scan.s_max,
        "scan_n_points": scenario.scan.n_points,
    }


def _execute_run(cfg, out_dir, quiet, points_per_period):
    fringe = interference.scan(cfg.scenario,
                               target_rel_error=cfg.target_rel_error,
                               points_per_period=points_per_period)
    out_dir.mkdir(parents=True, exist_ok=True)
    fringe_path = out_dir / cfg.fringe_csv
    _write_fringe_csv(fringe_path, fringe)

    results = {
        "baseline": fringe.baseline,
        "visibility": fringe.visibility,
        "dip_position_m": fringe.dip_position,
        "min_r": float(fringe.r_normalized.min()),
        "max_r": float(fringe.r_normalized.max()),
    }
    quadrature = {
        "n_frequency_points": fringe.n_quadrature_points,
        "target_rel_error": cfg.target_rel_error,
        "points_per_period": points_per_period,
        "converged": True,
    }
    sections = [("scenario", _scenario_section(cfg.scenario)),
                ("results", results),
                ("quadrature", quadrature),
                ("conventions", {"phase": _CONVENTION_NOTE})]

    if cfg.indicator is not None:
        verdict, s_values, f_values = _run_indicator(cfg, fringe)
        _write_indicator_csv(out_dir / cfg.indicator_csv, s_values, f_values)
        sections.insert(2, ("indicator", {
            "type_verdict": verdict.verdict,
            "min_indicator": verdict.min_indicator,
            "argmin_s_m": verdict.argmin_s,
        }))

    _write_metadata(out_dir / cfg.metadata_file, sections)
    if not quiet:
        dip = "none" if fringe.dip_position is None else f"{fringe.dip_position:g} m"
        print(f"wrote {fringe_path}")
        print(f"visibility {fringe.visibility:.6f}  dip {dip}  "
              f"baseline {fringe.baseline:g}  "
              f"n_quadrature {fringe.n_quadrature_points}")
        if cfg.indicator is not None:
            print(f"type verdict: {verdict.verdict}")
    return fringe


def _apply_sweep_value(cfg, parameter, value):
    scenario = cfg.scenario
    if parameter in ("regime", "correlation"):
        if value not in (interference.REGIMES if parameter == "regime"
                         else interference.CORRELATIONS):
            _fail(f"sweep value {value!r} invalid for {parameter}")
        scenario = dataclasses.replace(scenario, **{parameter: value})
    elif parameter == "pump.omega_rad_s":
        pump = PumpSpec(float(value))
        pulse = dataclasses.replace(scenario.pulse, center=0.5 * pump.frequency)
        scenario = dataclasses.replace(scenario, pump=pump, pulse=pulse)
    elif parameter == "pulse.t0_s":
        pulse = dataclasses.replace(scenario.pulse, half_duration=float(value))
        scenario = dataclasses.replace(scenario, pulse=pulse)
    else:  # barrier_X.N: rebuild the quarter-wave stack with a new layer count
        arm = "barrier_I" if parameter == "barrier_I.N" else "barrier_II"
        stack = getattr(scenario, arm)
        if not stack.layers:
            _fail(f"sweep over {parameter} needs a quarter-wave barrier in the config")
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            _fail(f"sweep value {value!r} invalid for {parameter}")
        ns = sorted({lay.refractive_index for lay in stack.layers}, reverse=True)
        n_high, n_low = ns[0], ns[-1]
        omega0 = (np.pi * SPEED_OF_LIGHT
                  / (2.0 * n_high * stack.layers[0].thickness))
        scenario = dataclasses.replace(
            scenario, **{arm: build_quarter_wave_stack(value, n_high, n_low, omega0)})
    return dataclasses.replace(cfg, scenario=scenario)


def _execute_sweep(cfg, out_dir, quiet, points_per_period):
    parameter = cfg.sweep["parameter"]
    values = cfg.sweep["values"]
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for value in values:
        sub = _apply_sweep_value(cfg, parameter, value)
        tag = str(value).replace(".", "p")
        sub = dataclasses.replace(
            sub,
            fringe_csv=_suffixed(cfg.fringe_csv, tag),
            indicator_csv=_suffixed(cfg.indicator_csv, tag),
            metadata_file=_suffixed(cfg.metadata_file, tag),
        )
        fringe = _execute_run(sub, out_dir, quiet, points_per_period)
        dip = float("nan") if fringe.dip_position is None else fringe.dip_position
        rows.append((value, fringe.visibility, dip,
                     float(fringe.r_normalized.max()),
                     float(fringe.r_normalized.min())))
    summary = out_dir / "sweep_summary.csv"
    with open(summary, "w") as fh:
        fh.write("param,visibility,dip_position,max_r,min_r\n")
        for row in rows:
            fh.write(",".join(str(x) if isinstance(x, str) else repr(x)
                              for x in row) + "\n")
    if not quiet:
        print(f"wrote {summary}")
    return rows


def _suffixed(name, tag):
    path = Path(name)
    return f"{path.stem}_{tag}{path.suffix}"


def _check_table1(quiet, points_per_period):
    """Free-space bound checks for the four regime/correlation cells."""
    t0 = 2.0e-14
    omega_p = 5.36e15
    grid = ScanGrid(-12 * SPEED_OF_LIGHT * t0, 12 * SPEED_OF_LIGHT * t0, 241)
    tol = 1e-9
    cells = []
    for regime in interference.REGIMES:
        for correlation in interference.CORRELATIONS:
            scenario = interference.make_scenario(regime, correlation,
                                                  omega_p, t0, grid)
            fringe = interference.scan(scenario,
                                       points_per_period=points_per_period)
            max_r = float(fringe.r_normalized.max())
            vis = fringe.visibility
            checks = [("R >= 0", float(fringe.r_normalized.min()) >= -tol)]
            if regime == "quantum":
                checks.append(("V <= 1", vis <= 1.0 + tol))
            if correlation == "independent":
                checks.append(("R <= 1", max_r <= 1.0 + tol))
            if regime == "classical" and correlation == "correlated":
                # |G1|/G0 <= 1/2, i.e. 1/2 <= R <= 3/2
                checks.append(("1/2 <= R <= 3/2",
                               float(fringe.r_normalized.min()) >= 0.5 - tol
                               and max_r <= 1.5 + tol))
                checks.append(("V <= 1/2", vis <= 0.5 + tol))
            if regime == "classical" and correlation == "independent":
                checks.append(("V <= 1/3", vis <= 1.0 / 3.0 + 1e-6))
            cells.append((regime, correlation, max_r, vis, checks))

    all_ok = True
    print(f"{'':12s}{'uncorrelated':>28s}{'correlated':>28s}")
    for regime in interference.REGIMES:
        row = [f"{regime:<12s}"]
        for correlation in ("independent", "correlated"):
            cell = next(c for c in cells if c[0] == regime and c[1] == correlation)
            ok = all(flag for _, flag in cell[4])
            all_ok = all_ok and ok
            row.append(f"{'PASS' if ok else 'FAIL'}  maxR={cell[2]:.3f} V={cell[3]:.3f}"
                       .rjust(28))
        print("".join(row))
    if not quiet:
        for regime, correlation, _, _, checks in cells:
            for label, flag in checks:
                status = "ok" if flag else "VIOLATED"
                print(f"  {regime:<9s} {correlation:<11s} {label:<16s} {status}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="homsim",
        description="Coincidence-fringe scans for photon wave packets "
                    "distorted by multilayer barriers")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("run", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("config", help="scenario config file (TOML)")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--quiet", action="store_true")
        p.add_argument("--points-per-period", type=float, default=12.0,
                       help="minimum frequency samples per kernel oscillation")

    p = sub.add_parser("check-table1")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--points-per-period", type=float, default=12.0)

    args = parser.parse_args(argv)

    try:
        if args.command == "check-table1":
            return _check_table1(args.quiet, args.points_per_period)
        cfg = load_config(args.config)
        out_dir = Path(args.out)
        if args.command == "run":
            _execute_run(cfg, out_dir, args.quiet, args.points_per_period)
            return EXIT_OK
        if cfg.sweep is None:
            _fail("sweep command needs a [sweep] table in the config")
        _execute_sweep(cfg, out_dir, args.quiet, args.points_per_period)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DegenerateScenarioError, UndefinedVisibilityError,
            classify.DegeneratePacketError, spectra.DegenerateSpectrumError) as exc:
        print(f"degenerate scenario: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
