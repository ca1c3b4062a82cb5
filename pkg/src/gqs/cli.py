"""Command-line front end.

    gqs <command> --config <path> [--out <path>]

Commands: scales, levels, grid, design, report.  The JSON config supplies
physics and beam parameters; anything omitted falls back to the reference
defaults (v = 5 m/s, dv/v = 1e-3, rho = 5 cm^-3, tilted-cavity gravity).
Data outputs are JSON (reports) and CSV (density grids) written atomically;
matplotlib figures are rendered next to them.  Formatting is pinned to 12
significant digits so identical configs produce byte-identical data files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

from . import cavity2d, experiment
from .bouncer1d import GravityScales, scales
from .constants import neutron_constants
from .experiment import BeamSpec

__all__ = ["RunConfig", "ConfigError", "parse_config", "run", "main"]

COMMANDS = ("scales", "levels", "grid", "design", "report")

_TOP_KEYS = {
    "command",
    "g_mode",
    "quantum_numbers",
    "grid_extent",
    "grid_resolution",
    "beam",
    "t",
    "dwell_time",
    "cavity_side",
    "absorber_cutoff",
    "output_path",
    "figures",
}
_BEAM_KEYS = {
    "v",
    "dv_over_v",
    "rho_ucn",
    "mono_reduction",
    "entrance_area",
    "collimation_ratio",
}


class ConfigError(ValueError):
    """Invalid or unknown configuration content."""


@dataclass
class RunConfig:
    command: str
    g_mode: str = "tilted"
    quantum_numbers: list[tuple[int, int]] = field(
        default_factory=lambda: [(0, 0), (0, 1), (1, 0), (1, 1)]
    )
    grid_extent: float = 8.0  # in units of l0, both axes
    grid_resolution: int = 400
    beam: BeamSpec = field(default_factory=BeamSpec)
    t: float = 12.0  # s, dwell/accumulation time for the report
    dwell_time: float = 2.0  # s, for bounce statistics
    cavity_side: float | None = None  # m; default 3 l0
    absorber_cutoff: float | None = None  # m; default 3 l0
    output_path: str | None = None
    figures: bool = True

    def gravity_scales(self) -> GravityScales:
        g = neutron_constants().g_earth
        g_eff = g / math.sqrt(2.0) if self.g_mode == "tilted" else g
        return scales(g_eff)


def parse_config(text: str, command: str | None = None) -> RunConfig:
    """Parse and validate a JSON config; `command` overrides the config's own."""
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    unknown = sorted(set(raw) - _TOP_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    cmd = command or raw.get("command")
    if cmd is None:
        raise ConfigError("no command given")
    if cmd not in COMMANDS:
        raise ConfigError(f"unknown command {cmd!r}; expected one of {', '.join(COMMANDS)}")
    if "command" in raw and command is not None and raw["command"] != command:
        raise ConfigError(
            f"config command {raw['command']!r} conflicts with CLI command {command!r}"
        )

    g_mode = raw.get("g_mode", "tilted")
    if g_mode not in ("vertical", "tilted"):
        raise ConfigError(f"g_mode must be 'vertical' or 'tilted', got {g_mode!r}")

    qn_raw = raw.get("quantum_numbers", [[0, 0], [0, 1], [1, 0], [1, 1]])
    if not isinstance(qn_raw, list):
        raise ConfigError("quantum_numbers must be a list of [n, m] pairs")
    quantum_numbers = []
    for entry in qn_raw:
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(q, int) and q >= 0 for q in entry)
        ):
            raise ConfigError(
                f"quantum_numbers entries must be pairs of non-negative integers, got {entry!r}"
            )
        quantum_numbers.append((entry[0], entry[1]))

    grid_extent = float(raw.get("grid_extent", 8.0))
    if grid_extent <= 0:
        raise ConfigError("grid_extent must be positive")
    grid_resolution = int(raw.get("grid_resolution", 400))
    if grid_resolution < 2:
        raise ConfigError("grid_resolution must be at least 2")

    beam_raw = raw.get("beam", {})
    if not isinstance(beam_raw, dict):
        raise ConfigError("beam must be a JSON object")
    unknown_beam = sorted(set(beam_raw) - _BEAM_KEYS)
    if unknown_beam:
        raise ConfigError(f"unknown beam keys: {', '.join(unknown_beam)}")
    try:
        beam = BeamSpec(**beam_raw)
    except ValueError as exc:
        raise ConfigError(f"invalid beam parameters: {exc}") from None

    t = float(raw.get("t", 12.0))
    if t < 0:
        raise ConfigError("t must be non-negative")
    dwell_time = float(raw.get("dwell_time", 2.0))
    if dwell_time <= 0:
        raise ConfigError("dwell_time must be positive")

    def _optional_positive(key):
        if key not in raw:
            return None
        val = float(raw[key])
        if val <= 0:
            raise ConfigError(f"{key} must be positive")
        return val

    return RunConfig(
        command=cmd,
        g_mode=g_mode,
        quantum_numbers=quantum_numbers,
        grid_extent=grid_extent,
        grid_resolution=grid_resolution,
        beam=beam,
        t=t,
        dwell_time=dwell_time,
        cavity_side=_optional_positive("cavity_side"),
        absorber_cutoff=_optional_positive("absorber_cutoff"),
        output_path=raw.get("output_path"),
        figures=bool(raw.get("figures", True)),
    )


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _q(value: float, unit: str) -> dict:
    """A number with its unit, rounded to the pinned 12 significant digits."""
    return {"value": _sig12(float(value)), "unit": unit}


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gqs-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: str, payload: dict) -> None:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _beam_echo(beam: BeamSpec) -> dict:
    return {
        "v": _q(beam.v, "m/s"),
        "dv_over_v": _q(beam.dv_over_v, "1"),
        "rho_ucn": _q(beam.rho_ucn, "cm^-3"),
        "mono_reduction": _q(beam.mono_reduction, "1"),
        "entrance_area": _q(beam.entrance_area, "cm^2"),
        "collimation_ratio": _q(beam.collimation_ratio, "1"),
    }


def _run_scales(config: RunConfig, out: str) -> None:
    sc = config.gravity_scales()
    payload = {
        "g_mode": config.g_mode,
        "g_eff": _q(sc.g_eff, "m/s^2"),
        "l0": _q(sc.l0, "m"),
        "l0_um": _q(sc.l0 * 1e6, "um"),
        "eps0": _q(sc.eps0, "J"),
        "eps0_ev": _q(sc.eps0_ev, "eV"),
    }
    _write_json(out, payload)
    print(f"g_eff = {sc.g_eff:.6g} m/s^2")
    print(f"l0 = {sc.l0 * 1e6:.6g} um")
    print(f"eps0 = {sc.eps0_ev:.6g} eV")


def _run_levels(config: RunConfig, out: str) -> None:
    sc = config.gravity_scales()
    ev = neutron_constants().ev_per_joule
    levels = {}
    for n, m in config.quantum_numbers:
        st = cavity2d.cavity_state(n, m, sc)
        levels[f"E_{n}_{m}"] = _q(st.energy * ev, "eV")
        print(f"E[{n},{m}] = {st.energy * ev:.6g} eV")
    gap = cavity2d.energy_gap(sc)
    tau = cavity2d.resolution_time(sc)
    payload = {
        "g_mode": config.g_mode,
        "levels": levels,
        "gap": _q(gap * ev, "eV"),
        "resolution_time": _q(tau, "s"),
    }
    _write_json(out, payload)
    print(f"gap E[0,1]-E[0,0] = {gap * ev:.6g} eV")
    print(f"tau_g = {tau:.6g} s")


def _run_grid(config: RunConfig, out_dir: str) -> None:
    if not config.quantum_numbers:
        raise ConfigError("grid command needs at least one quantum-number pair")
    sc = config.gravity_scales()
    os.makedirs(out_dir, exist_ok=True)
    extent = (config.grid_extent, config.grid_extent)
    resolution = (config.grid_resolution, config.grid_resolution)
    for n, m in config.quantum_numbers:
        state = cavity2d.cavity_state(n, m, sc)
        grid = cavity2d.density_grid(state, extent=extent, resolution=resolution)
        csv_path = os.path.join(out_dir, f"grid_{n}_{m}.csv")
        _atomic_write(csv_path, grid.to_csv())
        print(f"|Psi_{n},{m}|^2 grid ({resolution[0]}x{resolution[1]}, "
              f"extent {extent[0]:g} l0) -> {csv_path}")
        if config.figures:
            from .figures import render_density_grid

            png_path = os.path.join(out_dir, f"grid_{n}_{m}.png")
            render_density_grid(grid, png_path)
            print(f"figure -> {png_path}")


def _run_design(config: RunConfig, out: str) -> None:
    sc = config.gravity_scales()
    beam = config.beam
    hopper = experiment.hopper_geometry_check(beam)
    mono_ok, margin = experiment.monochromaticity_ok(beam.delta_v, sc)
    ground = cavity2d.cavity_state(0, 0, sc)
    l_x = config.cavity_side if config.cavity_side is not None else 3.0 * sc.l0
    stats = cavity2d.bounce_statistics(config.dwell_time, l_x, ground)
    cutoff = config.absorber_cutoff if config.absorber_cutoff is not None else 3.0 * sc.l0
    states = [cavity2d.cavity_state(n, m, sc) for n, m in config.quantum_numbers]
    overlaps = cavity2d.absorber_selectivity(states, cutoff)
    payload = {
        "g_mode": config.g_mode,
        "hopper": {
            "v_xy": _q(hopper.v_xy, "m/s"),
            "climb_height": _q(hopper.climb_height, "m"),
            "collimation_ok": hopper.collimation_ok,
            "climb_ok": hopper.climb_ok,
            "passed": hopper.passed,
            "reasons": list(hopper.reasons),
        },
        "monochromaticity": {
            "ok": mono_ok,
            "margin": _q(margin, "1"),
            "delta_v": _q(beam.delta_v, "m/s"),
        },
        "bounce_statistics": {
            "dwell_time": _q(stats.T, "s"),
            "cavity_side": _q(stats.l_x, "m"),
            "mean_bounces": _q(stats.mean_bounces, "1"),
            "spread_bounces": _q(stats.spread_bounces, "1"),
            "v_bar_x": _q(stats.v_bar_x, "m/s"),
            "parity_distinguishable": stats.parity_distinguishable,
        },
        "absorber_overlap": {
            f"Psi_{st.n}_{st.m}": _q(p, "1") for st, p in zip(states, overlaps)
        },
        "absorber_cutoff": _q(cutoff, "m"),
        "inputs": _beam_echo(beam),
    }
    _write_json(out, payload)
    print(f"hopper: v_xy = {hopper.v_xy:.4g} m/s, climb = {hopper.climb_height:.4g} m, "
          f"{'pass' if hopper.passed else 'FAIL (' + ','.join(hopper.reasons) + ')'}")
    print(f"monochromaticity: margin = {margin:.4g} -> {'ok' if mono_ok else 'violated'}")
    print(f"bounces in {stats.T:g} s: n = {stats.mean_bounces:.4g} +- {stats.spread_bounces:.4g} "
          f"(parity {'resolvable' if stats.parity_distinguishable else 'unresolvable'})")


def _run_report(config: RunConfig, out: str) -> None:
    sc = config.gravity_scales()
    report = experiment.full_report(config.beam, sc, config.t)
    ev = neutron_constants().ev_per_joule
    payload = {
        "g_mode": config.g_mode,
        "coherence_length": _q(report.coherence_length, "m"),
        "coherence_length_adopted": _q(report.coherence_length_adopted, "m"),
        "n_c": _q(report.n_c, "1"),
        "pair_rate_coefficient": _q(report.pair_rate_coefficient, "cm^6/s"),
        "pairs": _q(report.pairs, "1"),
        "pairs_computed_lc": _q(report.pairs_computed_lc, "1"),
        "mono_ok": report.mono_ok,
        "mono_margin": _q(report.mono_margin, "1"),
        "climb_height": _q(report.climb_height, "m"),
        "hopper_passed": report.hopper_passed,
        "dipole_energy": _q(report.dipole_energy * ev, "eV"),
        "pair_separation": _q(report.pair_separation, "m"),
        "gap": _q(report.gap * ev, "eV"),
        "resolution_time": _q(report.resolution_time, "s"),
        "decay_survival": _q(report.decay_survival, "1"),
        "collision_budget": report.collision_budget,
        "t": _q(report.t, "s"),
        "notes": list(report.notes),
        "inputs": _beam_echo(report.beam),
    }
    _write_json(out, payload)
    print(f"L_c computed = {report.coherence_length:.4g} m, adopted = "
          f"{report.coherence_length_adopted:.4g} m")
    print(f"pairs after {report.t:g} s: {report.pairs:.4g} (adopted L_c), "
          f"{report.pairs_computed_lc:.4g} (computed L_c)")
    print(f"monochromaticity margin = {report.mono_margin:.4g} "
          f"({'ok' if report.mono_ok else 'violated'})")
    print(f"dipole energy = {report.dipole_energy * ev:.4g} eV vs gap {report.gap * ev:.4g} eV")
    print(f"tau_g = {report.resolution_time:.4g} s; decay survival = {report.decay_survival:.6g}")
    if config.figures:
        from .figures import render_pair_accumulation

        fig_path = os.path.splitext(out)[0] + "_pairs.png"
        render_pair_accumulation(report, fig_path)
        print(f"figure -> {fig_path}")


_RUNNERS = {
    "scales": _run_scales,
    "levels": _run_levels,
    "grid": _run_grid,
    "design": _run_design,
    "report": _run_report,
}


def run(config: RunConfig) -> int:
    """Execute a validated config; returns a process exit status."""
    out = config.output_path
    if out is None:
        out = "grids" if config.command == "grid" else f"{config.command}.json"
    try:
        _RUNNERS[config.command](config, out)
    except (ConfigError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gqs",
        description="Gravitational quantum states of ultracold neutrons: "
        "solvers and experiment feasibility reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "scales": "characteristic length and energy for the chosen gravity",
        "levels": "cavity energy levels, gap and resolution time",
        "grid": "density grids |Psi_{n,m}|^2 as CSV plus figures",
        "design": "hopper geometry, monochromaticity and bounce statistics",
        "report": "full entangled-pair feasibility report",
    }
    for cmd in COMMANDS:
        p = sub.add_parser(cmd, help=helps[cmd])
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--out", help="output file (or directory for 'grid')")

    args = parser.parse_args(argv)
    text = ""
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 1
    try:
        config = parse_config(text, command=args.command)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        config.output_path = args.out
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
