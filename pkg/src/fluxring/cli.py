"""Command-line front end.

Subcommands::

    sweep-current     thermal persistent current vs normalized flux -> CSV
    sweep-resistance  resistance-oscillation curve vs flux -> CSV
    sweep-icrit       critical current, both directions, vs flux -> CSV
    rectify           switching simulation: dc voltage vs flux -> CSV
    decay             single RL decay report
    feasibility       size bounds report, or a size sweep -> CSV
    meissner          expulsion / angular-momentum-transfer report
    report            preset summary: derived scales of the configured ring

Settings merge with precedence CLI flag > config file (--config) > preset
(--preset, default aluminum-ring).  Config files are `key = value` lines
(see fluxring.configfile); the same keys work with --set on the command
line.  Recognized keys:

    ring      radius wall_width wall_height cross_section inductance_geo
              t_c pair_density london_depth resistivity_n pair_mass
              pair_charge
    switching omega_sw r_b duty mode theta dt delta_f attempt_rate
    run       temperature seed c_r ic0 model shift inductance resistance
              current phi size density velocity mass field
    flux      flux_start flux_stop flux_steps (normalized units), or
              flux_start_wb flux_stop_wb (absolute, config files only)

Flux ranges on the command line are always normalized: --flux 0:1:101.
Exit codes: 0 success, 2 usage error, 3 domain/physics error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import shlex
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .configfile import parse_value, read_config
from .csvio import metadata_line, render_csv, write_text_atomic
from .dynamics import (
    SwitchingConfig,
    relaxation_time,
    simulate_switching,
    vdc_sweep,
)
from .ensemble import little_parks_sweep
from .errors import ConfigError, FluxringError
from .feasibility import (
    ParticleSpec,
    bohr_temperature_bound,
    de_broglie_wavelength,
    interference_time_bound,
)
from .presets import load_preset, preset_names
from .quantities import HBAR, K_B, flux_quantum
from .ring import (
    FluxoidRegime,
    Material,
    RingGeometry,
    angular_momentum_transfer,
    critical_current,
    fluxoid_balance,
    ground_persistent_current,
    kinetic_inductance,
    london_depth,
    pair_density,
    state_energy,
    total_inductance,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

GEOMETRY_KEYS = {
    "radius": "r",
    "wall_width": "w",
    "wall_height": "h",
    "cross_section": "s",
    "inductance_geo": "L_geo",
}
MATERIAL_KEYS = {
    "t_c": "T_c",
    "pair_density": "n_s0",
    "london_depth": "lambda_L0",
    "resistivity_n": "rho_n",
    "pair_mass": "m",
    "pair_charge": "q",
}
SWITCHING_KEYS = {"omega_sw", "r_b", "duty", "mode", "theta", "dt", "delta_f", "attempt_rate"}
RUN_KEYS = {
    "temperature", "seed", "c_r", "ic0", "model", "shift",
    "inductance", "resistance", "current", "phi",
    "size", "density", "velocity", "mass", "field", "size_sweep",
    "flux_start", "flux_stop", "flux_steps", "flux_start_wb", "flux_stop_wb",
}
KNOWN_KEYS = set(GEOMETRY_KEYS) | set(MATERIAL_KEYS) | SWITCHING_KEYS | RUN_KEYS

RING_COMMANDS = ("sweep-current", "sweep-resistance", "sweep-icrit", "rectify",
                 "decay", "meissner", "report")
COMMANDS = RING_COMMANDS + ("feasibility",)


class UsageError(FluxringError):
    """Bad command line; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Fully merged, validated run description (pure function of argv)."""

    command: str
    preset: str
    values: dict
    flux: tuple[float, float, int] | None
    temperature: float | None
    seed: int
    output: str | None
    argv_text: str


def parse_flux_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--flux expects START:STOP:STEPS, got {text!r}")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--flux expects numbers in START:STOP:STEPS, got {text!r}") from None
    if steps < 2:
        raise UsageError(f"--flux needs at least 2 steps, got {steps}")
    if not stop > start:
        raise UsageError(f"--flux needs STOP > START, got {text!r}")
    return start, stop, steps


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxring",
        description="Quantized states, persistent currents and switching"
        " dynamics of superconducting loops.",
    )
    parser.add_argument("--version", action="version", version=f"fluxring {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, flux=False):
        p.add_argument("--preset", default="aluminum-ring",
                       help=f"one of: {', '.join(preset_names())}")
        p.add_argument("--config", default=None, help="key = value file")
        p.add_argument("--set", dest="assignments", action="append", default=[],
                       metavar="KEY=VALUE", help="override a single setting")
        p.add_argument("-o", "--output", default=None, help="output file path")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("-T", "--temperature", type=float, default=None, metavar="K")
        if flux:
            p.add_argument("--flux", default=None, metavar="START:STOP:STEPS",
                           help="normalized flux range (phi units)")

    p = sub.add_parser("sweep-current", help="thermal persistent current vs flux")
    common(p, flux=True)

    p = sub.add_parser("sweep-resistance", help="resistance oscillation vs flux")
    common(p, flux=True)
    p.add_argument("--cr", type=float, default=None, help="resistance scale c_R [ohm]")

    p = sub.add_parser("sweep-icrit", help="critical current vs flux")
    common(p, flux=True)
    p.add_argument("--ic0", type=float, default=None, help="zero-backaction critical current [A]")
    p.add_argument("--model", choices=("symmetric", "shift"), default=None)
    p.add_argument("--dphi", type=float, default=None,
                   help="argument shift delta_phi (full, shift model)")

    p = sub.add_parser("rectify", help="switching simulation, dc voltage vs flux")
    common(p, flux=True)
    p.add_argument("--omega-sw", type=float, default=None, help="closing rate [1/s]")
    p.add_argument("--rb", type=float, default=None, help="normal segment resistance [ohm]")
    p.add_argument("--duty", type=float, default=None)
    p.add_argument("--mode", choices=("deterministic", "poisson", "thermal"), default=None)
    p.add_argument("--theta", type=float, default=None, help="simulated time [s]")
    p.add_argument("--dt", type=float, default=None, help="sample step [s]")
    p.add_argument("--phi", type=float, default=None,
                   help="single flux point: emit the sampled trajectory instead")

    p = sub.add_parser("decay", help="single RL decay report")
    common(p)
    p.add_argument("-L", "--inductance", type=float, default=None, help="[H]")
    p.add_argument("-R", "--resistance", type=float, default=None, help="[ohm]")
    p.add_argument("-I", "--current", type=float, default=None, help="initial current [A]")

    p = sub.add_parser("feasibility", help="observability bounds for a particle size")
    common(p)
    p.add_argument("--size", type=float, default=None, help="particle size [m]")
    p.add_argument("--density", type=float, default=None, help="[kg/m^3]")
    p.add_argument("--velocity", type=float, default=None, help="[m/s]")
    p.add_argument("--mass", type=float, default=None, help="[kg]")
    p.add_argument("--sweep", default=None, metavar="START:STOP:STEPS",
                   help="size sweep [m], CSV output")

    p = sub.add_parser("meissner", help="flux expulsion and momentum transfer")
    common(p)
    p.add_argument("--field", type=float, default=None, help="applied field [T]")
    p.add_argument("--radius", type=float, default=None, help="superconductor radius [m]")

    p = sub.add_parser("report", help="derived scales of the configured ring")
    common(p)

    return parser


def _merge_values(args: argparse.Namespace) -> dict:
    """preset < config file < --set/flag, later wins; unknown keys rejected."""
    values: dict = {}
    if args.config:
        for key, value in read_config(args.config).items():
            if key not in KNOWN_KEYS:
                raise ConfigError(f"unknown config key {key!r} in {args.config}")
            values[key] = value
    for assignment in args.assignments:
        key, sep, raw = assignment.partition("=")
        key = key.strip()
        if not sep or not key:
            raise UsageError(f"--set expects KEY=VALUE, got {assignment!r}")
        if key not in KNOWN_KEYS:
            raise UsageError(f"unknown --set key {key!r}")
        values[key] = parse_value(raw)

    flag_map = {
        "temperature": "temperature", "seed": "seed", "cr": "c_r",
        "ic0": "ic0", "model": "model", "dphi": "shift",
        "omega_sw": "omega_sw", "rb": "r_b", "duty": "duty", "mode": "mode",
        "theta": "theta", "dt": "dt",
        "inductance": "inductance", "resistance": "resistance", "current": "current",
        "size": "size", "density": "density", "velocity": "velocity", "mass": "mass",
        "field": "field", "radius": "radius", "sweep": "size_sweep",
        "phi": "phi",
    }
    for attr, key in flag_map.items():
        if getattr(args, attr, None) is not None:
            values[key] = getattr(args, attr)
    return values


def parse_config(argv: list[str]) -> RunConfig:
    """Deterministic mapping from tokens to a RunConfig."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    values = _merge_values(args)

    flux = None
    flux_text = getattr(args, "flux", None)
    if flux_text is not None:
        flux = parse_flux_range(flux_text)
    elif {"flux_start", "flux_stop"} <= values.keys():
        steps = int(values.get("flux_steps", 101))
        if steps < 2:
            raise ConfigError(f"flux_steps must be >= 2, got {steps}")
        flux = (float(values["flux_start"]), float(values["flux_stop"]), steps)

    seed = int(values.get("seed", 0))
    temperature = values.get("temperature")
    return RunConfig(
        command=args.command,
        preset=args.preset,
        values=values,
        flux=flux,
        temperature=None if temperature is None else float(temperature),
        seed=seed,
        output=args.output,
        argv_text=shlex.join(argv),
    )


def _ring_from(cfg: RunConfig) -> tuple[RingGeometry, Material]:
    preset = load_preset(cfg.preset)
    if preset.geometry is None or preset.material is None:
        raise ConfigError(f"preset {cfg.preset!r} does not describe a ring")
    geom_fields = {f.name: getattr(preset.geometry, f.name)
                   for f in dataclasses.fields(RingGeometry)}
    mat_fields = {f.name: getattr(preset.material, f.name)
                  for f in dataclasses.fields(Material)}
    touched_wall = False
    for key, attr in GEOMETRY_KEYS.items():
        if key in cfg.values:
            geom_fields[attr] = float(cfg.values[key])
            touched_wall = touched_wall or attr in ("w", "h")
    if touched_wall and "cross_section" not in cfg.values:
        geom_fields["s"] = geom_fields["w"] * geom_fields["h"]
    for key, attr in MATERIAL_KEYS.items():
        if key in cfg.values:
            mat_fields[attr] = float(cfg.values[key])
    # Absolute flux bounds are resolved against the carrier charge in use.
    return RingGeometry(**geom_fields), Material(**mat_fields)


def _flux_grid(cfg: RunConfig, mat: Material) -> np.ndarray:
    flux = cfg.flux
    if flux is None and {"flux_start_wb", "flux_stop_wb"} <= cfg.values.keys():
        phi0 = flux_quantum(mat.q)
        steps = int(cfg.values.get("flux_steps", 101))
        flux = (
            float(cfg.values["flux_start_wb"]) / phi0,
            float(cfg.values["flux_stop_wb"]) / phi0,
            steps,
        )
    if flux is None:
        flux = (0.0, 1.0, 101)
    start, stop, steps = flux
    return np.linspace(start, stop, steps)


def _default_temperature(cfg: RunConfig, mat: Material, near_tc: bool) -> float:
    if cfg.temperature is not None:
        return cfg.temperature
    return 0.95 * mat.T_c if near_tc else 0.0


def _require_output(cfg: RunConfig) -> str:
    if not cfg.output:
        raise UsageError(f"{cfg.command} writes a CSV; use -o/--output PATH")
    return cfg.output


def _meta(cfg: RunConfig) -> str:
    return metadata_line(__version__, f"fluxring {cfg.argv_text}", cfg.seed)


def _emit_csv(cfg: RunConfig, header, columns, summary: str) -> int:
    path = _require_output(cfg)
    write_text_atomic(path, render_csv(header, columns, _meta(cfg)))
    print(f"{path}: {summary}")
    return EXIT_OK


def _report(cfg: RunConfig, title: str, rows: list[tuple[str, str]]) -> int:
    width = max(len(k) for k, _ in rows)
    lines = [title]
    lines += [f"  {k:<{width}}  {v}" for k, v in rows]
    text = "\n".join(lines) + "\n"
    if cfg.output:
        write_text_atomic(cfg.output, text)
        print(f"{cfg.output}: {title}")
    else:
        print(text, end="")
    return EXIT_OK


def _g(x: float) -> str:
    """Report formatting: 4 significant digits."""
    return f"{x:.4g}"


def _run_sweep_current(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    grid = _flux_grid(cfg, mat)
    T = _default_temperature(cfg, mat, near_tc=True)
    curve = little_parks_sweep(T, grid, geom, mat, c_R=cfg.values.get("c_r"))
    peak = int(np.argmax(np.abs(curve.mean_current)))
    return _emit_csv(
        cfg,
        ["phi_norm", "mean_current_A", "mean_v2", "delta_R_ohm"],
        [curve.grid, curve.mean_current, curve.mean_v2, curve.delta_R],
        f"max|I| = {_g(abs(curve.mean_current[peak]))} A at phi = {_g(curve.grid[peak])}"
        f" (T = {_g(T)} K)",
    )


def _run_sweep_resistance(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    grid = _flux_grid(cfg, mat)
    T = _default_temperature(cfg, mat, near_tc=True)
    curve = little_parks_sweep(T, grid, geom, mat, c_R=cfg.values.get("c_r"))
    peak = int(np.argmax(curve.delta_R))
    return _emit_csv(
        cfg,
        ["phi_norm", "mean_current_A", "mean_v2", "delta_R_ohm"],
        [curve.grid, curve.mean_current, curve.mean_v2, curve.delta_R],
        f"max delta_R = {_g(curve.delta_R[peak])} ohm at phi = {_g(curve.grid[peak])}"
        f" (T = {_g(T)} K)",
    )


def _run_sweep_icrit(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    grid = _flux_grid(cfg, mat)
    T = _default_temperature(cfg, mat, near_tc=False)
    model = str(cfg.values.get("model", "symmetric"))
    shift = float(cfg.values.get("shift", 0.0))
    unit = abs(ground_persistent_current(0.5, geom, mat, T))
    ic0 = float(cfg.values.get("ic0", 4.0 * unit))
    plus = np.array([
        critical_current(p, ic0, geom, mat, T, "plus", model, shift) for p in grid
    ])
    minus = np.array([
        critical_current(p, ic0, geom, mat, T, "minus", model, shift) for p in grid
    ])
    peak = int(np.argmax(plus))
    return _emit_csv(
        cfg,
        ["phi_norm", "I_c_plus_A", "I_c_minus_A"],
        [grid, plus, minus],
        f"model = {model}, max I_c+ = {_g(plus[peak])} A at phi = {_g(grid[peak])}",
    )


def _switching_config(cfg: RunConfig) -> SwitchingConfig:
    omega = float(cfg.values.get("omega_sw", 1e6))
    theta = float(cfg.values.get("theta", 1000.0 / omega))
    kwargs = dict(
        omega_sw=omega,
        R_B=float(cfg.values.get("r_b", 0.01)),
        theta=theta,
        duty=float(cfg.values.get("duty", 0.5)),
        mode=str(cfg.values.get("mode", "deterministic")),
        seed=cfg.seed,
    )
    if "dt" in cfg.values:
        kwargs["dt"] = float(cfg.values["dt"])
    if "delta_f" in cfg.values:
        kwargs["delta_f"] = float(cfg.values["delta_f"])
    if "attempt_rate" in cfg.values:
        kwargs["attempt_rate"] = float(cfg.values["attempt_rate"])
    return SwitchingConfig(**kwargs)


def _run_rectify(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    T = _default_temperature(cfg, mat, near_tc=False)
    switching = _switching_config(cfg)
    if "phi" in cfg.values:
        run = simulate_switching(switching, float(cfg.values["phi"]), T, geom, mat)
        return _emit_csv(
            cfg,
            ["t_s", "I_A", "V_B_V"],
            [run.times, run.current, run.segment_voltage],
            f"phi = {_g(float(cfg.values['phi']))}: V_dc = {_g(run.V_dc)} V,"
            f" balance residual = {_g(run.balance_residual)}",
        )
    grid = _flux_grid(cfg, mat)
    curve = vdc_sweep(switching, grid, T, geom, mat)
    peak = int(np.argmax(np.abs(curve.V_dc)))
    return _emit_csv(
        cfg,
        ["phi_norm", "V_dc_V", "I_bar_A", "balance_residual"],
        [curve.grid, curve.V_dc, curve.I_bar, curve.balance_residual],
        f"max|V_dc| = {_g(abs(curve.V_dc[peak]))} V at phi = {_g(curve.grid[peak])}"
        f" (mode = {switching.mode}, omega_sw = {_g(switching.omega_sw)} 1/s)",
    )


def _run_decay(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    T = _default_temperature(cfg, mat, near_tc=False)
    if "inductance" in cfg.values:
        l_tot = float(cfg.values["inductance"])
    else:
        l_tot = total_inductance(geom, mat, T)
    r_b = float(cfg.values.get("resistance", 0.01))
    tau = relaxation_time(l_tot, r_b)
    rows = [
        ("L_tot [H]", _g(l_tot)),
        ("R_B [ohm]", _g(r_b)),
        ("tau_RL [s]", _g(tau)),
    ]
    if "current" in cfg.values:
        i_p = float(cfg.values["current"])
        rows += [
            ("I_p [A]", _g(i_p)),
            ("integral V_B dt [Wb]", _g(l_tot * i_p)),
            ("dissipated energy [J]", _g(0.5 * l_tot * i_p**2)),
        ]
    return _report(cfg, "RL decay", rows)


def _particle_from(cfg: RunConfig) -> ParticleSpec:
    preset = load_preset(cfg.preset)
    base = preset.particle
    size = cfg.values.get("size", base.a if base else None)
    if size is None:
        raise UsageError("feasibility needs --size (or a particle preset)")
    kwargs = dict(a=float(size))
    density = cfg.values.get("density", base.g if base else None)
    if density is not None:
        kwargs["g"] = float(density)
    velocity = cfg.values.get("velocity", base.v if base else None)
    if velocity is not None:
        kwargs["v"] = float(velocity)
    if "mass" in cfg.values:
        kwargs["m"] = float(cfg.values["mass"])
    elif base is not None and "size" not in cfg.values and base.m is not None:
        kwargs["m"] = base.m
    return ParticleSpec(**kwargs)


def _run_feasibility(cfg: RunConfig) -> int:
    sweep = cfg.values.get("size_sweep")
    if sweep:
        start, stop, steps = parse_flux_range(str(sweep))
        sizes = np.geomspace(start, stop, steps) if start > 0 else np.linspace(start, stop, steps)
        density = float(cfg.values.get("density", 1e3))
        t_bound = np.array([
            interference_time_bound(ParticleSpec(a=a, g=density)) for a in sizes
        ])
        T_bound = np.array([
            bohr_temperature_bound(ParticleSpec(a=a, g=density)) for a in sizes
        ])
        return _emit_csv(
            cfg,
            ["a_m", "t_bound_s", "T_bound_K"],
            [sizes, t_bound, T_bound],
            f"{steps} sizes from {_g(start)} to {_g(stop)} m",
        )
    particle = _particle_from(cfg)
    t_bound = interference_time_bound(particle)
    T_bound = bohr_temperature_bound(particle)
    rows = [
        ("size a [m]", _g(particle.a)),
        ("density g [kg/m^3]", _g(particle.g)),
        ("mass m [kg]", _g(particle.mass)),
        ("t_bound [s]", _g(t_bound)),
        ("t_bound [yr]", _g(t_bound / 31536000.0)),
        ("T_bound [K]", _g(T_bound)),
    ]
    if particle.v is not None:
        rows.append(
            ("lambda_deB [m]", _g(de_broglie_wavelength(particle.mass, particle.v)))
        )
    return _report(cfg, "interference / spectrum observability bounds", rows)


def _run_meissner(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    T = _default_temperature(cfg, mat, near_tc=False)
    b_field = float(cfg.values.get("field", 0.1))
    radius = float(cfg.values.get("radius", geom.r))
    phi0 = flux_quantum(mat.q)
    phi_norm = b_field * math.pi * radius**2 / phi0
    transfer = angular_momentum_transfer(0, phi_norm)
    enclosed = fluxoid_balance(
        phi_norm, 0, geom, mat, T, FluxoidRegime.WIDE_WALL_NO_HOLE, check_regime=False
    )
    rows = [
        ("B [T]", _g(b_field)),
        ("radius [m]", _g(radius)),
        ("applied flux [Wb]", _g(b_field * math.pi * radius**2)),
        ("applied phi [Phi_0]", _g(phi_norm)),
        ("enclosed flux [Wb]", _g(enclosed)),
        ("per-pair transfer [J s]", _g(abs(transfer))),
        ("per-pair transfer [hbar]", _g(abs(transfer) / HBAR)),
    ]
    return _report(cfg, "flux expulsion (no-hole wall, n = 0)", rows)


def _run_report(cfg: RunConfig) -> int:
    geom, mat = _ring_from(cfg)
    T = _default_temperature(cfg, mat, near_tc=False)
    phi0 = flux_quantum(mat.q)
    i_quarter = ground_persistent_current(0.25, geom, mat, T)
    gap = state_energy(1, 0.0, geom, mat, T)
    rows = [
        ("radius r [m]", _g(geom.r)),
        ("cross-section s [m^2]", _g(geom.s)),
        ("T [K]", _g(T)),
        ("T_c [K]", _g(mat.T_c)),
        ("Phi_0 [Wb]", _g(phi0)),
        ("pair density n_s [1/m^3]", _g(pair_density(mat, T))),
        ("lambda_L [m]", _g(london_depth(mat, T))),
        ("L_geo [H]", _g(geom.L_geo)),
        ("L_kinetic [H]", _g(kinetic_inductance(geom, mat, T))),
        ("L_total [H]", _g(total_inductance(geom, mat, T))),
        ("pairs N_s", _g(geom.volume * pair_density(mat, T))),
        ("I_p(phi=1/4) [A]", _g(i_quarter)),
        ("level gap at phi=0 [J]", _g(gap)),
        ("level gap / k_B [K]", _g(gap / K_B)),
    ]
    return _report(cfg, f"ring preset {cfg.preset!r}", rows)


_RUNNERS = {
    "sweep-current": _run_sweep_current,
    "sweep-resistance": _run_sweep_resistance,
    "sweep-icrit": _run_sweep_icrit,
    "rectify": _run_rectify,
    "decay": _run_decay,
    "feasibility": _run_feasibility,
    "meissner": _run_meissner,
    "report": _run_report,
}


def run(cfg: RunConfig) -> int:
    """Execute a parsed RunConfig; returns the process exit code."""
    return _RUNNERS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except UsageError as exc:
        print(f"fluxring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FluxringError as exc:
        print(f"fluxring: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"fluxring: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
