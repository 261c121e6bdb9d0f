"""Command-line front end: config parsing, the physics pipeline, CSV/JSON
artifacts with run manifests, and parameter sweeps.

Subcommands: spectrum, dynamics, density, entanglement, thermal, verify,
sweep.  Exit codes: 0 success, 1 usage error, 2 physics-contract violation
(including a failed verify), 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .density import (EntangledStateSpec, ReducedDensityMatrix, ThermalBathSpec,
                      reduced_density_closed, thermal_trace_oracle)
from .dynamics import amplitude_matrix, amplitudes, decay_rate_fit, survival_amplitude, survival_series
from .entanglement import family_concurrence, measures
from .errors import PhysicsError, ResourceCapError
from .model import ModelParams, build_coupling_matrix, build_mode_ladder, natural_from_si
from .reporting import write_csv, write_manifest
from .spectral import diagonalize
from .thermal import bose_einstein, occupation_series

VERIFY_TOLERANCE = 1e-12

# Fixed sweep axis order; rows follow the cartesian product in this order.
SWEEP_AXES = ("xi", "phi", "temperature", "radius", "g")

_FLOAT_FIELDS = {"omega_bar", "g", "radius", "xi", "phi", "beta", "temperature",
                 "n0_init", "t_max"}
_INT_FIELDS = {"n_modes", "samples", "n_modes_oracle", "n_max", "jobs"}
_BOOL_FIELDS = {"si", "negative_control"}
_LIST_FIELDS = {"beta_list", "t_list", "fit_window", "xi_grid", "phi_grid",
                "temperature_grid", "radius_grid", "g_grid"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """All run inputs.  Values are natural units unless si is set, in which
    case omega_bar is rad/s, radius is meters, and temperature is kelvin."""

    omega_bar: float = 1.0
    g: float = 0.01
    radius: float = 1.0
    n_modes: int = 64
    xi: float = 0.5
    phi: float = 0.0
    beta: float = 1.0
    temperature: float | None = None
    n0_init: float = 1.0
    t_max: float = 50.0
    samples: int = 2000
    fit_window: tuple[float, float] | None = None
    n_modes_oracle: int = 1
    n_max: int = 3
    beta_list: tuple[float, ...] = (0.2, 1.0, 5.0)
    t_list: tuple[float, ...] = (0.0, 0.7, 3.1)
    negative_control: bool = False
    si: bool = False
    out: str = "runs"
    jobs: int = 1
    xi_grid: tuple[float, ...] | None = None
    phi_grid: tuple[float, ...] | None = None
    temperature_grid: tuple[float, ...] | None = None
    radius_grid: tuple[float, ...] | None = None
    g_grid: tuple[float, ...] | None = None


@dataclass(frozen=True)
class NaturalRun:
    """A config resolved to natural units, ready for the physics modules."""

    params: ModelParams
    state: EntangledStateSpec
    beta: float
    n0_init: float
    t_grid: np.ndarray
    si_inputs: dict | None


def resolve_natural(config: RunConfig) -> NaturalRun:
    si_inputs = None
    if config.si:
        converted = natural_from_si(config.omega_bar, config.radius, config.temperature)
        si_inputs = {"omega_bar_si": config.omega_bar, "radius_si": config.radius,
                     "temperature_si": config.temperature}
        omega_bar, radius = converted.omega, converted.radius
        g = config.g / config.omega_bar
        beta = converted.beta if converted.beta is not None else config.beta
    else:
        omega_bar, g, radius = config.omega_bar, config.g, config.radius
        beta = 1.0 / config.temperature if config.temperature is not None else config.beta
    params = ModelParams(omega_bar=omega_bar, g=g, radius=radius, n_modes=config.n_modes)
    state = EntangledStateSpec(xi=config.xi, phi=config.phi)
    t_grid = np.linspace(0.0, config.t_max, config.samples)
    return NaturalRun(params=params, state=state, beta=beta,
                      n0_init=config.n0_init, t_grid=t_grid, si_inputs=si_inputs)


def parse_config_file(path: Path) -> dict:
    """Flat `key = value` file; `#` starts a comment, lists are comma separated."""
    values: dict = {}
    valid = {f.name for f in dataclasses.fields(RunConfig)}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        if key not in valid:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _coerce(key, value.strip(), where=f"{path}:{lineno}")
    return values


def _coerce(key: str, text: str, where: str):
    try:
        if key in _FLOAT_FIELDS:
            return float(text)
        if key in _INT_FIELDS:
            return int(text)
        if key in _BOOL_FIELDS:
            if text.lower() in ("true", "1", "yes"):
                return True
            if text.lower() in ("false", "0", "no"):
                return False
            raise ValueError(f"not a boolean: {text!r}")
        if key in _LIST_FIELDS:
            return tuple(float(v) for v in text.split(",") if v.strip())
        return text
    except ValueError as exc:
        raise UsageError(f"{where}: bad value for {key}: {exc}") from None


def _metadata(run: NaturalRun, extra: dict | None = None) -> dict:
    md = {"omega_bar[natural-frequency]": run.params.omega_bar,
          "g[natural-frequency]": run.params.g,
          "radius[natural-length]": run.params.radius,
          "n_modes": run.params.n_modes,
          "beta[1/natural-frequency]": run.beta}
    if run.si_inputs is not None:
        md.update({"omega_bar_si[rad/s]": run.si_inputs["omega_bar_si"],
                   "radius_si[m]": run.si_inputs["radius_si"],
                   "temperature_si[K]": run.si_inputs["temperature_si"]})
    md.update(extra or {})
    return md


def _pipeline(run: NaturalRun):
    """Shared spectral stage plus the residuals the manifest reports."""
    ladder = build_mode_ladder(run.params)
    matrix = build_coupling_matrix(run.params, ladder)
    spectrum = diagonalize(matrix)
    eig_residual = spectrum.reconstruction_residual(matrix)
    # Unitarity spot check on a coarse subgrid keeps the cost flat in n_modes.
    probe = run.t_grid[:: max(1, run.t_grid.size // 16)]
    amp = amplitude_matrix(spectrum, probe)
    unitarity = float(np.max(np.abs(np.sum(np.abs(amp) ** 2, axis=0) - 1.0)))
    return ladder, spectrum, {
        "n_modes": run.params.n_modes,
        "mode_span_over_omega_bar": ladder.frequencies[-1] / run.params.omega_bar,
        "eigensolver_residual": eig_residual,
        "unitarity_residual": unitarity,
    }


def _finish(out_dir: Path, run: NaturalRun, config: RunConfig, convergence: dict,
            artifacts: list[Path], started: float, extra: dict | None = None) -> None:
    payload = {"tool": "dressedcavity", "version": __version__,
               "config": dataclasses.asdict(config),
               "natural_units": {"omega_bar": run.params.omega_bar, "g": run.params.g,
                                 "radius": run.params.radius, "beta": run.beta},
               "si_inputs": run.si_inputs,
               "convergence": convergence,
               "wall_clock_seconds": time.monotonic() - started}
    payload.update(extra or {})
    write_manifest(out_dir, payload, artifacts)


def cmd_spectrum(config: RunConfig) -> int:
    started = time.monotonic()
    run = resolve_natural(config)
    out_dir = Path(config.out)
    ladder, spectrum, convergence = _pipeline(run)
    rows = [(s, spectrum.omega_dressed[s], spectrum.components[0, s])
            for s in range(spectrum.size)]
    csv = write_csv(out_dir / "spectrum.csv",
                    ["s[index]", "Omega_s[natural-frequency]", "t_0_s[dimensionless]"],
                    rows, metadata=_metadata(run))
    _finish(out_dir, run, config, convergence, [csv], started)
    return 0


def cmd_dynamics(config: RunConfig) -> int:
    started = time.monotonic()
    run = resolve_natural(config)
    out_dir = Path(config.out)
    ladder, spectrum, convergence = _pipeline(run)
    series = survival_series(spectrum, run.t_grid)
    rows = zip(series.t, series.survival, series.phase)
    csv = write_csv(out_dir / "dynamics.csv",
                    ["t[natural-time]", "survival[probability]", "phase[rad]"],
                    rows, metadata=_metadata(run))
    extra = {"min_survival": float(np.min(series.survival))}
    _finish(out_dir, run, config, convergence, [csv], started, extra=extra)
    return 0


def cmd_density(config: RunConfig) -> int:
    started = time.monotonic()
    run = resolve_natural(config)
    out_dir = Path(config.out)
    ladder, spectrum, convergence = _pipeline(run)
    f00 = survival_amplitude(spectrum, run.t_grid)
    rows = []
    for t, f in zip(run.t_grid, f00):
        rho = reduced_density_closed(run.state, f, f).matrix
        rows.append((t, rho[0, 0].real, rho[1, 1].real, rho[2, 2].real,
                     rho[2, 1].real, rho[2, 1].imag))
    csv = write_csv(out_dir / "density.csv",
                    ["t[natural-time]", "rho_00_00[probability]", "rho_01_01[probability]",
                     "rho_10_10[probability]", "re_rho_10_01[dimensionless]",
                     "im_rho_10_01[dimensionless]"],
                    rows, metadata=_metadata(run, {"xi": run.state.xi, "phi": run.state.phi}))
    _finish(out_dir, run, config, convergence, [csv], started)
    return 0


def cmd_entanglement(config: RunConfig) -> int:
    started = time.monotonic()
    run = resolve_natural(config)
    out_dir = Path(config.out)
    ladder, spectrum, convergence = _pipeline(run)
    f00 = survival_amplitude(spectrum, run.t_grid)
    rows = []
    for t, f in zip(run.t_grid, f00):
        m = measures(reduced_density_closed(run.state, f, f))
        rows.append((t, float(abs(f) ** 2), m.concurrence, m.eof, m.negativity))
    c0 = family_concurrence(run.state.xi, 1.0)
    csv = write_csv(out_dir / "entanglement.csv",
                    ["t[natural-time]", "survival[probability]", "concurrence[dimensionless]",
                     "eof[ebits]", "negativity[dimensionless]"],
                    rows, metadata=_metadata(run, {"xi": run.state.xi, "phi": run.state.phi,
                                                   "c0": c0}))
    _finish(out_dir, run, config, convergence, [csv], started)
    return 0


def cmd_thermal(config: RunConfig) -> int:
    started = time.monotonic()
    run = resolve_natural(config)
    out_dir = Path(config.out)
    ladder, spectrum, convergence = _pipeline(run)
    series = occupation_series(spectrum, ladder, run.beta, run.n0_init, run.t_grid)
    rows = zip(series.t, series.occupation)
    csv = write_csv(out_dir / "thermal.csv",
                    ["t[natural-time]", "occupation[quanta]"],
                    rows, metadata=_metadata(run, {"n0_init": run.n0_init,
                                                   "equilibrium_bose_einstein":
                                                   bose_einstein(run.params.omega_bar, run.beta)}))
    _finish(out_dir, run, config, convergence, [csv], started)
    return 0


def cmd_verify(config: RunConfig) -> int:
    """Brute-force trace vs closed form over the configured beta list.

    Each (beta, t) cell reports the max elementwise deviation from the
    closed form and from the first beta's oracle output; all cells must pass
    at 1e-12 for exit code 0.
    """
    started = time.monotonic()
    run = resolve_natural(config)
    out_dir = Path(config.out)
    oracle_params = ModelParams(omega_bar=run.params.omega_bar, g=run.params.g,
                                radius=run.params.radius, n_modes=config.n_modes_oracle)
    ladder = build_mode_ladder(oracle_params)
    matrix = build_coupling_matrix(oracle_params, ladder)
    spectrum = diagonalize(matrix)
    scheme = "per_level_partition" if config.negative_control else "normalized"

    rows = []
    all_pass = True
    for t in config.t_list:
        f00 = amplitudes(spectrum, t).f[0]
        closed = reduced_density_closed(run.state, f00, f00).matrix
        reference: np.ndarray | None = None
        for beta in config.beta_list:
            bath = ThermalBathSpec(beta=beta, n_max=config.n_max,
                                   n_modes_oracle=config.n_modes_oracle)
            oracle = thermal_trace_oracle(run.state, spectrum, bath, t,
                                          weight_scheme=scheme).matrix
            if reference is None:
                reference = oracle
            dev_closed = float(np.max(np.abs(oracle - closed)))
            dev_cross = float(np.max(np.abs(oracle - reference)))
            ok = dev_closed <= VERIFY_TOLERANCE and dev_cross <= VERIFY_TOLERANCE
            all_pass = all_pass and ok
            rows.append((beta, t, dev_closed, dev_cross, "PASS" if ok else "FAIL"))

    csv = write_csv(out_dir / "verify.csv",
                    ["beta[1/natural-frequency]", "t[natural-time]",
                     "max_dev_vs_closed[dimensionless]", "max_dev_vs_first_beta[dimensionless]",
                     "status"],
                    rows,
                    metadata={"n_modes_oracle": config.n_modes_oracle, "n_max": config.n_max,
                              "weight_scheme": scheme, "tolerance": VERIFY_TOLERANCE,
                              "xi": run.state.xi, "phi": run.state.phi})
    convergence = {"n_modes": config.n_modes_oracle,
                   "eigensolver_residual": spectrum.reconstruction_residual(matrix)}
    _finish(out_dir, run, config, convergence, [csv], started,
            extra={"verify_passed": all_pass})
    for row in rows:
        print(f"beta={row[0]:g} t={row[1]:g} dev_closed={row[2]:.3e} "
              f"dev_cross={row[3]:.3e} {row[4]}")
    print("VERIFY", "PASS" if all_pass else "FAIL")
    return 0 if all_pass else 2


def _sweep_point(task) -> dict:
    index, config = task
    row = {"index": index,
           **{axis: getattr(config, axis) for axis in SWEEP_AXES}}
    try:
        run = resolve_natural(config)
        out_dir = Path(config.out)
        started = time.monotonic()
        ladder, spectrum, convergence = _pipeline(run)
        series = survival_series(spectrum, run.t_grid)
        occ = occupation_series(spectrum, ladder, run.beta, run.n0_init, run.t_grid)
        long_time = occ.occupation[occ.t >= 0.5 * config.t_max]
        window = config.fit_window or (0.05 * config.t_max, 0.8 * config.t_max)
        gamma = r_squared = None
        try:
            fit = decay_rate_fit(series, window)
            gamma, r_squared = fit.rate, fit.r_squared
        except PhysicsError:
            pass  # recorded as empty columns; not a point failure
        rows = zip(series.t, series.survival, series.phase)
        csv = write_csv(out_dir / "dynamics.csv",
                        ["t[natural-time]", "survival[probability]", "phase[rad]"],
                        rows, metadata=_metadata(run))
        _finish(out_dir, run, config, convergence, [csv], started)
        row.update({"min_survival": float(np.min(series.survival)),
                    "gamma": gamma, "r_squared": r_squared,
                    "c0": family_concurrence(config.xi, 1.0),
                    "occupation_long_time_mean": float(np.mean(long_time)),
                    "status": "ok"})
    except (PhysicsError, ResourceCapError) as exc:
        row.update({"min_survival": None, "gamma": None, "r_squared": None,
                    "c0": None, "occupation_long_time_mean": None,
                    "status": f"error: {exc}"})
    return row


def cmd_sweep(config: RunConfig) -> int:
    started = time.monotonic()
    out_dir = Path(config.out)
    grids = {axis: getattr(config, f"{axis}_grid") for axis in SWEEP_AXES}
    active = [(axis, values) for axis, values in grids.items() if values]
    if not active:
        raise UsageError("sweep needs at least one of "
                         + ", ".join(f"{axis}_grid" for axis in SWEEP_AXES))
    tasks = []
    for index, combo in enumerate(itertools.product(*(values for _, values in active))):
        point = dataclasses.replace(config, out=str(out_dir / "points" / f"point_{index:04d}"))
        for (axis, _), value in zip(active, combo):
            point = dataclasses.replace(point, **{axis: value})
        for axis in SWEEP_AXES:
            point = dataclasses.replace(point, **{f"{axis}_grid": None})
        tasks.append((index, point))

    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_sweep_point, tasks))
    else:
        results = [_sweep_point(task) for task in tasks]
    results.sort(key=lambda row: row["index"])

    columns = ["index", "xi[dimensionless]", "phi[rad]", "temperature[config-units]",
               "radius[config-units]", "g[config-units]", "min_survival[probability]",
               "gamma[natural-frequency]", "r_squared[dimensionless]", "c0[dimensionless]",
               "occupation_long_time_mean[quanta]", "status"]
    rows = [(r["index"], r["xi"], r["phi"], r["temperature"], r["radius"], r["g"],
             r["min_survival"], r["gamma"], r["r_squared"], r["c0"],
             r["occupation_long_time_mean"], r["status"]) for r in results]
    csv = write_csv(out_dir / "sweep.csv", columns, rows,
                    metadata={"axes": ",".join(axis for axis, _ in active),
                              "points": len(tasks), "jobs": config.jobs})
    failures = sum(1 for r in results if r["status"] != "ok")
    payload = {"tool": "dressedcavity", "version": __version__,
               "config": dataclasses.asdict(config),
               "points": len(tasks), "failures": failures,
               "wall_clock_seconds": time.monotonic() - started}
    write_manifest(out_dir, payload, [csv])
    print(f"sweep: {len(tasks)} points, {failures} failures -> {csv}")
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "dynamics": cmd_dynamics,
    "density": cmd_density,
    "entanglement": cmd_entanglement,
    "thermal": cmd_thermal,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="key = value config file")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--jobs", type=int, help="parallel workers for sweep")
    parser.add_argument("--si", action="store_true", default=None,
                        help="interpret omega-bar/radius/temperature as rad/s, m, K")
    for flag, kind in (("--omega-bar", float), ("--g", float), ("--radius", float),
                       ("--n-modes", int), ("--xi", float), ("--phi", float),
                       ("--temperature", float), ("--beta", float), ("--n0-init", float),
                       ("--t-max", float), ("--samples", int), ("--n-modes-oracle", int),
                       ("--n-max", int)):
        parser.add_argument(flag, type=kind)
    for flag in ("--beta-list", "--t-list", "--fit-window", "--xi-grid", "--phi-grid",
                 "--temperature-grid", "--radius-grid", "--g-grid"):
        parser.add_argument(flag, type=str)
    parser.add_argument("--negative-control", action="store_true", default=None,
                        help="verify with the deliberately broken bath normalization")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dressedcavity",
                     description="Dressed-atom bipartite entanglement at finite temperature")
    parser.add_argument("--version", action="version", version=f"dressedcavity {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        _add_common_flags(sub)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config is not None:
        if not args.config.exists():
            raise UsageError(f"config file not found: {args.config}")
        values.update(parse_config_file(args.config))
    for key in (f.name for f in dataclasses.fields(RunConfig)):
        flag_value = getattr(args, key, None)
        if flag_value is None:
            continue
        if key in _LIST_FIELDS and isinstance(flag_value, str):
            flag_value = _coerce(key, flag_value, where=f"--{key.replace('_', '-')}")
        values[key] = flag_value
    config = RunConfig(**values)
    if config.fit_window is not None and len(config.fit_window) != 2:
        raise UsageError("fit_window needs exactly two values: lo,hi")
    return config


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = config_from_args(args)
        return COMMANDS[args.command](config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except PhysicsError as exc:
        print(f"physics contract violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
