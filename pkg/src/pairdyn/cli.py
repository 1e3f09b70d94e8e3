"""Command-line front end for the bundled experiments.

Subcommands run one experiment family each (``free``, ``thermal``,
``mzi``, ``bloch``), ``verify`` executes the numbered cross-check suite,
and ``all`` reproduces every bundled data set in per-run subdirectories.
Every observable series is written as a CSV table with a ``# key=value``
provenance header; numbers carry 17 significant digits so reruns with
the same configuration are byte-identical.

Exit codes: 0 success, 1 failed verification checks, 2 invalid
configuration (the message names the offending key), 3 numerical
failure or unwritable output path.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .experiments import (PRESETS, mzi_snapshots, run_bloch,
                          run_free_spread, run_mzi, run_thermalization)
from .propagator import RecurrenceNotFoundError
from .verification import run_checks

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_NUMERICAL = 3

OUTDIR_ENV = "PAIRDYN_OUTDIR"
DEFAULT_OUTDIR = "artifacts"

EXPERIMENTS = ("free", "thermal", "mzi", "bloch", "verify", "all")


class ConfigError(ValueError):
    """Invalid run configuration; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclasses.dataclass
class RunConfig:
    """One experiment invocation: physical parameters, grids, output.

    ``sigma``/``big_sigma`` are the widths of the difference and sum
    coordinates; ``None`` keeps each experiment's own default.  ``delta``
    selects a single detector resolution (cell width) instead of writing
    all bundled resolutions; ``gamma`` overrides the preset interaction.
    """

    experiment: str = "all"
    d: int = 40
    preset: str = "entangled"
    gamma: float = None
    delta: int = None
    eta: float = 0.4
    sigma: float = None
    big_sigma: float = None
    temperatures: tuple = (0.5, 1.0, 2.0, 4.0)
    n_phi: int = 64
    n_t: int = 256
    n_periods: float = 4.0
    t_max: float = None
    outdir: str = None
    plots: bool = False

    def validate(self) -> "RunConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigError("experiment",
                              f"unknown experiment {self.experiment!r}; "
                              f"choose from {', '.join(EXPERIMENTS)}")
        if self.d < 4:
            raise ConfigError("d", "lattice needs at least 4 sites")
        if self.experiment in ("mzi", "bloch", "all") and self.d % 4:
            raise ConfigError("d", "interferometer and tilted-ring runs "
                                   "need d divisible by 4")
        if self.preset not in PRESETS:
            raise ConfigError("preset",
                              f"unknown preset {self.preset!r}; choose "
                              f"from {', '.join(PRESETS)}")
        if self.delta is not None and self.delta not in (1, 4, self.d // 4):
            raise ConfigError("delta", f"supported cell widths for d="
                                       f"{self.d} are 1, 4 and {self.d // 4}")
        if self.eta == 0.0:
            raise ConfigError("eta", "tilt strength must be nonzero")
        for key in ("sigma", "big_sigma"):
            value = getattr(self, key)
            if value is not None and not value > 0.0:
                raise ConfigError(key, "width must be positive")
        if any(not t > 0.0 for t in self.temperatures):
            raise ConfigError("temperatures", "temperatures must be positive")
        if self.n_phi < 8:
            raise ConfigError("n_phi", "need at least 8 phase samples")
        if self.n_t < 8:
            raise ConfigError("n_t", "need at least 8 time samples")
        if not self.n_periods > 0.0:
            raise ConfigError("n_periods", "observation window must be "
                                           "positive")
        if self.t_max is not None and not self.t_max > 0.0:
            raise ConfigError("t_max", "scan window must be positive")
        return self

    def resolved_outdir(self) -> Path:
        if self.outdir:
            return Path(self.outdir)
        return Path(os.environ.get(OUTDIR_ENV, DEFAULT_OUTDIR))


# ---------------------------------------------------------------------------
# configuration sources


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_optional_float(text: str):
    lowered = text.strip().lower()
    if lowered in ("", "none"):
        return None
    return float(text)


def _parse_optional_int(text: str):
    lowered = text.strip().lower()
    if lowered in ("", "none"):
        return None
    return int(text)


def _parse_temperatures(text: str) -> tuple:
    return tuple(float(part) for part in text.split(",") if part.strip())


_COERCERS = {
    "experiment": str,
    "d": int,
    "preset": str,
    "gamma": _parse_optional_float,
    "delta": _parse_optional_int,
    "eta": float,
    "sigma": _parse_optional_float,
    "big_sigma": _parse_optional_float,
    "temperatures": _parse_temperatures,
    "n_phi": int,
    "n_t": int,
    "n_periods": float,
    "t_max": _parse_optional_float,
    "outdir": str,
    "plots": _parse_bool,
}


def load_config_file(path) -> dict:
    """Read a flat ``key = value`` document into typed config entries."""
    entries = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(line.split()[0],
                              f"line {lineno} is not a key=value pair")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _COERCERS:
            raise ConfigError(key, f"unknown configuration key (line "
                                   f"{lineno})")
        try:
            entries[key] = _COERCERS[key](value.strip())
        except ValueError as exc:
            raise ConfigError(key, f"bad value on line {lineno}: {exc}")
    return entries


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, a config file, and command-line overrides."""
    merged = {"experiment": args.experiment}
    if getattr(args, "config", None):
        merged.update(load_config_file(args.config))
    merged["experiment"] = args.experiment
    for key in _COERCERS:
        value = getattr(args, key, None)
        if value is not None and key != "experiment":
            merged[key] = value
    return RunConfig(**merged).validate()


# ---------------------------------------------------------------------------
# CSV artifacts


def format_number(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _comment_value(value) -> str:
    if isinstance(value, (tuple, list)):
        return ";".join(format_number(v) for v in value)
    return format_number(value)


def write_csv(path: Path, comments: dict, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as handle:
        for key in comments:
            handle.write(f"# {key}={_comment_value(comments[key])}\n")
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(format_number(cell) for cell in row))
            handle.write("\n")
    return path


def write_grid_csv(path: Path, comments: dict, grid: np.ndarray) -> Path:
    grid = np.asarray(grid)
    header = [f"c{j + 1}" for j in range(grid.shape[1])]
    return write_csv(path, comments, header, grid)


def read_csv(path):
    """Round-trip reader for the artifact format.

    Returns (comments dict, header list, float matrix); used by the
    verification tests, and handy for downstream analysis.
    """
    comments, header, rows = {}, None, []
    with open(path) as handle:
        for line in handle:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, value = line[2:].partition("=")
                comments[key] = value
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(cell) for cell in line.split(",")])
    return comments, header, np.array(rows)


def _base_comments(result) -> dict:
    comments = {"artifact": f"pairdyn {__version__}", "kind": result.kind}
    for key in sorted(result.parameters):
        comments[key] = result.parameters[key]
    return comments


def _series_csv(result, outdir: Path, filename: str, columns,
                extra_comments=None) -> Path:
    comments = _base_comments(result)
    comments.update(extra_comments or {})
    header = [result.abscissa_name] + list(columns)
    rows = zip(result.abscissa,
               *(result.observables[name] for name in columns))
    return write_csv(outdir / filename, comments, header, rows)


def _frame_csvs(result, outdir: Path) -> list:
    written = []
    for label, grid in result.frames:
        if grid is None:
            continue
        comments = _base_comments(result)
        comments["frame"] = label
        comments["rows"] = ("t" if label.endswith("movie") else "x1")
        comments["columns"] = ("x" if label.endswith("movie") else "x2")
        name = label.replace("=", "_") + ".csv"
        written.append(write_grid_csv(outdir / name, comments, grid))
    return written


# ---------------------------------------------------------------------------
# plotting


def emit_plot(result, path) -> Path:
    """Render one experiment as a static image.

    Observable series become line plots over the abscissa; density
    frames become heatmap panels below them.  Refuses results that
    carry neither curves nor frames.
    """
    curves = {name: np.asarray(series)
              for name, series in result.observables.items()
              if np.asarray(series).size}
    frames = [(label, grid) for label, grid in result.frames
              if grid is not None and np.asarray(grid).size]
    if not curves and not frames:
        raise ValueError("refusing to plot a result with no data")

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n_rows = (1 if curves else 0) + (1 if frames else 0)
    width = max(6.4, 3.2 * max(1, len(frames)))
    figure = plt.figure(figsize=(width, 4.0 * n_rows))
    slot = 1
    if curves:
        axis = figure.add_subplot(n_rows, 1, slot)
        slot += 1
        for name, series in curves.items():
            axis.plot(result.abscissa, series, label=name)
        axis.set_xlabel(result.abscissa_name)
        axis.legend(fontsize="small")
        axis.set_title(result.kind)
    if frames:
        for i, (label, grid) in enumerate(frames):
            axis = figure.add_subplot(n_rows, len(frames),
                                      (slot - 1) * len(frames) + i + 1)
            axis.imshow(np.asarray(grid), origin="lower", aspect="auto",
                        cmap="viridis")
            axis.set_title(label, fontsize="small")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    figure.savefig(path, dpi=110)
    plt.close(figure)
    return path


# ---------------------------------------------------------------------------
# subcommands


def _report(paths) -> None:
    for path in paths:
        print(f"wrote {path}")


def cmd_free(config: RunConfig, outdir: Path) -> int:
    result = run_free_spread(
        sigma=config.sigma if config.sigma is not None else 2.0,
        big_sigma=config.big_sigma if config.big_sigma is not None else 0.01,
        d=config.d)
    written = [_series_csv(result, outdir, "spread_vs_time.csv",
                           ("com_spread", "relative_spread"))]
    written += _frame_csvs(result, outdir)
    if config.plots:
        written.append(emit_plot(result, outdir / "free_spread.png"))
    _report(written)
    return EXIT_OK


def cmd_thermal(config: RunConfig, outdir: Path) -> int:
    from .continuum import GaussianPairParams
    params = GaussianPairParams(
        sigma=config.sigma if config.sigma is not None else 2.0,
        big_sigma=config.big_sigma if config.big_sigma is not None else 0.25)
    frame_grid = np.linspace(-12.0, 12.0, 121) if config.plots else None
    result = run_thermalization(params=params,
                                temperatures=config.temperatures,
                                frame_grid=frame_grid)
    columns = list(result.observables)
    written = [_series_csv(result, outdir, "thermal_spread.csv", columns)]
    written += _frame_csvs(result, outdir)
    if config.plots:
        written.append(emit_plot(result, outdir / "thermal_spread.png"))
    _report(written)
    return EXIT_OK


def _delta_files(config: RunConfig, stem: str) -> dict:
    names = {"wide": f"{stem}_delta{config.d // 4}.csv",
             "sub": f"{stem}_delta4.csv",
             "point": f"{stem}_delta1.csv"}
    if config.delta is not None:
        keep = {config.d // 4: "wide", 4: "sub", 1: "point"}[config.delta]
        names = {keep: names[keep]}
    return names


def cmd_mzi(config: RunConfig, outdir: Path) -> int:
    result = run_mzi(config.preset, d=config.d, n_phi=config.n_phi,
                     t_max=config.t_max, gamma=config.gamma)
    series_for = {"wide": "d3_wide", "sub": "d3_sub", "point": "d3_point"}
    written = []
    for kind, filename in _delta_files(config, "d3_vs_phi").items():
        name = series_for[kind]
        extra = {"T": result.metadata["T"],
                 "gamma": result.metadata["gamma"],
                 "cycles": result.metadata[f"cycles_{name}"]}
        written.append(_series_csv(result, outdir, filename, (name,), extra))

    summary_rows = [("T", result.metadata["T"]),
                    ("gamma", result.metadata["gamma"])]
    for kind in ("wide", "sub", "point"):
        cycles = result.metadata[f"cycles_{series_for[kind]}"]
        summary_rows.append((f"cycles_{kind}", cycles))
    summary_rows.append(("frequency2_dominant_point",
                         result.metadata["cycles_d3_point"] == 2))
    written.append(write_csv(outdir / "mzi_summary.csv",
                             _base_comments(result),
                             ("quantity", "value"), summary_rows))

    stills = mzi_snapshots(config.preset, d=config.d,
                           T=result.metadata["T"], gamma=config.gamma)
    for label, grid in stills:
        comments = _base_comments(result)
        comments.update({"frame": label, "rows": "x1", "columns": "x2"})
        written.append(write_grid_csv(outdir / (label.replace("=", "_")
                                                + ".csv"), comments, grid))
    if config.plots:
        written.append(emit_plot(result, outdir / "mzi_fringes.png"))
    _report(written)
    return EXIT_OK


def cmd_bloch(config: RunConfig, outdir: Path) -> int:
    result = run_bloch(config.preset, d=config.d, eta=config.eta,
                       n_t=config.n_t, n_periods=config.n_periods,
                       movie=True, gamma=config.gamma)
    series_for = {"wide": "d_center_wide", "sub": "d_center_sub",
                  "point": "point_probe"}
    written = []
    for kind, filename in _delta_files(config, "d2_vs_t").items():
        name = series_for[kind]
        extra = {"eta": result.metadata["eta"],
                 "gamma": result.metadata["gamma"],
                 "cycles": result.metadata[f"cycles_{name}"],
                 "dominant_period": result.metadata[f"period_{name}"]}
        written.append(_series_csv(result, outdir, filename, (name,), extra))

    summary_rows = [("eta", result.metadata["eta"]),
                    ("gamma", result.metadata["gamma"]),
                    ("single_particle_period",
                     result.metadata["single_particle_period"])]
    for kind in ("wide", "sub", "point"):
        name = series_for[kind]
        summary_rows.append((f"cycles_{kind}",
                             result.metadata[f"cycles_{name}"]))
        summary_rows.append((f"period_{kind}",
                             result.metadata[f"period_{name}"]))
    written.append(write_csv(outdir / "bloch_summary.csv",
                             _base_comments(result),
                             ("quantity", "value"), summary_rows))
    written += _frame_csvs(result, outdir)
    if config.plots:
        written.append(emit_plot(result, outdir / "bloch_oscillations.png"))
    _report(written)
    return EXIT_OK


def cmd_verify(config: RunConfig, outdir: Path) -> int:
    results = run_checks()
    rows = []
    for check in results:
        line = "PASS" if check.passed else "FAIL"
        print(f"{line}  {check.name}: {check.detail}")
        rows.append((check.name, check.passed, check.detail))
    path = write_csv(outdir / "verify_summary.csv",
                     {"artifact": f"pairdyn {__version__}",
                      "kind": "verify"},
                     ("check", "passed", "detail"), rows)
    _report([path])
    return EXIT_OK if all(check.passed for check in results) \
        else EXIT_CHECKS_FAILED


def cmd_all(config: RunConfig, outdir: Path) -> int:
    status = EXIT_OK
    runs = [("free", cmd_free, {}),
            ("thermal", cmd_thermal, {})]
    for preset in PRESETS:
        runs.append((f"mzi_{preset}", cmd_mzi, {"preset": preset}))
    for preset in PRESETS:
        runs.append((f"bloch_{preset}", cmd_bloch, {"preset": preset}))
    for name, runner, overrides in runs:
        sub_config = dataclasses.replace(config, **overrides)
        code = runner(sub_config, outdir / name)
        status = max(status, code)
    return status


_RUNNERS = {"free": cmd_free, "thermal": cmd_thermal, "mzi": cmd_mzi,
            "bloch": cmd_bloch, "verify": cmd_verify, "all": cmd_all}


# ---------------------------------------------------------------------------
# argument parsing and entry point


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE",
                        help="flat key=value configuration file; "
                             "command-line flags override it")
    parser.add_argument("--outdir", metavar="DIR",
                        help=f"output directory (default: ${OUTDIR_ENV} "
                             f"or ./{DEFAULT_OUTDIR})")
    parser.add_argument("--d", type=int, help="number of lattice sites")
    parser.add_argument("--plots", action="store_true", default=None,
                        help="also render static plots")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairdyn",
        description="Two-particle ring-lattice dynamics: run the bundled "
                    "experiments and verification suite, emit CSV tables "
                    "and plots.")
    parser.add_argument("--version", action="version",
                        version=f"pairdyn {__version__}")
    commands = parser.add_subparsers(dest="experiment", required=True)

    free = commands.add_parser("free", help="free spreading of a "
                                            "correlated pair")
    _add_common(free)
    free.add_argument("--sigma", type=float,
                      help="difference-coordinate width")
    free.add_argument("--big-sigma", dest="big_sigma", type=float,
                      help="sum-coordinate width")

    thermal = commands.add_parser("thermal", help="thermal decay of the "
                                                  "interparticle "
                                                  "correlation")
    _add_common(thermal)
    thermal.add_argument("--sigma", type=float,
                         help="difference-coordinate width")
    thermal.add_argument("--big-sigma", dest="big_sigma", type=float,
                         help="sum-coordinate width")
    thermal.add_argument("--temperatures", type=_parse_temperatures,
                         metavar="T1,T2,...",
                         help="comma-separated temperature list")

    mzi = commands.add_parser("mzi", help="composite-pair interferometer "
                                          "fringes")
    _add_common(mzi)
    mzi.add_argument("--preset", choices=PRESETS)
    mzi.add_argument("--gamma", type=float,
                     help="override the preset interaction strength")
    mzi.add_argument("--n-phi", dest="n_phi", type=int,
                     help="number of phase samples")
    mzi.add_argument("--t-max", dest="t_max", type=float,
                     help="recurrence scan window")
    mzi.add_argument("--delta", type=int,
                     help="write only the cell width given (1, 4 or d/4)")

    bloch = commands.add_parser("bloch", help="oscillations on the tilted "
                                              "ring")
    _add_common(bloch)
    bloch.add_argument("--preset", choices=PRESETS)
    bloch.add_argument("--gamma", type=float,
                       help="override the preset interaction strength")
    bloch.add_argument("--eta", type=float, help="tilt strength")
    bloch.add_argument("--n-t", dest="n_t", type=int,
                       help="number of time samples")
    bloch.add_argument("--n-periods", dest="n_periods", type=float,
                       help="observation window in single-particle periods")
    bloch.add_argument("--delta", type=int,
                       help="write only the cell width given (1, 4 or d/4)")

    verify = commands.add_parser("verify", help="run the numbered "
                                                "cross-check suite")
    _add_common(verify)

    everything = commands.add_parser("all", help="run every experiment "
                                                 "into per-run "
                                                 "subdirectories")
    _add_common(everything)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
    except ConfigError as error:
        print(f"invalid configuration: {error}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except OSError as error:
        print(f"cannot read configuration: {error}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    outdir = config.resolved_outdir()
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        return _RUNNERS[config.experiment](config, outdir)
    except (RecurrenceNotFoundError, np.linalg.LinAlgError,
            FloatingPointError, ZeroDivisionError) as error:
        print(f"numerical failure: {error}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as error:
        print(f"cannot write artifacts: {error}", file=sys.stderr)
        return EXIT_NUMERICAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
