"""Command-line driver: every check and scan, with CSV output and a JSON manifest per run.

Exit codes: 0 success, 2 invalid configuration (nothing written), 3 failure
during computation.  Errors are reported on stderr as one JSON record.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import platform
import sys
import time
from dataclasses import dataclass, field

import numpy as np
import scipy

from . import __version__
from ._accel import HAVE_NUMBA, backend_name
from .errors import HypothesisError, ParameterError, ZetaMomentsError
from .explicit_formula import MIN_ZEROS_BEYOND, lemma1_check, load_zeros, zero_term_coefficient
from .majorant import DEFAULT_SLACK, LAMBDA0, MajorantParams, majorant_scan, solve_lambda0
from .meanvalue import EXPANSION_BUDGET, PrimeCoeffs, diagonal_bound, diagonal_sum, hypothesis_holds, polynomial_moment, power_expand
from .primes import MAX_LIMIT, sieve
from .statistics import (
    TGrid,
    measure_table,
    moment_table,
    regime1_window_empty,
    scan,
    selberg_compare,
)
from .zeta_eval import RS_MIN_T

SUBCOMMANDS = ("scan", "majorant-verify", "measure", "moments", "lemma1-check", "lemma3-check", "lambda0")
EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 2, 3
LAMBDA_GRID_POINTS = 100
LAMBDA_GRID_TOP = 10.0


class ConfigError(ParameterError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    T: float | None = None
    t_start: float | None = None
    t_end: float | None = None
    spacing: float | None = None
    x: tuple = ()
    lam: tuple = ()
    slack: float = DEFAULT_SLACK
    k: tuple = ()
    v_grid: tuple = ()
    zeros: str | None = None
    seed: int = 0
    trials: int = 20
    out: str = "."
    threads: int = 1

    @property
    def grid(self):
        return TGrid(self.t_start, self.t_end, self.spacing)


# -- argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report("validation", "UsageError", message)
        sys.exit(EXIT_INVALID)


def _number(text):
    text = text.strip()
    if text.lower() in ("lambda0", "λ0"):
        return LAMBDA0
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _number_list(text):
    return tuple(_number(p) for p in text.split(",") if p.strip())


def build_parser():
    parser = _Parser(prog="zetamoments", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--T", type=_number, dest="T")
        p.add_argument("--t-start", type=_number)
        p.add_argument("--t-end", type=_number)
        p.add_argument("--spacing", type=_number)
        p.add_argument("--x", type=_number_list, default=(), help="comma-separated")
        p.add_argument("--lambda", type=_number_list, dest="lam", default=(), help="comma-separated; 'lambda0' allowed")
        p.add_argument("--slack", type=_number, default=DEFAULT_SLACK)
        p.add_argument("--k", type=_number_list, default=(), help="comma-separated")
        p.add_argument("--v-grid", type=_number_list, default=(), help="comma-separated V values")
        p.add_argument("--zeros", help="zero ordinate file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--out", default=".")
        p.add_argument("--threads", type=int, default=1)
    return parser


def config_from_args(ns):
    names = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in names})


# -- validation -----------------------------------------------------------------


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def _finite(name, value):
    _require(value is not None and math.isfinite(value), f"{name} must be a finite number, got {value}")


def _single(name, values, default):
    if not values:
        return default
    _require(len(values) == 1, f"{name} takes a single value here, got {len(values)}")
    return values[0]


def _time_range(cfg, need_T=True):
    """Fill T / t-range / spacing defaults and check the grid."""
    T, a = cfg.T, cfg.t_start
    if a is None:
        a = T
    if T is None:
        T = a
    _require(a is not None, "--t-start or --T is required")
    b = a if cfg.t_end is None else cfg.t_end
    for name, v in (("T", T), ("t-start", a), ("t-end", b)):
        _finite(name, v)
    _require(b >= a, f"empty grid: t-end {b} < t-start {a}")
    _require(a >= RS_MIN_T, f"t-start must be >= {RS_MIN_T}, got {a}")
    spacing = cfg.spacing if cfg.spacing is not None else TGrid.for_measure(a, b).spacing
    _finite("spacing", spacing)
    _require(spacing > 0, f"spacing must be > 0, got {spacing}")
    if need_T:
        _require(a >= T and b <= 2.0 * T, f"t-range [{a}, {b}] must lie in [T, 2T] = [{T}, {2 * T}]")
    return dataclasses.replace(cfg, T=T, t_start=a, t_end=b, spacing=spacing)


def validate(cfg: RunConfig) -> RunConfig:
    """Return ``cfg`` with defaults filled in, or raise ConfigError."""
    _require(cfg.subcommand in SUBCOMMANDS, f"unknown subcommand {cfg.subcommand!r}")
    _require(cfg.threads >= 1, f"threads must be >= 1, got {cfg.threads}")
    _require(cfg.seed >= 0, f"seed must be >= 0, got {cfg.seed}")
    _require(not os.path.exists(cfg.out) or os.path.isdir(cfg.out), f"--out {cfg.out} is not a directory")
    for name, vals in (("x", cfg.x), ("lambda", cfg.lam), ("k", cfg.k), ("v-grid", cfg.v_grid)):
        for v in vals:
            _finite(name, v)
    sub = cfg.subcommand

    if sub == "scan":
        cfg = _time_range(cfg, need_T=False)
        _require(cfg.grid.count <= 10**8, f"grid of {cfg.grid.count} points is too large")

    elif sub == "majorant-verify":
        cfg = _time_range(cfg)
        x = _single("x", cfg.x, 1e3)
        lam = _single("lambda", cfg.lam, LAMBDA0)
        _finite("slack", cfg.slack)
        MajorantParams(cfg.T, x, lam, cfg.slack)
        _require(math.floor(x) <= MAX_LIMIT, f"x = {x} exceeds the sieve capacity {MAX_LIMIT}")
        cfg = dataclasses.replace(cfg, x=(x,), lam=(lam,))

    elif sub in ("measure", "moments"):
        cfg = _time_range(cfg)
        _require(cfg.T >= 1e3, f"need T >= 1e3, got {cfg.T}")
        _require(cfg.grid.resolves_zero_gaps(), f"spacing {cfg.spacing} is coarser than 0.05 * 2pi/log(t-end)")
        _require(cfg.grid.count >= 3, "need at least 3 grid points for quadrature")
        if sub == "measure":
            v = cfg.v_grid or (3.0, 5.0, 10.0, 20.0, 50.0)
            _require(all(V > 0 for V in v), "V values must be > 0")
            cfg = dataclasses.replace(cfg, v_grid=tuple(v))
        else:
            k = cfg.k or (0.5, 1.0, 2.0)
            _require(all(kk > 0 for kk in k), "k values must be > 0")
            cfg = dataclasses.replace(cfg, k=tuple(k))

    elif sub == "lemma1-check":
        _require(cfg.zeros is not None, "lemma1-check needs --zeros")
        _require(os.path.isfile(cfg.zeros), f"zero file {cfg.zeros} not found")
        a = 30.0 if cfg.t_start is None else cfg.t_start
        b = (50.0 if cfg.t_start is None else a) if cfg.t_end is None else cfg.t_end
        spacing = cfg.spacing if cfg.spacing is not None else max(b - a, 1.0)
        for name, v in (("t-start", a), ("t-end", b), ("spacing", spacing)):
            _finite(name, v)
        _require(b >= a, f"empty grid: t-end {b} < t-start {a}")
        _require(spacing > 0, f"spacing must be > 0, got {spacing}")
        x = cfg.x or (1e2, 1e3)
        _require(all(2 <= v <= MAX_LIMIT for v in x), f"x values must lie in [2, {MAX_LIMIT}]")
        cfg = dataclasses.replace(cfg, t_start=a, t_end=b, spacing=spacing, x=tuple(x))
        _require(cfg.grid.count <= 1000, "lemma1-check is limited to 1000 ordinates")

    elif sub == "lemma3-check":
        T = 1e5 if cfg.T is None else cfg.T
        _finite("T", T)
        _require(T > math.e, f"need T > e, got {T}")
        x = _single("x", cfg.x, 31.0)
        _require(2 <= x <= 1e6, f"x must lie in [2, 1e6], got {x}")
        k = cfg.k or (1.0, 2.0)
        _require(all(kk >= 1 and kk == int(kk) for kk in k), "k values must be integers >= 1")
        n_primes = int(sieve(int(x)).primes.size)
        for kk in k:
            kk = int(kk)
            if not hypothesis_holds(x, kk, T):
                raise HypothesisError(f"x^k = {x}^{kk} exceeds T/log T at T={T}")
            _require(math.comb(n_primes + kk - 1, kk) <= EXPANSION_BUDGET, f"k={kk} expansion exceeds the term budget")
        _require(cfg.trials >= 1, f"trials must be >= 1, got {cfg.trials}")
        cfg = dataclasses.replace(cfg, T=T, x=(x,), k=tuple(float(int(kk)) for kk in k))

    elif sub == "lambda0":
        x = cfg.x or (10.0, 1e3, 1e6)
        _require(all(v > 1 for v in x), "x values must be > 1")
        cfg = dataclasses.replace(cfg, x=tuple(x))
    return cfg


# -- subcommands ----------------------------------------------------------------


@dataclass
class Artifact:
    name: str
    header: list | None = None
    rows: list = field(default_factory=list)
    payload: dict | None = None


def _grid_info(cfg):
    g = cfg.grid
    return {"t_start": g.t_start, "t_end": g.t_end, "spacing": g.spacing, "count": g.count}


def cmd_scan(cfg):
    res = scan(cfg.grid, threads=cfg.threads)
    rows = zip(res.t.tolist(), res.log_abs_zeta.tolist(), res.clipped.tolist())
    return [Artifact("scan.csv", ["t", "log_abs_zeta", "clipped"], list(rows))], {"summary": res.summary}


def cmd_majorant_verify(cfg):
    params = MajorantParams(cfg.T, cfg.x[0], cfg.lam[0], cfg.slack)
    table = sieve(max(2, math.floor(params.x)))
    out = majorant_scan(cfg.grid.points(), params, table, threads=cfg.threads)
    rows = list(zip(out["t"].tolist(), out["log_abs_zeta"].tolist(), out["majorant"].tolist(), out["margin"].tolist()))
    summary = {
        "min_margin": out["min_margin"],
        "violations": out["violations"],
        "clipped": int(out["clipped"].sum()),
        "sigma0": params.sigma0,
        "penalty": params.penalty,
        "slack_term": params.slack / params.log_x,
    }
    return [
        Artifact("majorant.csv", ["t", "log_abs_zeta", "majorant", "margin"], rows),
        Artifact("majorant_summary.json", payload=summary),
    ], summary


def cmd_measure(cfg):
    res = scan(cfg.grid, threads=cfg.threads)
    table = measure_table(res, cfg.v_grid, T=cfg.T)
    cols = ["V", "measure", "theorem_bound", "regime", "eq3", "jutila", "selberg_tail"]
    n_ok = int((~res.clipped).sum())
    summary = {
        "scan": res.summary,
        "length": res.length,
        "regime1_window_empty": regime1_window_empty(cfg.T),
        "ks_distance": selberg_compare(res, T=cfg.T) if n_ok >= 10_000 else None,
        "bounds_note": "implicit constants set to 1",
    }
    return [
        Artifact("measure.csv", cols, [[r[c] for c in cols] for r in table]),
        Artifact("measure_summary.json", payload=summary),
    ], summary


def cmd_moments(cfg):
    res = scan(cfg.grid, threads=cfg.threads)
    table = moment_table(res, cfg.k)
    cols = ["k", "direct", "via_measure", "rel_diff"]
    return [Artifact("moments.csv", cols, [[r[c] for c in cols] for r in table])], {"scan": res.summary}


def cmd_lemma1(cfg):
    zeros = load_zeros(cfg.zeros)
    table = sieve(max(2, math.floor(max(cfg.x))))
    rows = []
    for t in cfg.grid.points().tolist():
        for x in cfg.x:
            r = lemma1_check(complex(2.0, t), x, zeros, table)
            rows.append([2.0, t, x, r.zeros_used, r.residual, r.tail_estimate, r.residual <= 2.0 * r.tail_estimate])
    cols = ["sigma", "t", "x", "zeros_used", "residual", "tail_estimate", "within_tail"]
    return [Artifact("lemma1.csv", cols, rows)], {"zeros": zeros.count, "min_zeros_beyond": MIN_ZEROS_BEYOND}


def draw_coeffs(table, x, seed, trial):
    """Coefficients for one trial; independent of how many trials run."""
    return PrimeCoeffs.random_unit_disk(table, x, np.random.default_rng([seed, trial]))


def cmd_lemma3(cfg):
    x, T = cfg.x[0], cfg.T
    table = sieve(max(2, math.floor(x)))
    rows = []
    for trial in range(cfg.trials):
        coeffs = draw_coeffs(table, x, cfg.seed, trial)
        for kf in cfg.k:
            k = int(kf)
            dsum = diagonal_sum(power_expand(coeffs, k))
            moment = polynomial_moment(coeffs, k, (T, 2.0 * T), threads=cfg.threads)
            rows.append([trial, k, x, dsum, diagonal_bound(coeffs, k), moment, moment / (T * dsum)])
    cols = ["trial", "k", "x", "diagonal_sum", "diagonal_bound", "moment", "ratio"]
    return [Artifact("lemma3.csv", cols, rows)], {"T": T, "interval": [T, 2.0 * T]}


def lambda_grid(n=LAMBDA_GRID_POINTS, top=LAMBDA_GRID_TOP):
    return np.linspace(LAMBDA0, top, n)


def cmd_lambda0(cfg):
    t0 = time.perf_counter()
    root = solve_lambda0()
    elapsed = time.perf_counter() - t0
    rows = [[x, lam, zero_term_coefficient(lam, x)] for x in cfg.x for lam in lambda_grid().tolist()]
    worst = max(r[2] for r in rows)
    return [
        Artifact("lambda0.csv", ["value", "residual"], [[root.value, root.residual]]),
        Artifact("bracket.csv", ["x", "lambda", "coefficient"], rows),
    ], {"max_coefficient": worst, "solve_seconds": elapsed}


COMMANDS = {
    "scan": cmd_scan,
    "majorant-verify": cmd_majorant_verify,
    "measure": cmd_measure,
    "moments": cmd_moments,
    "lemma1-check": cmd_lemma1,
    "lemma3-check": cmd_lemma3,
    "lambda0": cmd_lambda0,
}


# -- output ---------------------------------------------------------------------


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    return v


def versions():
    out = {
        "zetamoments": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "backend": backend_name(),
    }
    if HAVE_NUMBA:
        import numba

        out["numba"] = numba.__version__
    return out


def write_outputs(cfg, artifacts, extra, wall):
    os.makedirs(cfg.out, exist_ok=True)
    written = []
    for art in artifacts:
        path = os.path.join(cfg.out, art.name)
        if art.payload is not None:
            with open(path, "w") as fh:
                json.dump(_jsonable(art.payload), fh, indent=2, sort_keys=True)
                fh.write("\n")
        else:
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(art.header)
                w.writerows([_cell(v) for v in row] for row in art.rows)
        written.append(art.name)
    manifest_name = f"{cfg.subcommand.replace('-', '_')}_manifest.json"
    manifest = {
        "subcommand": cfg.subcommand,
        "config": dataclasses.asdict(cfg),
        "grid": _grid_info(cfg) if cfg.t_start is not None and cfg.spacing is not None else None,
        "outputs": written,
        "results": extra,
        "versions": versions(),
        "wall_time_s": wall,
    }
    with open(os.path.join(cfg.out, manifest_name), "w") as fh:
        json.dump(_jsonable(manifest), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return written + [manifest_name]


def _report(kind, error, message, **extra):
    record = {"status": "error", "kind": kind, "error": error, "message": message, **extra}
    print(json.dumps(record), file=sys.stderr)


def run(cfg: RunConfig):
    """Validate, compute and write; returns the exit code."""
    try:
        cfg = validate(cfg)
    except (ValueError, OSError) as exc:
        _report("validation", type(exc).__name__, str(exc))
        return EXIT_INVALID
    t0 = time.perf_counter()
    try:
        artifacts, extra = COMMANDS[cfg.subcommand](cfg)
    except (ZetaMomentsError, ArithmeticError, ValueError, MemoryError) as exc:
        _report("computation", type(exc).__name__, str(exc), subcommand=cfg.subcommand)
        return EXIT_FAILED
    files = write_outputs(cfg, artifacts, extra, time.perf_counter() - t0)
    print(json.dumps({"status": "ok", "subcommand": cfg.subcommand, "files": files}))
    return EXIT_OK


def main(argv=None):
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
