"""Scans of log|zeta(1/2+it)| and the statistics derived from them.

Measures are step-function estimates ``spacing * #{samples >= V}``; moments
are composite Simpson integrals of ``|zeta|^{2k}`` over the same samples, so
the moment-measure identity can be checked on shared data.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special, stats

from .errors import DomainError, ParameterError
from .majorant import log3, loglog, regime_case
from .zeta_eval import DEFAULT_FLOOR, RS_MIN_T, log_abs_zeta_batch

DENSITY_FACTOR = 0.05
MIN_KS_SAMPLES = 10_000


@dataclass(frozen=True)
class TGrid:
    t_start: float
    t_end: float
    spacing: float

    def __post_init__(self):
        if not self.spacing > 0:
            raise ParameterError(f"grid spacing must be > 0, got {self.spacing}")
        if not self.t_end >= self.t_start:
            raise ParameterError(f"grid end {self.t_end} is below its start {self.t_start}")

    @classmethod
    def for_measure(cls, t_start, t_end, factor=DENSITY_FACTOR):
        """Grid at ``factor`` times the mean zero gap 2 pi / log t_end."""
        return cls(t_start, t_end, factor * 2.0 * math.pi / math.log(t_end))

    @property
    def count(self):
        steps = (self.t_end - self.t_start) / self.spacing
        # absorb representation error, e.g. 1000 / 0.01 = 99999.99999999999
        return int(math.floor(steps + 1e-9 * max(1.0, steps))) + 1

    def points(self):
        return self.t_start + self.spacing * np.arange(self.count, dtype=np.float64)

    def resolves_zero_gaps(self, factor=DENSITY_FACTOR):
        return self.spacing <= factor * 2.0 * math.pi / math.log(self.t_end)


@dataclass(frozen=True)
class ScanResult:
    grid: TGrid
    t: np.ndarray = field(repr=False)
    log_abs_zeta: np.ndarray = field(repr=False)
    clipped: np.ndarray = field(repr=False)
    floor: float = DEFAULT_FLOOR

    @property
    def length(self):
        """Total measure represented by the samples (spacing x count)."""
        return self.grid.spacing * self.t.size

    @property
    def summary(self):
        v = self.log_abs_zeta[~self.clipped]
        if v.size == 0:
            return {"max": math.nan, "min": math.nan, "mean": math.nan, "variance": math.nan, "clipped": int(self.clipped.sum())}
        return {
            "max": float(v.max()),
            "min": float(v.min()),
            "mean": float(v.mean()),
            "variance": float(v.var()),
            "clipped": int(self.clipped.sum()),
        }


def scan(grid: TGrid, threads=1, floor=DEFAULT_FLOOR):
    """log|zeta(1/2+it)| at every grid point (t_start >= 50)."""
    if grid.t_start < RS_MIN_T:
        raise DomainError(f"scans start at t >= {RS_MIN_T}, got {grid.t_start}")
    t = grid.points()
    values, clipped = log_abs_zeta_batch(t, floor=floor, threads=threads)
    return ScanResult(grid, t, values, clipped, floor)


def empirical_measure(result: ScanResult, V):
    """spacing * #{samples with log|zeta| >= V}; clipped samples never count.

    ``V`` may be an array.
    """
    vals = np.sort(result.log_abs_zeta[~result.clipped])
    above = vals.size - np.searchsorted(vals, np.asarray(V, dtype=np.float64), side="left")
    out = result.grid.spacing * above
    return float(out) if np.ndim(V) == 0 else out


# -- bound evaluators (implicit constants set to 1) ---------------------------

REGIME_TAGS = ("regime1", "regime2", "regime3", "out-of-range")


def _exp(x):
    # at desk scale 1 - 4/log3 T < 0, so the first regime's exponent can be huge
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def theorem_formulas(T, V):
    """All three right-hand sides of the large-value bound at (T, V)."""
    ll, l3 = loglog(T), log3(T)
    pre = T * V / math.sqrt(ll)
    return {
        "regime1": pre * _exp(-(V * V / ll) * (1.0 - 4.0 / l3)),
        "regime2": pre * _exp(-(V * V / ll) * (1.0 - 7.0 * V / (4.0 * ll * l3)) ** 2),
        "regime3": T * _exp(-V * math.log(V) / 33.0),
    }


def regime_tag(T, V):
    """Regime of (T, V).  V below 10 sqrt(log log T) in the first case is out of range."""
    case = regime_case(T, V)
    if case == 1 and V < 10.0 * math.sqrt(loglog(T)):
        return "out-of-range"
    return f"regime{case}"


def regime1_window_empty(T):
    ll = loglog(T)
    return 10.0 * math.sqrt(ll) > ll


def theorem_bound(T, V):
    """(bound, tag); an out-of-range V gets the first regime's formula."""
    if T < 1e3:
        raise ParameterError(f"need T >= 1e3, got {T}")
    if V <= 0:
        raise ParameterError(f"need V > 0, got {V}")
    tag = regime_tag(T, V)
    key = "regime1" if tag == "out-of-range" else tag
    return theorem_formulas(T, V)[key], tag


def reference_bounds(T, V):
    """The conjectural Gaussian-type bound, Jutila's shape and the Selberg tail."""
    ll = loglog(T)
    eq3 = T * math.sqrt(ll) / V * math.exp(-V * V / ll) if V != 0 else math.inf
    return {
        "eq3": eq3,
        "jutila": T * math.exp(-V * V / ll),
        "selberg_tail": T * float(special.ndtr(-V / math.sqrt(0.5 * ll))),
    }


# -- moments ------------------------------------------------------------------


@dataclass(frozen=True)
class MomentEstimate:
    k: float
    T: float
    interval: tuple
    value: float
    quadrature_error: float


def _simpson_with_error(y, h):
    value = float(integrate.simpson(y, dx=h))
    m = y.size if y.size % 2 == 1 else y.size - 1
    if m < 5:
        return value, math.nan
    fine = float(integrate.simpson(y[:m], dx=h))
    coarse = float(integrate.simpson(y[:m:2], dx=2.0 * h))
    return value, abs(fine - coarse)


def moment_from_scan(result: ScanResult, k):
    if not k > 0:
        raise ParameterError(f"need k > 0, got {k}")
    y = np.exp(2.0 * k * result.log_abs_zeta)
    y[result.clipped] = 0.0
    return _simpson_with_error(y, result.grid.spacing)


def moment_direct(k, interval, grid: TGrid | None = None, result: ScanResult | None = None, threads=1):
    """Simpson quadrature of |zeta(1/2+it)|^{2k} over ``interval``.

    Pass ``result`` to reuse samples from an earlier scan; otherwise ``grid``
    is scanned (it must resolve the mean zero gap).
    """
    a, b = interval
    if result is None:
        if grid is None:
            grid = TGrid.for_measure(a, b)
        if not grid.resolves_zero_gaps():
            raise ParameterError(f"grid spacing {grid.spacing} is too coarse for t near {grid.t_end}")
        result = scan(grid, threads=threads)
    if abs(result.grid.t_start - a) > 1e-9 * max(1.0, abs(a)) or result.t[-1] < b - result.grid.spacing:
        raise ParameterError(f"scan [{result.grid.t_start}, {result.t[-1]}] does not cover {interval}")
    value, err = moment_from_scan(result, k)
    return MomentEstimate(float(k), float(a), (float(a), float(b)), value, err)


def default_v_grid(result: ScanResult, n=20001, pad=0.01):
    s = result.summary
    return np.linspace(s["min"] - pad, s["max"] + pad, n)


def moment_via_measure(k, result: ScanResult, v_grid=None):
    """2k * integral of e^{2kV} meas(S(V)) dV by trapezoid over ``v_grid``.

    Below the grid the measure is held at its value at the first node; above
    the grid it is taken as zero.
    """
    if not k > 0:
        raise ParameterError(f"need k > 0, got {k}")
    v = default_v_grid(result) if v_grid is None else np.asarray(v_grid, dtype=np.float64)
    s = result.summary
    if v.size and (v[0] > s["min"] or v[-1] < s["max"]):
        warnings.warn(
            f"v-grid [{v[0]:.3f}, {v[-1]:.3f}] does not cover the sample range [{s['min']:.3f}, {s['max']:.3f}]",
            RuntimeWarning,
            stacklevel=2,
        )
    meas = empirical_measure(result, v)
    body = float(np.trapezoid(2.0 * k * np.exp(2.0 * k * v) * meas, v))
    return body + float(meas[0] * math.exp(2.0 * k * v[0]))


def corollary_b_report(result: ScanResult, k, T=None):
    """Empirical exponent of meas{log|zeta| >= k log log T} next to k^2.

    The measure is normalised by the scanned length rather than T, since a
    scan covers a window of [T, 2T].
    """
    T = result.grid.t_start if T is None else T
    ll = loglog(T)
    threshold = k * ll
    meas = empirical_measure(result, threshold)
    report = {"k": k, "k_squared": k * k, "threshold": threshold, "measure": meas, "length": result.length}
    if meas == 0:
        report.update(exponent=math.inf, flag="measure=0")
    else:
        report.update(exponent=-math.log(meas / result.length) / ll, flag="")
    return report


def ks_distance_normal(samples):
    """Kolmogorov-Smirnov distance between ``samples`` and N(0, 1)."""
    return float(stats.kstest(np.asarray(samples, dtype=np.float64), "norm").statistic)


def selberg_compare(result: ScanResult, T=None):
    """KS distance of log|zeta| / sqrt(loglog(T)/2) against the standard normal.

    Clipped samples are kept as left-tail mass (sent to -inf).
    """
    n_ok = int((~result.clipped).sum())
    if n_ok < MIN_KS_SAMPLES:
        raise ParameterError(f"need >= {MIN_KS_SAMPLES} unclipped samples, got {n_ok}")
    T = result.grid.t_start if T is None else T
    x = result.log_abs_zeta / math.sqrt(0.5 * loglog(T))
    x = np.where(result.clipped, -np.inf, x)
    return ks_distance_normal(x)


# -- tables for CSV emission ----------------------------------------------------


def measure_table(result: ScanResult, v_values, T=None):
    T = result.grid.t_start if T is None else T
    rows = []
    for V in v_values:
        bound, tag = theorem_bound(T, V)
        ref = reference_bounds(T, V)
        rows.append({
            "V": float(V),
            "measure": empirical_measure(result, V),
            "theorem_bound": bound,
            "regime": tag,
            "eq3": ref["eq3"],
            "jutila": ref["jutila"],
            "selberg_tail": ref["selberg_tail"],
        })
    return rows


def moment_table(result: ScanResult, k_values, v_grid=None):
    rows = []
    for k in k_values:
        direct, _ = moment_from_scan(result, k)
        via = moment_via_measure(k, result, v_grid)
        rows.append({"k": float(k), "direct": direct, "via_measure": via, "rel_diff": abs(via - direct) / direct})
    return rows
