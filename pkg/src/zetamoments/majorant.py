"""Explicit upper bound for log|zeta(1/2+it)| by a smoothed prime-power sum.

For ``t`` in ``[T, 2T]`` and ``2 <= x <= T^2`` the bound reads::

    log|zeta(1/2+it)| <= Re sum_{n<=x} Lambda(n) / (n^(sigma0+it) log n) * log(x/n)/log x
                         + (1+lam)/2 * log T / log x + slack / log x

with ``sigma0 = 1/2 + lam/log x`` and ``lam >= LAMBDA0``.  ``slack`` stands in
for an ineffective O(1/log x) term and is recorded with every scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import ParameterError
from .primes import PrimeTable
from .zeta_eval import critical_point, log_abs_zeta_batch

DEFAULT_SLACK = 5.0


class Lambda0(NamedTuple):
    value: float
    residual: float


def lambda0_gap(lam):
    """e^{-lam} - lam - lam^2/2; strictly decreasing, single positive root."""
    return math.exp(-lam) - lam - 0.5 * lam * lam


def solve_lambda0(lo=0.1, hi=1.0, tol=1e-13):
    """Positive root of e^{-lam} = lam + lam^2/2 by bisection."""
    g_lo = lambda0_gap(lo)
    if g_lo <= 0 or lambda0_gap(hi) >= 0:
        raise ParameterError(f"[{lo}, {hi}] does not bracket lambda0")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (lambda0_gap(mid) > 0) == (g_lo > 0):
            lo = mid
        else:
            hi = mid
    value = 0.5 * (lo + hi)
    return Lambda0(value, lambda0_gap(value))


LAMBDA0 = solve_lambda0().value


@dataclass(frozen=True)
class MajorantParams:
    T: float
    x: float
    lam: float = LAMBDA0
    slack: float = DEFAULT_SLACK

    def __post_init__(self):
        if not 2.0 <= self.x <= self.T**2:
            raise ParameterError(f"need 2 <= x <= T^2, got x={self.x}, T={self.T}")
        if self.lam < LAMBDA0:
            raise ParameterError(f"lambda must be >= lambda0 = {LAMBDA0:.6f}, got {self.lam}")
        if self.slack < 0:
            raise ParameterError(f"slack must be >= 0, got {self.slack}")

    @property
    def log_x(self):
        return math.log(self.x)

    @property
    def sigma0(self):
        return 0.5 + self.lam / self.log_x

    @property
    def penalty(self):
        """(1+lam)/2 * log T / log x."""
        return 0.5 * (1.0 + self.lam) * math.log(self.T) / self.log_x


def _prime_power_terms(params, table, kinds=None):
    """logs and real weights of the prime powers n <= x, ascending in n.

    ``kinds`` restricts to exponents: "prime" (k=1), "square" (k=2),
    "higher" (k>=3).
    """
    table.require(params.x)
    stop = int(np.searchsorted(table.powers, math.floor(params.x), side="right"))
    n = table.powers[:stop].astype(np.float64)
    k = table.power_exp[:stop]
    log_n = np.log(n)
    w = np.exp(-params.sigma0 * log_n) * (math.log(params.x) - log_n) / params.log_x / k
    if kinds is not None:
        mask = np.zeros(stop, dtype=bool)
        if "prime" in kinds:
            mask |= k == 1
        if "square" in kinds:
            mask |= k == 2
        if "higher" in kinds:
            mask |= k >= 3
        log_n, w = log_n[mask], w[mask]
    return log_n, w


def _real_sum(t, log_n, w):
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    vals = kernels.dirichlet_poly(ts, log_n, w.astype(np.complex128)).real
    return float(vals[0]) if np.ndim(t) == 0 else vals


def prime_power_sum(t, params: MajorantParams, table: PrimeTable):
    """Re sum_{n<=x} Lambda(n)/(n^{sigma0+it} log n) * log(x/n)/log x."""
    return _real_sum(t, *_prime_power_terms(params, table))


def prime_power_parts(t, params: MajorantParams, table: PrimeTable):
    """The prime, prime-square and higher-power pieces of :func:`prime_power_sum`."""
    return {kind: _real_sum(t, *_prime_power_terms(params, table, (kind,))) for kind in ("prime", "square", "higher")}


def prime_square_term(t, params: MajorantParams, table: PrimeTable):
    """The n = p^2 part, Re sum_{p<=sqrt x} p^{-2 sigma0 - 2it}/2 * log(sqrt(x)/p)/log sqrt(x).

    The factor 1/2 is Lambda(p^2)/log(p^2).
    """
    return _real_sum(t, *_prime_power_terms(params, table, ("square",)))


def majorant_bound(t, params: MajorantParams, table: PrimeTable):
    return prime_power_sum(t, params, table) + params.penalty + params.slack / params.log_x


def majorant_scan(ts, params: MajorantParams, table: PrimeTable, threads=1):
    """log|zeta|, the bound and their margin on an array of t."""
    ts = np.asarray(ts, dtype=np.float64)
    log_abs, clipped = log_abs_zeta_batch(ts, threads=threads)
    bound = majorant_bound(ts, params, table)
    margin = bound - log_abs
    return {
        "t": ts,
        "log_abs_zeta": log_abs,
        "clipped": clipped,
        "majorant": bound,
        "margin": margin,
        "min_margin": float(margin.min()) if margin.size else math.nan,
        "violations": int(np.count_nonzero(margin < 0)),
    }


@dataclass(frozen=True)
class RegimeParams:
    T: float
    V: float
    A: float
    x: float
    z: float
    V1: float


def loglog(T):
    return math.log(math.log(T))


def log3(T):
    """log log log T; positive only for T > e^e."""
    return math.log(math.log(math.log(T)))


def regime_case(T, V):
    """1, 2 or 3 by the case split on V; ties go to the lower-V case."""
    ll = loglog(T)
    if V <= ll:
        return 1
    if V <= 0.5 * ll * log3(T):
        return 2
    return 3


def regime_params(T, V):
    if not T > math.exp(math.e):
        raise ParameterError(f"need T > e^e so that log3 T > 0, got T={T}")
    if V <= 0:
        raise ParameterError(f"need V > 0, got {V}")
    ll, l3 = loglog(T), log3(T)
    case = regime_case(T, V)
    if case == 1:
        a = 0.5 * l3
    elif case == 2:
        a = ll / (2.0 * V) * l3
    else:
        a = 1.0
    x = T ** (a / V)
    return RegimeParams(T=T, V=V, A=a, x=x, z=x ** (1.0 / ll), V1=V * (1.0 - 7.0 / (8.0 * a)))


def s1_s2_split(t, V, T, table: PrimeTable, lam=LAMBDA0):
    """(S1, S2): moduli of the prime sums over p <= z and z < p <= x.

    Both use exponent 1/2 + lam/log x + it and weight log(x/p)/log x, with
    A, x, z from :func:`regime_params`.
    """
    if V < 3:
        raise ParameterError(f"need V >= 3, got {V}")
    rp = regime_params(T, V)
    if rp.x < 2:
        raise ParameterError(f"x = T^(A/V) = {rp.x:.4g} < 2; T too small for V={V}")
    table.require(rp.x)
    p = table.primes_upto(rp.x).astype(np.float64)
    log_x = math.log(rp.x)
    log_p = np.log(p)
    w = np.exp(-(0.5 + lam / log_x) * log_p) * (log_x - log_p) / log_x
    low = p <= rp.z
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    s1 = np.abs(kernels.dirichlet_poly(ts, log_p[low], w[low].astype(np.complex128)))
    s2 = np.abs(kernels.dirichlet_poly(ts, log_p[~low], w[~low].astype(np.complex128)))
    if np.ndim(t) == 0:
        return float(s1[0]), float(s2[0])
    return s1, s2


class CorollaryC(NamedTuple):
    ratio: float
    clipped: bool


def corollary_c_ratio(t):
    """log|zeta(1/2+it)| * log log t / log t, with the clipping flag."""
    if t < 100:
        raise ParameterError(f"need t >= 100, got {t}")
    cp = critical_point(t)
    return CorollaryC(cp.log_abs_zeta * math.log(math.log(t)) / math.log(t), cp.clipped)


def corollary_c_ratios(ts, threads=1):
    ts = np.asarray(ts, dtype=np.float64)
    log_abs, clipped = log_abs_zeta_batch(ts, threads=threads)
    return log_abs * np.log(np.log(ts)) / np.log(ts), clipped
