"""Zeta on the critical line: Riemann-Siegel for speed, Euler-Maclaurin as oracle.

Values of t below :data:`RS_MIN_T` are always routed through Euler-Maclaurin.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from . import kernels
from .errors import DomainError, PoleError

RS_MIN_T = 50.0
THETA_ASYMPTOTIC_MIN_T = 16.0
DEFAULT_FLOOR = -50.0
# |zeta| below this is indistinguishable from an exact zero in double precision
ZERO_RESOLUTION = 1e-12
CHUNK = 4096
# |Z| below this is within a few hundred RS error units of 0 near t = 50
RS_REFINE_BELOW = 1e-5

_EM_MAX_CORRECTIONS = 60


@dataclass(frozen=True)
class CriticalPoint:
    t: float
    theta: float
    z_value: float
    zeta: complex
    log_abs_zeta: float
    clipped: bool = False


def theta(t):
    """Riemann-Siegel theta function for t > 0 (scalar or array).

    The Stirling series is used for t >= 16, the complex log-gamma below.
    """
    arr = np.asarray(t, dtype=np.float64)
    if np.any(~(arr > 0)):
        raise DomainError(f"theta requires t > 0, got {t!r}")
    flat = np.atleast_1d(arr)
    out = np.empty_like(flat)
    small = flat < THETA_ASYMPTOTIC_MIN_T
    out[~small] = kernels.theta_asymptotic(flat[~small])
    ts = flat[small]
    out[small] = special.loggamma(0.25 + 0.5j * ts).imag - 0.5 * ts * math.log(math.pi)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


@lru_cache(maxsize=None)
def _bernoulli_over_factorial(m):
    # B_{2j} / (2j)! for j = 1..m
    b = special.bernoulli(2 * m)
    return np.array([b[2 * j] / math.factorial(2 * j) for j in range(1, m + 1)])


def _series_mul(a, b):
    return np.convolve(a, b)[: len(a)]


def default_em_terms(s):
    """Head length N making the Bernoulli corrections shrink by ~4x per step."""
    return max(10, int(math.ceil(abs(complex(s).imag) / math.pi)) + 10)


def _em_correction(s, big_n, order, head):
    """Euler-Maclaurin tail for a single s, given the head sum's Taylor row."""
    eps = np.zeros(order + 1, dtype=np.complex128)
    log_n = math.log(big_n)
    n_pow = np.exp(-s * log_n)
    fact = np.array([math.factorial(j) for j in range(order + 1)], dtype=np.float64)
    e = n_pow * np.array([(-log_n) ** j for j in range(order + 1)]) / fact
    a = s - 1.0
    inv = np.array([(-1.0) ** j / a ** (j + 1) for j in range(order + 1)], dtype=np.complex128)
    total = head + big_n * _series_mul(e, inv) + 0.5 * e

    bern = _bernoulli_over_factorial(_EM_MAX_CORRECTIONS + 1)
    poch = eps.copy()
    poch[0] = s
    if order >= 1:
        poch[1] = 1.0
    n_inv2 = 1.0 / (big_n * big_n)
    scale = 1.0 / big_n
    prev = math.inf
    bound = math.inf
    for j in range(1, _EM_MAX_CORRECTIONS + 1):
        # term_j = B_2j/(2j)! * (s)_{2j-1} * N^{-s-2j+1}
        term = bern[j - 1] * scale * _series_mul(poch, e)
        size = abs(term[0])
        if size > prev:
            break
        total = total + term
        # advance the rising factorial by two factors: (s+2j-1)(s+2j)
        for shift in (2 * j - 1, 2 * j):
            lin = eps.copy()
            lin[0] = s + shift
            if order >= 1:
                lin[1] = 1.0
            poch = _series_mul(poch, lin)
        scale *= n_inv2
        nxt = abs(bern[j] * scale * poch[0] * e[0])
        bound = nxt * abs(s + 2 * j + 1) / (s.real + 2 * j + 1)
        prev = size
        if nxt <= 1e-17 * max(abs(total[0]), 1e-300):
            break
    return total, bound


def zeta_em_series(s, order=0, terms=None):
    """Taylor coefficients zeta^{(j)}(s)/j!, j = 0..order, by Euler-Maclaurin.

    Returns ``(coeffs, bound)`` where ``bound`` bounds the truncation error of
    the value (j = 0) term.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    big_n = default_em_terms(s) if terms is None else int(terms)
    if big_n < 10:
        raise DomainError(f"Euler-Maclaurin needs terms >= 10, got {big_n}")
    head = kernels.em_head(np.array([s]), np.array([big_n]), order)[0]
    return _em_correction(s, big_n, order, head)


def zeta_euler_maclaurin(s, terms=None):
    """zeta(s) by Euler-Maclaurin summation with ``terms`` head terms."""
    coeffs, _ = zeta_em_series(s, 0, terms)
    return complex(coeffs[0])


def zeta_em_batch(s_values, terms=None):
    """Vectorised :func:`zeta_euler_maclaurin`; returns (values, error bounds)."""
    s_values = np.asarray(s_values, dtype=np.complex128).ravel()
    if np.any(s_values == 1):
        raise PoleError("zeta has a pole at s = 1")
    if terms is None:
        ns = np.array([default_em_terms(s) for s in s_values], dtype=np.int64)
    else:
        ns = np.full(s_values.shape, int(terms), dtype=np.int64)
    heads = kernels.em_head(s_values, ns, 0)
    vals = np.empty(s_values.shape, dtype=np.complex128)
    bounds = np.empty(s_values.shape)
    for i, s in enumerate(s_values):
        c, b = _em_correction(complex(s), int(ns[i]), 0, heads[i])
        vals[i] = c[0]
        bounds[i] = b
    return vals, bounds


def clip_threshold(t, floor=DEFAULT_FLOOR):
    """Largest |zeta(1/2+it)| treated as a zero.

    A float t sits up to ulp(t)/2 from the zero it represents, and |Z'| near a
    zero is typically a small multiple of log t, so ulp(t) log^2 t covers the
    residual |Z| at the nearest double to a zero.
    """
    t = np.asarray(t, dtype=np.float64)
    scale = np.spacing(t) * np.maximum(1.0, np.log(t)) ** 2
    out = np.maximum(max(math.exp(floor), ZERO_RESOLUTION), scale)
    return float(out) if out.ndim == 0 else out


def _log_abs(modulus, floor, t):
    if modulus <= clip_threshold(t, floor):
        return floor, True
    return math.log(modulus), False


def critical_point_em(t, terms=None, floor=DEFAULT_FLOOR):
    """CriticalPoint from the Euler-Maclaurin oracle (any t > 0)."""
    th = theta(t)
    zeta = zeta_euler_maclaurin(complex(0.5, t), terms)
    z_value = (complex(math.cos(th), math.sin(th)) * zeta).real
    value, clipped = _log_abs(abs(zeta), floor, t)
    return CriticalPoint(float(t), th, z_value, zeta, value, clipped)


def zeta_riemann_siegel(t, floor=DEFAULT_FLOOR):
    """CriticalPoint from the Riemann-Siegel formula; t must be >= 50."""
    if not t >= RS_MIN_T:
        raise DomainError(f"Riemann-Siegel path needs t >= {RS_MIN_T}, got {t}; use the Euler-Maclaurin oracle")
    z_value = float(kernels.rs_z(np.array([t]))[0])
    th = theta(t)
    zeta = complex(math.cos(th), -math.sin(th)) * z_value
    value, clipped = _log_abs(abs(z_value), floor, t)
    return CriticalPoint(float(t), th, z_value, zeta, value, clipped)


def critical_point(t, floor=DEFAULT_FLOOR):
    """CriticalPoint by Riemann-Siegel, falling back to Euler-Maclaurin below t=50.

    Riemann-Siegel values smaller than its own error scale are recomputed
    with Euler-Maclaurin so that zeros are recognised and clipped.
    """
    if t >= RS_MIN_T:
        cp = zeta_riemann_siegel(t, floor)
        if abs(cp.z_value) < RS_REFINE_BELOW:
            return critical_point_em(t, floor=floor)
        return cp
    if not t > 0:
        raise DomainError(f"critical-line evaluation needs t > 0, got {t}")
    return critical_point_em(t, floor=floor)


def z_function(ts, threads=1):
    """Hardy's Z(t) on an array of t > 0, RS above 50 and Euler-Maclaurin below."""
    ts = np.asarray(ts, dtype=np.float64)
    flat = ts.ravel()
    if np.any(~(flat > 0)):
        raise DomainError("Z(t) needs t > 0")
    out = np.empty(flat.shape)
    low = flat < RS_MIN_T
    for i in np.flatnonzero(low):
        out[i] = critical_point_em(float(flat[i])).z_value
    high = np.flatnonzero(~low)
    if high.size:
        out[high] = _chunked(kernels.rs_z, flat[high], threads)
    return out.reshape(ts.shape)


def _chunked(fn, values, threads):
    """Apply a pointwise kernel in fixed-size chunks; order-preserving merge."""
    chunks = [values[i:i + CHUNK] for i in range(0, values.size, CHUNK)]
    if threads <= 1 or len(chunks) == 1:
        parts = [fn(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(fn, chunks))
    return np.concatenate(parts) if parts else np.empty(0)


def log_abs_zeta_batch(ts, floor=DEFAULT_FLOOR, threads=1):
    """log|zeta(1/2+it)| over an array; returns ``(values, clipped)``."""
    z = np.abs(z_function(ts, threads=threads))
    clipped = z <= clip_threshold(ts, floor)
    with np.errstate(divide="ignore"):
        values = np.where(clipped, floor, np.log(np.where(clipped, 1.0, z)))
    return values, clipped


def log_abs_zeta(t, floor=DEFAULT_FLOOR):
    """log|zeta(1/2+it)|, or ``floor`` when zeta is numerically zero at t."""
    return critical_point(t, floor).log_abs_zeta
