"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The public names at the bottom (``rs_z``, ``em_head``, ``dirichlet_poly``)
dispatch on :data:`zetamoments._accel.USE_NUMBA`.  Every kernel evaluates its
inner sum in ascending ``n`` so results do not depend on how the caller
chunks the input.
"""

import math

import numpy as np

from . import _rs_coeffs
from ._accel import USE_NUMBA, njit

TWO_PI = 2.0 * math.pi

RS_C0 = np.array(_rs_coeffs.C0)
RS_C1 = np.array(_rs_coeffs.C1)
RS_C2 = np.array(_rs_coeffs.C2)
RS_C3 = np.array(_rs_coeffs.C3)
RS_C4 = np.array(_rs_coeffs.C4)

_NUMPY_BLOCK = 512


def theta_asymptotic(t):
    """Stirling-series phase; valid (error < 1e-12) for t >= 16.  Works on arrays."""
    inv = 1.0 / t
    inv2 = inv * inv
    corr = inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0))))
    return 0.5 * t * np.log(t / TWO_PI) - 0.5 * t - math.pi / 8.0 + corr


_theta_nb = njit(theta_asymptotic)


@njit
def _horner(c, u):
    acc = 0.0
    for j in range(c.shape[0] - 1, -1, -1):
        acc = acc * u + c[j]
    return acc


@njit
def _rs_z_numba(ts, log_n, rsqrt_n, c0, c1, c2, c3, c4):
    out = np.empty(ts.shape[0])
    for i in range(ts.shape[0]):
        t = ts[i]
        a = math.sqrt(t / TWO_PI)
        big_n = int(a)
        u = a - big_n - 0.5
        th = _theta_nb(t)
        acc = 0.0
        for n in range(1, big_n + 1):
            acc += rsqrt_n[n] * math.cos(th - t * log_n[n])
        w = 1.0 / a
        r = _horner(c4, u)
        r = r * w + _horner(c3, u)
        r = r * w + _horner(c2, u)
        r = r * w + _horner(c1, u)
        r = r * w + _horner(c0, u)
        sign = 1.0 if (big_n - 1) % 2 == 0 else -1.0
        out[i] = 2.0 * acc + sign * math.sqrt(math.sqrt(TWO_PI / t)) * r
    return out


def _rs_z_numpy(ts, log_n, rsqrt_n, c0, c1, c2, c3, c4):
    out = np.empty(ts.shape[0])
    for lo in range(0, ts.shape[0], _NUMPY_BLOCK):
        t = ts[lo:lo + _NUMPY_BLOCK]
        a = np.sqrt(t / TWO_PI)
        big_n = a.astype(np.int64)
        u = a - big_n - 0.5
        th = theta_asymptotic(t)
        nmax = int(big_n.max())
        n = np.arange(1, nmax + 1)
        terms = rsqrt_n[n] * np.cos(th[:, None] - t[:, None] * log_n[n][None, :])
        terms[n[None, :] > big_n[:, None]] = 0.0
        acc = terms.sum(axis=1)
        w = 1.0 / a
        r = np.polynomial.polynomial.polyval(u, c4)
        for c in (c3, c2, c1, c0):
            r = r * w + np.polynomial.polynomial.polyval(u, c)
        sign = np.where((big_n - 1) % 2 == 0, 1.0, -1.0)
        out[lo:lo + _NUMPY_BLOCK] = 2.0 * acc + sign * (TWO_PI / t) ** 0.25 * r
    return out


def _rs_tables(tmax):
    nmax = int(math.sqrt(tmax / TWO_PI)) + 2
    n = np.arange(nmax + 1, dtype=np.float64)
    n[0] = 1.0
    return np.log(n), 1.0 / np.sqrt(n)


def rs_z(ts, use_numba=None):
    """Riemann-Siegel Z(t) with C0..C4 corrections for an array of t >= 50."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    if ts.size == 0:
        return np.empty(0)
    log_n, rsqrt_n = _rs_tables(float(ts.max()))
    fn = _rs_z_numba if (USE_NUMBA if use_numba is None else use_numba) else _rs_z_numpy
    return fn(ts, log_n, rsqrt_n, RS_C0, RS_C1, RS_C2, RS_C3, RS_C4)


@njit
def _em_head_numba(s, n_terms, order):
    out = np.zeros((s.shape[0], order + 1), dtype=np.complex128)
    fact = np.ones(order + 1)
    for j in range(1, order + 1):
        fact[j] = fact[j - 1] * j
    for i in range(s.shape[0]):
        si = s[i]
        for n in range(1, n_terms[i]):
            ln = math.log(n)
            term = np.exp(-si * ln)
            p = 1.0
            for j in range(order + 1):
                out[i, j] += term * (p / fact[j])
                p *= -ln
    return out


def _em_head_numpy(s, n_terms, order):
    out = np.zeros((s.shape[0], order + 1), dtype=np.complex128)
    fact = np.cumprod(np.r_[1.0, np.arange(1, order + 1)])
    chunk = 1 << 18
    for i in range(s.shape[0]):
        for lo in range(1, int(n_terms[i]), chunk):
            ln = np.log(np.arange(lo, min(lo + chunk, int(n_terms[i])), dtype=np.float64))
            term = np.exp(-s[i] * ln)
            for j in range(order + 1):
                out[i, j] += np.sum(term * ((-ln) ** j / fact[j]))
    return out


def em_head(s, n_terms, order=0, use_numba=None):
    """Taylor coefficients in s of sum_{1 <= n < N} n^{-s}, up to ``order``.

    Row i holds ``sum (-log n)^j n^{-s_i} / j!`` for j = 0..order.
    """
    s = np.ascontiguousarray(s, dtype=np.complex128)
    n_terms = np.ascontiguousarray(n_terms, dtype=np.int64)
    fn = _em_head_numba if (USE_NUMBA if use_numba is None else use_numba) else _em_head_numpy
    return fn(s, n_terms, int(order))


@njit
def _dirichlet_poly_numba(ts, logs, weights):
    out = np.empty(ts.shape[0], dtype=np.complex128)
    for i in range(ts.shape[0]):
        t = ts[i]
        re = 0.0
        im = 0.0
        for j in range(logs.shape[0]):
            ph = t * logs[j]
            c = math.cos(ph)
            sn = math.sin(ph)
            w = weights[j]
            re += w.real * c + w.imag * sn
            im += w.imag * c - w.real * sn
        out[i] = complex(re, im)
    return out


def _dirichlet_poly_numpy(ts, logs, weights):
    out = np.empty(ts.shape[0], dtype=np.complex128)
    block = max(1, (1 << 20) // max(1, logs.shape[0]))
    for lo in range(0, ts.shape[0], block):
        ph = np.multiply.outer(ts[lo:lo + block], logs)
        out[lo:lo + block] = (np.cos(ph) - 1j * np.sin(ph)) @ weights
    return out


def dirichlet_poly(ts, logs, weights, use_numba=None):
    """``sum_j weights[j] * exp(-i t logs[j])`` for every t in ``ts``."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    logs = np.ascontiguousarray(logs, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    fn = _dirichlet_poly_numba if (USE_NUMBA if use_numba is None else use_numba) else _dirichlet_poly_numpy
    return fn(ts, logs, weights)
