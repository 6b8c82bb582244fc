#!/usr/bin/env python3
"""Time the compiled kernels against their pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--points N] [--repeat R] [--t T]

Both backends are called on identical inputs; the largest absolute
difference between their outputs is printed next to the timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from zetamoments import kernels
from zetamoments._accel import HAVE_NUMBA
from zetamoments.primes import sieve


def best_of(fn, repeat):
    fn()  # warm-up (and JIT compilation)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n_points, t0):
    rng = np.random.default_rng(0)
    ts = t0 + 0.01 * np.arange(n_points)
    table = sieve(31623)
    logs = np.log(table.powers.astype(np.float64))
    w = (table.mangoldt / logs * np.exp(-0.55 * logs)).astype(np.complex128)
    s = 0.5 + 1j * rng.uniform(t0, 2 * t0, size=8)
    n_terms = np.full(s.size, int(t0 / np.pi) + 10)
    return {
        "rs_z": lambda use: kernels.rs_z(ts, use_numba=use),
        "dirichlet_poly": lambda use: kernels.dirichlet_poly(ts[: n_points // 10], logs, w, use_numba=use),
        "em_head": lambda use: kernels.em_head(s, n_terms, 2, use_numba=use),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--t", type=float, default=1e6, help="height of the evaluation window")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can run")
    print(f"{'kernel':<16}{'numpy [s]':>12}{'numba [s]':>12}{'speed-up':>10}{'max |diff|':>12}")
    for name, fn in cases(args.points, args.t).items():
        t_np = best_of(lambda: fn(False), args.repeat)
        if HAVE_NUMBA:
            t_nb = best_of(lambda: fn(True), args.repeat)
            diff = float(np.max(np.abs(np.asarray(fn(True)) - np.asarray(fn(False)))))
            print(f"{name:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}{diff:>12.2e}")
        else:
            print(f"{name:<16}{t_np:>12.4f}{'-':>12}{'-':>10}{'-':>12}")


if __name__ == "__main__":
    main()
