"""Mean values of prime Dirichlet polynomials and their diagonal terms.

For ``P(t) = sum_{p<=x} a(p) p^{-1/2-it}`` the k-th power expands as
``sum_{n<=x^k} a_k(n) n^{-1/2-it}`` with ``a_k(n) = multinomial(k; alpha) prod a(p_i)^alpha_i``
for ``n = prod p_i^alpha_i``.  The mean of ``|P|^{2k}`` over [T, 2T] is about
``T sum |a_k(n)|^2 / n``, which is at most ``T k! (sum |a(p)|^2/p)^k``.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np
from scipy import integrate

from . import kernels
from .errors import BudgetError, HypothesisError, ParameterError
from .primes import PrimeTable
from .zeta_eval import _chunked

EXPANSION_BUDGET = 10**7


@dataclass(frozen=True)
class PrimeCoeffs:
    x: float
    coeffs: dict

    @classmethod
    def from_table(cls, table: PrimeTable, x, values):
        """Attach ``values`` (sequence or callable of p) to the primes <= x."""
        table.require(x)
        primes = table.primes_upto(x).tolist()
        if callable(values):
            vals = [values(p) for p in primes]
        else:
            vals = list(values)
            if len(vals) != len(primes):
                raise ParameterError(f"{len(vals)} coefficients for {len(primes)} primes <= {x}")
        return cls(x, dict(zip(primes, vals)))

    @classmethod
    def random_unit_disk(cls, table: PrimeTable, x, rng):
        """Coefficients drawn uniformly from the complex unit disk."""
        n = len(table.primes_upto(x))
        r = np.sqrt(rng.uniform(size=n))
        phi = rng.uniform(0.0, 2.0 * math.pi, size=n)
        return cls.from_table(table, x, (r * np.exp(1j * phi)).tolist())

    @property
    def primes(self):
        return sorted(self.coeffs)


@dataclass(frozen=True)
class PowerExpansion:
    k: int
    terms: dict = field(repr=False)


def _abs2(c):
    if isinstance(c, complex):
        return c.real * c.real + c.imag * c.imag
    return c * c


def multinomial(counts):
    """(sum counts)! / prod(count!) as an exact integer."""
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def power_expand(coeffs: PrimeCoeffs, k, budget=EXPANSION_BUDGET):
    """Coefficients a_k(n) of the k-th power, keyed by n in ascending order."""
    if k < 1:
        raise ParameterError(f"need k >= 1, got {k}")
    primes = coeffs.primes
    size = math.comb(len(primes) + k - 1, k)
    if size > budget:
        raise BudgetError(f"{size} terms in the k={k} expansion exceed the budget of {budget}")
    terms = {}
    for combo in combinations_with_replacement(primes, k):
        alpha = Counter(combo)
        n = 1
        value = multinomial(list(alpha.values()))
        for p, a in alpha.items():
            n *= p**a
            value = value * coeffs.coeffs[p] ** a
        terms[n] = value
    return PowerExpansion(k, dict(sorted(terms.items())))


def convolve_power(coeffs: PrimeCoeffs, k):
    """The same expansion by k successive Dirichlet-polynomial products."""
    poly = {1: 1}
    for _ in range(k):
        nxt = {}
        for m, cm in poly.items():
            for p, cp in coeffs.coeffs.items():
                nxt[m * p] = nxt.get(m * p, 0) + cm * cp
        poly = nxt
    return dict(sorted(poly.items()))


def diagonal_sum(expansion: PowerExpansion):
    """sum_n |a_k(n)|^2 / n."""
    return math.fsum(_abs2(c) / n for n, c in expansion.terms.items())


def prime_mean_square(coeffs: PrimeCoeffs):
    """sum_p |a(p)|^2 / p."""
    return math.fsum(_abs2(c) / p for p, c in coeffs.coeffs.items())


def diagonal_bound(coeffs: PrimeCoeffs, k):
    """k! (sum_p |a(p)|^2/p)^k, through logarithms once k! is large."""
    if k < 1:
        raise ParameterError(f"need k >= 1, got {k}")
    s = prime_mean_square(coeffs)
    if s == 0:
        return 0.0
    if k <= 20:
        return math.factorial(k) * s**k
    log_val = math.lgamma(k + 1) + k * math.log(s)
    return math.exp(log_val) if log_val < 709.0 else math.inf


def hypothesis_holds(x, k, T):
    """x^k <= T / log T."""
    return k * math.log(x) <= math.log(T) - math.log(math.log(T))


def default_spacing(x, k, factor=0.05):
    """A fraction of the shortest oscillation period of |P|^{2k}."""
    top = max(k * math.log(max(x, 2.0) / 2.0), math.log(1.5))
    return factor * 2.0 * math.pi / top


def polynomial_values(coeffs: PrimeCoeffs, ts):
    """P(t) = sum a(p) p^{-1/2-it} on an array of t."""
    primes = np.array(coeffs.primes, dtype=np.float64)
    w = np.array([complex(coeffs.coeffs[int(p)]) for p in primes], dtype=np.complex128) / np.sqrt(primes)
    return kernels.dirichlet_poly(ts, np.log(primes), w)


def expansion_values(expansion: PowerExpansion, ts):
    """sum a_k(n) n^{-1/2-it} on an array of t."""
    ns = np.array(list(expansion.terms), dtype=np.float64)
    w = np.array([complex(c) for c in expansion.terms.values()], dtype=np.complex128) / np.sqrt(ns)
    return kernels.dirichlet_poly(ts, np.log(ns), w)


def polynomial_moment(coeffs: PrimeCoeffs, k, interval, grid=None, force=False, threads=1):
    """Simpson quadrature of |P(t)|^{2k} over ``interval``.

    ``grid`` is a TGrid (or anything with ``points()`` and ``spacing``); the
    default resolves the fastest oscillation of the integrand.  Raises
    HypothesisError when x^k > T/log T unless ``force`` is set.
    """
    a, b = interval
    if not hypothesis_holds(coeffs.x, k, a):
        msg = f"x^k = {coeffs.x}^{k} exceeds T/log T at T={a}"
        if not force:
            raise HypothesisError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    if grid is None:
        h0 = default_spacing(coeffs.x, k)
        m = int(math.ceil((b - a) / h0))
        m += m % 2
        ts = np.linspace(a, b, m + 1)
        h = (b - a) / m
    else:
        ts = grid.points()
        h = grid.spacing
    vals = _chunked(lambda c: np.abs(polynomial_values(coeffs, c)) ** (2 * k), ts, threads)
    return float(integrate.simpson(vals, dx=h))
