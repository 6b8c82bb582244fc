"""Prime sieving and the von Mangoldt function."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ParameterError

MAX_LIMIT = 10**9
SEGMENT_THRESHOLD = 10**7
SEGMENT_SIZE = 1 << 22


@dataclass(frozen=True)
class PrimeTable:
    """Primes up to ``limit`` plus the support of Lambda(n) (prime powers).

    ``powers`` is sorted ascending; ``power_base[i] ** power_exp[i] == powers[i]``
    and ``mangoldt[i] == log(power_base[i])``.
    """

    limit: int
    primes: np.ndarray
    powers: np.ndarray = field(repr=False)
    power_base: np.ndarray = field(repr=False)
    power_exp: np.ndarray = field(repr=False)
    mangoldt: np.ndarray = field(repr=False)

    def mangoldt_support(self, upto=None):
        """Yield ``(n, Lambda(n))`` for prime powers n <= upto (default: limit)."""
        stop = len(self.powers) if upto is None else int(np.searchsorted(self.powers, upto, side="right"))
        for n, lam in zip(self.powers[:stop].tolist(), self.mangoldt[:stop].tolist()):
            yield n, lam

    def primes_upto(self, x):
        return self.primes[: int(np.searchsorted(self.primes, math.floor(x), side="right"))]

    def require(self, x):
        if math.floor(x) > self.limit:
            raise ParameterError(f"prime table limit {self.limit} is below floor(x) = {math.floor(x)}")


def _simple_sieve(limit):
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _segmented_sieve(limit, segment=SEGMENT_SIZE):
    base = _simple_sieve(math.isqrt(limit))
    out = [base]
    lo = math.isqrt(limit) + 1
    while lo <= limit:
        hi = min(lo + segment - 1, limit)
        seg = np.ones(hi - lo + 1, dtype=bool)
        for p in base.tolist():
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo::p] = False
        out.append(np.flatnonzero(seg).astype(np.int64) + lo)
        lo = hi + 1
    return np.concatenate(out)


def sieve(limit, segmented=None):
    """Build the PrimeTable for ``2 <= limit <= 1e9``.

    Limits above 1e7 use a segmented sieve unless ``segmented`` says otherwise.
    """
    limit = int(limit)
    if limit < 2:
        raise ParameterError(f"sieve limit must be >= 2, got {limit}")
    if limit > MAX_LIMIT:
        raise CapacityError(f"sieve limit {limit} exceeds the memory budget ({MAX_LIMIT})")
    if segmented is None:
        segmented = limit > SEGMENT_THRESHOLD
    primes = _segmented_sieve(limit) if segmented else _simple_sieve(limit)

    ns, bases, exps = [primes], [primes], [np.ones(primes.size, dtype=np.int64)]
    for p in primes[: np.searchsorted(primes, math.isqrt(limit), side="right")].tolist():
        k, q = 2, p * p
        pk, pb, pe = [], [], []
        while q <= limit:
            pk.append(q)
            pb.append(p)
            pe.append(k)
            q *= p
            k += 1
        ns.append(np.array(pk, dtype=np.int64))
        bases.append(np.array(pb, dtype=np.int64))
        exps.append(np.array(pe, dtype=np.int64))
    powers = np.concatenate(ns)
    order = np.argsort(powers, kind="stable")
    power_base = np.concatenate(bases)[order]
    return PrimeTable(
        limit=limit,
        primes=primes,
        powers=powers[order],
        power_base=power_base,
        power_exp=np.concatenate(exps)[order],
        mangoldt=np.log(power_base.astype(np.float64)),
    )


def _iroot(n, k):
    """floor(n ** (1/k)) computed exactly in integers (Newton from above)."""
    if k == 1 or n < 2:
        return n
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            return r
        r = nxt


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin for n < 3.3e24
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power_base(n):
    """Return ``(p, k)`` with ``n == p**k`` for prime p, or None."""
    n = int(n)
    if n < 2:
        return None
    for k in range(n.bit_length(), 0, -1):
        r = _iroot(n, k)
        if r >= 2 and r**k == n and _is_prime(r):
            return r, k
    return None


def von_mangoldt(n):
    """Lambda(n): log p if n is a power of the prime p, else 0."""
    if n < 1:
        raise ParameterError(f"von_mangoldt needs n >= 1, got {n}")
    pk = prime_power_base(n)
    return math.log(pk[0]) if pk else 0.0
