"""Zero tables and numerical checks of the zero-sum identities at Re(s) >= 2.

zeta'/zeta and its derivative come from the Euler-Maclaurin oracle, which is
accurate to ~1e-15 there.  The plain Dirichlet series over a PrimeTable is
kept as a cross-check with a rigorous truncation bound; its ~1e-5 tail is far
too coarse for the smoothed explicit-formula residual budget (~1e-10).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .errors import CoverageError, DomainError, ParameterError, ZeroTableError
from .primes import PrimeTable
from .zeta_eval import zeta_em_series

FIRST_ORDINATE = 14.134725
MIN_ZEROS_BEYOND = 100
TRIVIAL_ZERO_CUTOFF = 1e-16


@dataclass(frozen=True)
class ZeroTable:
    ordinates: np.ndarray = field(repr=False)
    source: str = "<memory>"

    def __post_init__(self):
        g = self.ordinates
        if g.size == 0:
            raise ZeroTableError("zero table is empty")
        if not np.all(g > 14.0):
            raise ZeroTableError("ordinates must all exceed 14")
        bad = np.flatnonzero(np.diff(g) <= 0)
        if bad.size:
            raise ZeroTableError(f"ordinates not strictly increasing at entry {bad[0] + 2}")
        if abs(g[0] - FIRST_ORDINATE) > 1e-6:
            raise ZeroTableError(f"first ordinate {g[0]} is not 14.134725...; wrong file format?")

    @property
    def count(self):
        return int(self.ordinates.size)

    def head(self, n):
        """The first ``n`` zeros as a new table."""
        return ZeroTable(self.ordinates[:n], f"{self.source}[:{n}]")


def load_zeros(path, limit=None):
    """Read a plain-text zero table: one ordinate per line, '#' comments."""
    values = []
    prev = -math.inf
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                g = float(text)
            except ValueError:
                raise ZeroTableError(f"cannot parse ordinate {text!r}", lineno) from None
            if not math.isfinite(g):
                raise ZeroTableError(f"non-finite ordinate {text!r}", lineno)
            if g <= prev:
                raise ZeroTableError(f"ordinate {text} is not greater than the previous one ({prev})", lineno)
            prev = g
            values.append(g)
            if limit is not None and len(values) >= limit:
                break
    if not values:
        raise ZeroTableError(f"{path}: no ordinates found")
    return ZeroTable(np.array(values), os.fspath(path))


def zero_density(u):
    """Smoothed number of zero ordinates per unit height, (1/2pi) log(u/2pi)."""
    return np.log(u / (2.0 * math.pi)) / (2.0 * math.pi)


def _tail_start(zeros):
    # half a mean gap past the last tabulated zero, where the smoothed count
    # is midway between the last zero and the next one
    g = zeros.ordinates[-1]
    return g + math.pi / math.log(g / (2.0 * math.pi))


def _density_tail(kernel, start):
    # u = start / v maps [start, inf) onto (0, 1]; quad on the raw infinite
    # range loses ~1e-7 absolute accuracy for start ~ 1e5
    def integrand(v):
        u = start / v
        return zero_density(u) * kernel(u) * start / (v * v)

    val, _ = integrate.quad(integrand, 0.0, 1.0, limit=200, epsabs=0, epsrel=1e-12)
    return val


def _check_coverage(s, zeros):
    beyond = zeros.count - int(np.searchsorted(zeros.ordinates, abs(s.imag), side="right"))
    if beyond < MIN_ZEROS_BEYOND:
        raise CoverageError(
            f"only {beyond} tabulated ordinates above |Im s| = {abs(s.imag)}; need {MIN_ZEROS_BEYOND}"
        )


def f_function(s, zeros: ZeroTable, tail=True):
    """F(s) = Re sum_rho 1/(s - rho), over rho = 1/2 +- i gamma.

    With ``tail`` the ordinates above the table are replaced by the smoothed
    zero density.
    """
    s = complex(s)
    d = s.real - 0.5
    if not d > 0:
        raise DomainError(f"F(s) needs Re(s) > 1/2, got {s}")
    _check_coverage(s, zeros)
    g = zeros.ordinates
    t = s.imag
    total = math.fsum(d / (d * d + (t - g) ** 2)) + math.fsum(d / (d * d + (t + g) ** 2))
    if tail:
        total += _density_tail(lambda u: d / (d * d + (t - u) ** 2) + d / (d * d + (t + u) ** 2), _tail_start(zeros))
    return total


def log_derivative(s):
    """(zeta'/zeta(s), (zeta'/zeta)'(s)) from the Euler-Maclaurin oracle."""
    c, _ = zeta_em_series(s, order=2)
    ld = c[1] / c[0]
    return complex(ld), complex(2.0 * c[2] / c[0] - ld * ld)


def dirichlet_log_derivative(s, table: PrimeTable):
    """-sum Lambda(n) n^{-s} and sum Lambda(n) log n n^{-s} over the table.

    Returns ``(zeta'/zeta, (zeta'/zeta)', bound0, bound1)`` with rigorous
    bounds on the two truncation errors.
    """
    s = complex(s)
    sigma = s.real
    if not sigma > 1:
        raise DomainError(f"Dirichlet series needs Re(s) > 1, got {s}")
    n = table.powers.astype(np.float64)
    log_n = np.log(n)
    terms = table.mangoldt * np.exp(-s * log_n)
    big_n = float(table.limit)
    ln = math.log(big_n)
    a = sigma - 1.0
    # sum_{n>N} log^j n / n^sigma <= integral_N^inf log^j u u^-sigma du for N > e^{j/sigma}
    bound0 = big_n ** (-a) * (ln / a + 1.0 / a**2)
    bound1 = big_n ** (-a) * (ln * ln / a + 2.0 * ln / a**2 + 2.0 / a**3)
    return complex(-terms.sum()), complex((terms * log_n).sum()), bound0, bound1


@dataclass(frozen=True)
class HadamardResult:
    residual: float
    lhs: float
    rhs: float
    f_value: float
    dirichlet_lhs: float | None = None
    dirichlet_bound: float | None = None


def hadamard_check(s, zeros: ZeroTable, table: PrimeTable | None = None, tail=True):
    """|Re zeta'/zeta(s) - (-Re 1/(s-1) + log(pi)/2 - Re psi(s/2+1)/2 + F(s))|."""
    s = complex(s)
    if s.real < 2:
        raise DomainError(f"hadamard_check is pinned to Re(s) >= 2, got {s}")
    ld, _ = log_derivative(s)
    f_val = f_function(s, zeros, tail=tail)
    rhs = -(1.0 / (s - 1.0)).real + 0.5 * math.log(math.pi) - 0.5 * special.digamma(0.5 * s + 1.0).real + f_val
    extra = {}
    if table is not None:
        d_ld, _, b0, _ = dirichlet_log_derivative(s, table)
        extra = {"dirichlet_lhs": d_ld.real, "dirichlet_bound": b0}
    return HadamardResult(abs(ld.real - rhs), ld.real, rhs, f_val, **extra)


def stirling_deviation(s, T):
    """(1/2) Re psi(s/2+1) + Re 1/(s-1) - (1/2) log pi, minus (1/2) log T.

    Exhibits the O(1) left after replacing the gamma factor by (1/2) log T.
    """
    s = complex(s)
    val = 0.5 * special.digamma(0.5 * s + 1.0).real + (1.0 / (s - 1.0)).real - 0.5 * math.log(math.pi)
    return val - 0.5 * math.log(T)


@dataclass(frozen=True)
class Lemma1Result:
    residual: float
    tail_estimate: float
    zeros_used: int
    lhs: complex
    pieces: dict


def rho_sum_tail_estimate(s, x, zeros: ZeroTable):
    """Bound-style estimate of the omitted (1/log x) sum over rho beyond the table."""
    s = complex(s)
    sig, t = s.real, s.imag
    w = 0.5 - sig

    def kern(u):
        return 1.0 / (w * w + (u - t) ** 2) + 1.0 / (w * w + (u + t) ** 2)

    return x**w / math.log(x) * _density_tail(kern, _tail_start(zeros))


def lemma1_check(s, x, zeros: ZeroTable, table: PrimeTable):
    """Residual of the smoothed explicit formula for -zeta'/zeta(s).

    RHS pieces: the weighted prime-power sum up to x, (zeta'/zeta)'/log x,
    the sum over nontrivial zeros, the pole term and the trivial zeros.  The
    sum over rho is truncated at the table edge; ``tail_estimate`` sizes
    what was left out.
    """
    s = complex(s)
    if s.real < 2:
        raise DomainError(f"lemma1_check is pinned to Re(s) >= 2, got {s}")
    if x < 2:
        raise ParameterError(f"need x >= 2, got {x}")
    table.require(x)
    _check_coverage(s, zeros)
    log_x = math.log(x)

    ld, ld_prime = log_derivative(s)
    stop = int(np.searchsorted(table.powers, math.floor(x), side="right"))
    n = table.powers[:stop].astype(np.float64)
    log_n = np.log(n)
    w = table.mangoldt[:stop] * (log_x - log_n) / log_x
    prime_sum = complex(np.sum(w * np.exp(-s * log_n)))

    g = zeros.ordinates
    rho_terms = []
    for sign in (1.0, -1.0):
        r = 0.5 + 1j * sign * g - s
        rho_terms.append(np.exp(r * log_x) / (r * r))
    rt = np.concatenate(rho_terms)
    rho_sum = complex(math.fsum(rt.real), math.fsum(rt.imag)) / log_x

    pole = -np.exp((1.0 - s) * log_x) / ((1.0 - s) ** 2 * log_x)
    trivial = 0j
    k = 1
    while True:
        term = np.exp((-2.0 * k - s) * log_x) / (2.0 * k + s) ** 2 / log_x
        trivial += term
        if abs(term) < TRIVIAL_ZERO_CUTOFF:
            break
        k += 1
    pieces = {
        "prime_sum": prime_sum,
        "log_derivative_term": ld_prime / log_x,
        "rho_sum": rho_sum,
        "pole_term": complex(pole),
        "trivial_zeros": complex(trivial),
    }
    rhs = sum(pieces.values())
    lhs = -ld
    return Lemma1Result(abs(lhs - rhs), rho_sum_tail_estimate(s, x, zeros), zeros.count, lhs, pieces)


def zero_term_coefficient(lam, x):
    """Coefficient of F(s0) after adding the two one-sided bounds.

    x^{1/2-sigma0}/((sigma0-1/2) log^2 x) - 1/log x - (sigma0-1/2)/2 with
    sigma0 = 1/2 + lam/log x.  Equals (e^{-lam} - lam - lam^2/2)/(lam log x),
    so it is <= 0 exactly when lam >= lambda0.
    """
    log_x = math.log(x)
    d = lam / log_x
    return x ** (-d) / (d * log_x * log_x) - 1.0 / log_x - 0.5 * d
