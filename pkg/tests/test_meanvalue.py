import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetamoments.errors import BudgetError, HypothesisError, ParameterError
from zetamoments.meanvalue import (
    PrimeCoeffs,
    convolve_power,
    diagonal_bound,
    diagonal_sum,
    expansion_values,
    multinomial,
    polynomial_moment,
    polynomial_values,
    power_expand,
    prime_mean_square,
)
from zetamoments.primes import sieve
from zetamoments.statistics import TGrid

TABLE = sieve(1000)


def exact_mean_square(terms, interval):
    """integral over [a, b] of |sum_n c_n n^{-1/2-it}|^2, term by term in closed form."""
    a, b = interval
    ns = list(terms)
    total = 0j
    for m in ns:
        for n in ns:
            w = complex(terms[m]) * complex(terms[n]).conjugate() / math.sqrt(m * n)
            omega = math.log(n / m)
            if m == n:
                total += w * (b - a)
            else:
                total += w * (complex(math.cos(omega * b), math.sin(omega * b)) - complex(math.cos(omega * a), math.sin(omega * a))) / (1j * omega)
    return total.real


def test_from_table_keys():
    c = PrimeCoeffs.from_table(TABLE, 10, lambda p: p)
    assert c.primes == [2, 3, 5, 7] and c.coeffs[7] == 7
    with pytest.raises(ParameterError):
        PrimeCoeffs.from_table(TABLE, 10, [1, 2])
    with pytest.raises(ParameterError):
        PrimeCoeffs.from_table(TABLE, 5000, lambda p: 1)


def test_random_unit_disk(rng):
    c = PrimeCoeffs.random_unit_disk(TABLE, 1000, rng)
    a = np.array(list(c.coeffs.values()))
    assert np.all(np.abs(a) <= 1)
    # uniform on the disk: E|a|^2 = 1/2
    assert np.mean(np.abs(a) ** 2) == pytest.approx(0.5, abs=0.05)


class TestExpansion:
    def test_k1_is_identity(self):
        c = PrimeCoeffs.from_table(TABLE, 20, lambda p: complex(p, -1))
        assert power_expand(c, 1).terms == c.coeffs

    def test_hand_expansion(self):
        c = PrimeCoeffs.from_table(TABLE, 3, [1, 1])
        e = power_expand(c, 2)
        assert e.terms == {4: 1, 6: 2, 9: 1}
        assert diagonal_sum(e) == pytest.approx(1 / 4 + 4 / 6 + 1 / 9, rel=1e-15)
        assert diagonal_bound(c, 2) == pytest.approx(25 / 18, rel=1e-15)

    def test_coefficient_sum(self):
        c = PrimeCoeffs.from_table(TABLE, 13, [Fraction(1, p) for p in (2, 3, 5, 7, 11, 13)])
        total = sum(c.coeffs.values())
        for k in (1, 2, 3, 4):
            assert sum(power_expand(c, k).terms.values()) == total**k

    @pytest.mark.parametrize("x", [2, 3, 5, 7, 10])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_bit_exact_against_convolution(self, x, k):
        vals = [complex(1 + i, -2 * i + 1) for i in range(len(TABLE.primes_upto(x)))]
        c = PrimeCoeffs.from_table(TABLE, x, vals)
        assert power_expand(c, k).terms == convolve_power(c, k)

    def test_support_is_k_almost_primes(self):
        c = PrimeCoeffs.from_table(TABLE, 30, lambda p: 1)
        for n in power_expand(c, 3).terms:
            f, m = 0, n
            for p in c.primes:
                while m % p == 0:
                    m //= p
                    f += 1
            assert m == 1 and f == 3

    def test_budget(self):
        c = PrimeCoeffs.from_table(TABLE, 1000, lambda p: 1)
        with pytest.raises(BudgetError):
            power_expand(c, 4)
        with pytest.raises(ParameterError):
            power_expand(c, 0)

    def test_multinomial(self):
        assert multinomial([2, 1]) == 3
        assert multinomial([1] * 30) == math.factorial(30)


class TestDiagonal:
    def test_k1_equality(self, rng):
        c = PrimeCoeffs.random_unit_disk(TABLE, 50, rng)
        assert diagonal_sum(power_expand(c, 1)) == pytest.approx(diagonal_bound(c, 1), rel=1e-15)

    def test_zero_coefficients(self):
        c = PrimeCoeffs.from_table(TABLE, 20, lambda p: 0)
        assert diagonal_sum(power_expand(c, 3)) == 0
        assert diagonal_bound(c, 3) == 0

    def test_single_prime_ratio_is_k_factorial(self):
        # one prime carries all the mass: multinomial = 1, so the bound is k! times the diagonal
        c = PrimeCoeffs.from_table(TABLE, 10, [0, 0, 1.5 + 0.5j, 0])
        for k in (1, 2, 3, 4):
            ratio = diagonal_bound(c, k) / diagonal_sum(power_expand(c, k))
            assert ratio == pytest.approx(math.factorial(k), rel=1e-12)

    def test_log_space(self):
        c = PrimeCoeffs.from_table(TABLE, 10, [1, 1, 1, 1])
        s = prime_mean_square(c)
        assert diagonal_bound(c, 30) == pytest.approx(math.factorial(30) * s**30, rel=1e-12)
        assert diagonal_bound(c, 400) == math.inf

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=4, max_size=4),
        st.integers(min_value=1, max_value=4),
    )
    def test_inequality_exact(self, pairs, k):
        # Gaussian-integer coefficients keep every a_k(n) an exact integer pair
        c = PrimeCoeffs.from_table(TABLE, 10, [complex(a, b) for a, b in pairs])
        terms = power_expand(c, k).terms

        def norm(v):
            return Fraction(int(v.real)) ** 2 + Fraction(int(v.imag)) ** 2

        lhs = sum(norm(v) / n for n, v in terms.items())
        rhs = math.factorial(k) * sum(norm(v) / p for p, v in c.coeffs.items()) ** k
        assert lhs <= rhs
        if k == 1:
            assert lhs == rhs


class TestMoment:
    def test_single_prime_constant_modulus(self):
        c = PrimeCoeffs.from_table(TABLE, 2, [1])
        assert polynomial_moment(c, 1, (1e4, 1e4 + 100)) == pytest.approx(50.0, rel=1e-12)

    def test_zero_coefficients(self):
        c = PrimeCoeffs.from_table(TABLE, 10, [0, 0, 0, 0])
        assert polynomial_moment(c, 2, (1e4, 1e4 + 100)) == 0

    @pytest.mark.parametrize("k", [1, 2])
    def test_against_closed_form(self, rng, k):
        c = PrimeCoeffs.random_unit_disk(TABLE, 31, rng)
        interval = (1e5, 1e5 + 2000)
        want = exact_mean_square(power_expand(c, k).terms, interval)
        assert polynomial_moment(c, k, interval) == pytest.approx(want, rel=1e-8)

    @pytest.mark.parametrize("t_lo,atol", [(1e3, 1e-10), (1e5, 1e-8)])
    def test_expansion_pointwise(self, rng, t_lo, atol):
        # at t ~ 1e5 the phases t log n ~ 1e6 carry ~1e-10 rounding, which
        # the two evaluation orders do not share
        c = PrimeCoeffs.random_unit_disk(TABLE, 31, rng)
        ts = rng.uniform(t_lo, 2 * t_lo, size=500)
        for k in (1, 2, 3):
            lhs = np.abs(polynomial_values(c, ts)) ** (2 * k)
            rhs = np.abs(expansion_values(power_expand(c, k), ts)) ** 2
            np.testing.assert_allclose(lhs, rhs, rtol=0, atol=atol)

    def test_explicit_grid_and_threads(self, rng):
        c = PrimeCoeffs.random_unit_disk(TABLE, 31, rng)
        g = TGrid(1e5, 1e5 + 100, 0.01)
        a = polynomial_moment(c, 2, (1e5, 1e5 + 100), grid=g)
        b = polynomial_moment(c, 2, (1e5, 1e5 + 100), grid=g, threads=3)
        assert a == b
        assert a == pytest.approx(polynomial_moment(c, 2, (1e5, 1e5 + 100)), rel=1e-9)

    def test_hypothesis(self):
        c = PrimeCoeffs.from_table(TABLE, 1000, lambda p: 1)
        with pytest.raises(HypothesisError):
            polynomial_moment(c, 2, (1e5, 1e5 + 1))
        with pytest.warns(RuntimeWarning, match="exceeds"):
            polynomial_moment(c, 2, (1e5, 1e5 + 1), force=True)
