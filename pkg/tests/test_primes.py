import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetamoments.errors import CapacityError, ParameterError
from zetamoments.primes import prime_power_base, sieve, von_mangoldt


def trial_division_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def mangoldt_oracle(n):
    # smallest factor, then check nothing else divides
    if n < 2:
        return 0.0
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return math.log(p) if n == 1 else 0.0


@pytest.mark.parametrize("limit,expected", [(2, [2]), (10, [2, 3, 5, 7]), (30, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])])
def test_small_sieves(limit, expected):
    assert sieve(limit).primes.tolist() == expected


def test_matches_trial_division():
    assert sieve(5000).primes.tolist() == trial_division_primes(5000)


def test_prime_count_1e6(primes_1e6):
    assert primes_1e6.primes.size == 78498


def test_segmented_agrees_with_plain():
    a = sieve(3 * 10**5, segmented=False)
    b = sieve(3 * 10**5, segmented=True)
    assert np.array_equal(a.primes, b.primes)
    assert np.array_equal(a.powers, b.powers)


def test_limits():
    with pytest.raises(ParameterError):
        sieve(1)
    with pytest.raises(CapacityError):
        sieve(10**9 + 1)


def test_prime_power_table():
    table = sieve(100)
    assert np.all(np.diff(table.powers) > 0)
    assert np.array_equal(table.power_base ** table.power_exp, table.powers)
    want = [(n, mangoldt_oracle(n)) for n in range(1, 101) if mangoldt_oracle(n) > 0]
    got = list(table.mangoldt_support())
    assert [n for n, _ in got] == [n for n, _ in want]
    np.testing.assert_allclose([v for _, v in got], [v for _, v in want], rtol=0, atol=0)
    assert [n for n, _ in table.mangoldt_support(10)] == [2, 3, 4, 5, 7, 8, 9]


def test_primes_upto_and_require():
    table = sieve(100)
    assert table.primes_upto(31.5).tolist()[-1] == 31
    table.require(100.9)
    with pytest.raises(ParameterError):
        table.require(101)


@pytest.mark.parametrize("n,want", [(1, 0.0), (2, math.log(2)), (8, math.log(2)), (12, 0.0), (49, math.log(7)), (2**61 - 1, math.log(2**61 - 1))])
def test_von_mangoldt_examples(n, want):
    assert von_mangoldt(n) == want


def test_von_mangoldt_domain():
    with pytest.raises(ParameterError):
        von_mangoldt(0)


@given(st.integers(min_value=1, max_value=20000))
def test_von_mangoldt_property(n):
    assert von_mangoldt(n) == mangoldt_oracle(n)


@given(st.integers(min_value=2, max_value=50), st.integers(min_value=1, max_value=20))
def test_prime_power_base_round_trip(base, k):
    pk = prime_power_base(base**k)
    lam = mangoldt_oracle(base)
    if lam == 0:
        assert pk is None
    else:
        p = round(math.exp(lam))
        assert pk == (p, k * round(math.log(base) / math.log(p)))
