"""Local-density product values, tail bounds, and cutoff stability."""

import math
import random

import pytest
import sympy

from psgoldbach import ParameterError, prime_factors, singular_series


def direct_product(n: int, cutoff: int) -> float:
    # independent oracle: plain float products over sympy's prime stream
    value = 1.0
    for p in sympy.primerange(2, cutoff + 1):
        if n % p == 0:
            value *= 1.0 - 1.0 / (p - 1) ** 2 if p > 2 else 0.0
        else:
            value *= 1.0 + 1.0 / (p - 1) ** 3
    for p in sympy.factorint(n):
        if p > cutoff:
            value *= 1.0 - 1.0 / (p - 1) ** 2
    return value


def test_even_vanishes_exactly():
    for n in (10, 2, 100, 123456):
        s = singular_series(n, 1000)
        assert s.value == 0.0 and s.tail_bound == 0.0


def test_value_bands():
    assert 1.36 < singular_series(105, 10 ** 6).value < 1.38
    assert 1.2 < singular_series(3, 10 ** 5).value < 2.6


def test_matches_direct_product():
    rng = random.Random(31)
    ns = [3, 15, 105, 225, 9999, 100003] + [rng.randrange(3, 10 ** 6) | 1
                                            for _ in range(20)]
    for n in ns:
        got = singular_series(n, 10 ** 4).value
        assert got == pytest.approx(direct_product(n, 10 ** 4), rel=1e-12), n


def test_depends_only_on_prime_divisors():
    v3 = singular_series(3, 10 ** 5).value
    assert singular_series(9, 10 ** 5).value == pytest.approx(v3, rel=1e-15)
    assert singular_series(27, 10 ** 5).value == pytest.approx(v3, rel=1e-15)


def test_cutoff_doubling_within_tail_bound():
    rng = random.Random(37)
    for _ in range(100):
        n = rng.randrange(3, 200000) | 1
        p = rng.choice((500, 2000, 10000))
        s = singular_series(n, p)
        s4 = singular_series(n, 4 * p)
        assert abs(s.value - s4.value) <= s.tail_bound, (n, p)
        assert s4.tail_bound < s.tail_bound


def test_odd_band_sample():
    rng = random.Random(41)
    for _ in range(500):
        n = rng.randrange(3, 100000) | 1
        v = singular_series(n, 10 ** 5).value
        assert 1.2 < v < 2.6, n


def test_call_order_does_not_matter():
    # the shared prime cache grows monotonically; later big-cutoff calls must
    # not disturb small-cutoff results
    a = singular_series(315, 500).value
    singular_series(315, 200000)
    assert singular_series(315, 500).value == a


def test_prime_factors():
    assert prime_factors(360) == (2, 3, 5)
    assert prime_factors(97) == (97,)
    assert prime_factors(1) == ()
    rng = random.Random(43)
    for _ in range(100):
        n = rng.randrange(2, 10 ** 9)
        assert prime_factors(n) == tuple(sorted(sympy.factorint(n))), n


def test_parameter_errors():
    with pytest.raises(ParameterError):
        singular_series(0, 1000)
    with pytest.raises(ParameterError):
        singular_series(-5, 1000)
    with pytest.raises(ParameterError):
        singular_series(15, 2)
