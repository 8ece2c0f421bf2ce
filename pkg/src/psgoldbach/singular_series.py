"""Ternary Goldbach singular series with a rigorous truncation bound.

    S3(n) = prod_{p | n} (1 - (p-1)^-2) * prod_{p not| n} (1 + (p-1)^-3)

The first product runs over every prime divisor of n (found by trial
division), the second is truncated at p <= P.  The even case is exact: p = 2
contributes 1 - 1 = 0, so S3(even) = 0 with no floating point involved.

Tail control: the dropped factor satisfies

    1 <= prod_{p > P} (1 + (p-1)^-3) <= exp(sum_{m >= P} m^-3)
      <= exp(1/(2 (P-1)^2)),

so |S3_infinity - S3_P| <= S3_P * (exp(1/(2 (P-1)^2)) - 1), which is the
reported tail_bound.

Evaluation detail: the truncated product over all p <= P is kept as a
cumulative sum of log1p terms over a cached, grow-only prime array.  Values
at two cutoffs therefore share their common prefix exactly, and the
cutoff-doubling check |S3_P - S3_4P| <= tail_bound(P) is dominated by the
true tail rather than by rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .ps_primes import sieve_primes

DEFAULT_CUTOFF = 100_000

# grow-only cache: primes <= limit and prefix sums of log1p(1/(p-1)^3)
_cache = {"limit": 0, "primes": np.empty(0, dtype=np.int64),
          "cumlog": np.empty(0, dtype=np.float64)}


def _ensure(limit: int) -> None:
    if limit <= _cache["limit"]:
        return
    primes = sieve_primes(limit)
    terms = np.log1p(1.0 / np.power(primes.astype(np.float64) - 1.0, 3))
    _cache["limit"] = limit
    _cache["primes"] = primes
    _cache["cumlog"] = np.cumsum(terms)


def prime_factors(n: int) -> tuple:
    """Distinct prime divisors of n >= 1 by trial division, increasing."""
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"prime_factors needs an int n >= 1, got {n}")
    out = []
    rem = n
    for p in (2, 3):
        if rem % p == 0:
            out.append(p)
            while rem % p == 0:
                rem //= p
    p = 5
    while p * p <= rem:
        if rem % p == 0:
            out.append(p)
            while rem % p == 0:
                rem //= p
        p += 2 if p % 6 == 5 else 4  # 5, 7, 11, 13, ... wheel
    if rem > 1:
        out.append(rem)
    return tuple(out)


@dataclass(frozen=True)
class SingularSeriesValue:
    """Truncated singular series value plus its rigorous tail bound."""

    n: int
    cutoff: int
    value: float
    tail_bound: float


def singular_series(n: int, cutoff: int = DEFAULT_CUTOFF) -> SingularSeriesValue:
    """S3(n) truncated at primes <= cutoff.

    Parameters
    ----------
    n : positive integer target.
    cutoff : truncation point P >= 3.

    Returns
    -------
    SingularSeriesValue with value = 0.0 exactly for even n, and
    tail_bound = value * (exp(1/(2 (P-1)^2)) - 1).
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"singular_series needs an int n >= 1, got {n}")
    if not isinstance(cutoff, int) or cutoff < 3:
        raise ParameterError(f"cutoff must be an int >= 3, got {cutoff}")
    if n % 2 == 0:
        return SingularSeriesValue(n, cutoff, 0.0, 0.0)

    _ensure(cutoff)
    primes, cumlog = _cache["primes"], _cache["cumlog"]
    k = int(np.searchsorted(primes, cutoff, side="right"))
    logval = float(cumlog[k - 1])  # k >= 1 because cutoff >= 3 covers p = 2

    factors = prime_factors(n)
    coprime_fix = 1.0
    for p in factors:
        if p <= cutoff:
            logval -= math.log1p(1.0 / (p - 1) ** 3)
        coprime_fix *= 1.0 - 1.0 / (p - 1) ** 2

    value = math.exp(logval) * coprime_fix
    tail = value * math.expm1(1.0 / (2.0 * (cutoff - 1) ** 2))
    return SingularSeriesValue(n, cutoff, value, tail)
