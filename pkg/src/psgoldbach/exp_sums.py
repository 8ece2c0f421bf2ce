"""Exponential sums over almost-equal prime windows and circle-method tools.

With e(t) = exp(2 pi i t) and a window (n/3 - y, n/3 + y):

    g(alpha) = sum_{|p - n/3| < y, p prime}      e(alpha p)
    f(alpha) = sum_{|p - n/3| < y, p in A_gamma} (1/gamma) p^(1-gamma) e(alpha p)

Phase policy: alpha is reduced exactly.  Every alpha (a Python float converts
exactly, a Fraction passes through) becomes num/den, and alpha*p mod 1 is the
integer computation (num*p mod den)/den, so the only float error per term is
one division plus one complex exponential (< 2^-52 of a period).  Grids j/M
and Farey fractions a/q take a vectorized int64 route.

The discrete mean over M sample points of a trig polynomial with integer
frequencies recovers its constant term exactly once M exceeds the frequency
spread, which gives two finite identities used as cross-checks:

    (1/M) sum_j |S(j/M)|^2          = sum of squared coefficients,
    (1/M) sum_j S(j/M)^3 e(-n j/M)  = # ordered triples summing to n,

the second at M = 6y + 8 (frequencies of S^3 e(-n .) lie in [-3y-2, 3y+2]).
Both are evaluated by direct summation, not an FFT, so they stay independent
of the coefficient-side bookkeeping they are checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError, ResourceError
from .ps_primes import (GammaParam, PrimeWindow, PsPrimeTable, window_primes,
                        window_table)

_CHUNK_ELEMS = 1 << 20  # complex work-array budget for sampled evaluation


# ================================================================
# phases
# ================================================================

def _as_fraction(alpha) -> Fraction:
    """Exact rational form of alpha, reduced mod 1."""
    if isinstance(alpha, Fraction):
        frac = alpha
    elif isinstance(alpha, int):
        frac = Fraction(alpha)
    elif isinstance(alpha, float):
        if not math.isfinite(alpha):
            raise ParameterError(f"alpha must be finite, got {alpha}")
        frac = Fraction(alpha)  # exact binary rational
    else:
        raise ParameterError(f"alpha must be float, int, or Fraction, got {type(alpha)}")
    return frac % 1


def _phase_array(primes: np.ndarray, frac: Fraction) -> np.ndarray:
    """(p * num mod den) / den for each prime, as float64 in [0, 1)."""
    den, num = frac.denominator, frac.numerator % frac.denominator
    if den == 1 or len(primes) == 0:
        return np.zeros(len(primes), dtype=np.float64)
    if den < 2 ** 31:
        pm = (primes % den) * num % den
        return pm.astype(np.float64) / den
    return np.fromiter(((int(p) * num % den) / den for p in primes),
                       dtype=np.float64, count=len(primes))


# ================================================================
# sum values
# ================================================================

@dataclass(frozen=True)
class ExpSumValue:
    """One evaluation of f or g at a rational phase alpha."""

    kind: str                 # 'f' or 'g'
    alpha: Fraction
    window: PrimeWindow
    gamma: GammaParam | None  # None for g
    re: float
    im: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


def eval_g(alpha, window: PrimeWindow) -> ExpSumValue:
    """g(alpha): unit-weight sum over all primes in the window."""
    frac = _as_fraction(alpha)
    primes = window_primes(window)
    z = np.exp(2j * np.pi * _phase_array(primes, frac)).sum() if len(primes) else 0j
    return ExpSumValue("g", frac, window, None, float(z.real), float(z.imag))


def eval_f(alpha, window: PrimeWindow, gamma: GammaParam,
           table: PsPrimeTable | None = None) -> ExpSumValue:
    """f(alpha): weight (1/gamma) p^(1-gamma) sum over PS primes in the window.

    Pass a prebuilt window table to amortize enumeration across many alphas.
    """
    frac = _as_fraction(alpha)
    if table is None:
        table = window_table(window, gamma)
    if len(table):
        z = (np.exp(2j * np.pi * _phase_array(table.primes, frac)) * table.weights).sum()
    else:
        z = 0j
    return ExpSumValue("f", frac, window, gamma, float(z.real), float(z.imag))


# ================================================================
# mean squares (orthogonality) and the sampled cross-check
# ================================================================

def mean_square(kind: str, window: PrimeWindow,
                gamma: GammaParam | None = None) -> float:
    """int_0^1 |S|^2 via orthogonality: sum of squared coefficients.

    kind 'g' returns the window prime count (exactly); kind 'f' returns
    sum w(p)^2 over window PS primes, weight factor (1/gamma) included.
    """
    if kind == "g":
        return float(len(window_primes(window)))
    if kind == "f":
        if gamma is None:
            raise ParameterError("kind 'f' needs gamma")
        w = window_table(window, gamma).weights
        return float(np.dot(w, w))
    raise ParameterError(f"kind must be 'f' or 'g', got {kind!r}")


def _coefficients(kind: str, window: PrimeWindow, gamma: GammaParam | None):
    if kind == "g":
        primes = window_primes(window)
        return primes, np.ones(len(primes), dtype=np.float64)
    if kind == "f":
        if gamma is None:
            raise ParameterError("kind 'f' needs gamma")
        table = window_table(window, gamma)
        return table.primes, table.weights
    raise ParameterError(f"kind must be 'f' or 'g', got {kind!r}")


def _sampled_chunks(primes: np.ndarray, coeffs: np.ndarray, points: int):
    """Yield (j, S(j/M)) arrays in fixed-size chunks, j = 0..M-1."""
    if points >= 2 ** 31:
        raise ResourceError(f"sample count {points} too large for int64 phases")
    p_mod = primes % points
    rows = max(1, _CHUNK_ELEMS // max(1, len(primes)))
    unit = 2j * np.pi / points
    for j0 in range(0, points, rows):
        j = np.arange(j0, min(j0 + rows, points), dtype=np.int64)
        ph = (j[:, None] * p_mod[None, :]) % points
        yield j, np.exp(unit * ph) @ coeffs


def mean_square_quadrature(kind: str, window: PrimeWindow,
                           gamma: GammaParam | None = None,
                           samples: int | None = None) -> float:
    """(1/M) sum_{j<M} |S(j/M)|^2 by direct sampled evaluation.

    Requires M > 2 (n/3 + y), checked exactly as 3M > 2n + 6y; below that
    no-aliasing threshold the discrete mean is not exact, so the call is a
    parameter error rather than a silent approximation.  samples=None picks
    the smallest valid M.
    """
    if samples is None:
        samples = (2 * window.n + 6 * window.y) // 3 + 1
    if not isinstance(samples, int) or samples < 1:
        raise ParameterError(f"samples must be a positive int, got {samples}")
    if not 3 * samples > 2 * window.n + 6 * window.y:
        raise ParameterError(
            f"samples={samples} below the exactness threshold 2(n/3 + y) "
            f"for n={window.n}, y={window.y}")
    primes, coeffs = _coefficients(kind, window, gamma)
    if len(primes) == 0:
        return 0.0
    total = 0.0
    for _, s in _sampled_chunks(primes, coeffs, samples):
        total += float(np.sum(s.real * s.real + s.imag * s.imag))
    return total / samples


def circle_integral(window: PrimeWindow, gamma: GammaParam,
                    weighted: bool = True) -> float:
    """int_0^1 S(alpha)^3 e(-n alpha) d alpha, evaluated exactly by sampling.

    S is f (weighted=True) or the unit-coefficient sum over window PS primes
    (weighted=False).  The integrand is a trig polynomial with integer
    frequencies in [-3y-2, 3y+2] after the e(-n alpha) shift, so M = 6y + 8
    equally spaced points give the exact integral up to float rounding.
    The imaginary residual is asserted below 1e-6.
    """
    table = window_table(window, gamma)
    if len(table) == 0:
        return 0.0
    coeffs = table.weights if weighted else np.ones(len(table), dtype=np.float64)
    points = 6 * window.y + 8
    if points >= 2 ** 31:
        raise ResourceError(f"window half-width {window.y} too large to sample")
    n_mod = window.n % points
    unit = -2j * np.pi / points
    total = 0j
    for j, s in _sampled_chunks(table.primes, coeffs, points):
        total += np.sum(s * s * s * np.exp(unit * ((j * n_mod) % points)))
    total /= points
    assert abs(total.imag) < 1e-6, f"imaginary residual {total.imag:.3e}"
    return float(total.real)


# ================================================================
# rational approximation and complete character sums
# ================================================================

@dataclass(frozen=True)
class RationalApprox:
    """Reduced fraction a/q with q <= Q and |q alpha - a| <= 1/Q."""

    a: int
    q: int
    beta: float  # alpha - a/q


def dirichlet_approx(alpha, Q: int) -> RationalApprox:
    """Best continued-fraction convergent a/q of alpha with q <= Q.

    The last convergent before the denominator passes Q satisfies
    |q alpha - a| <= 1/Q (Dirichlet's bound with the convergent witness).
    """
    if not isinstance(Q, int) or Q < 1:
        raise ParameterError(f"Q must be a positive int, got {Q}")
    x = _as_fraction(alpha)
    num, den = x.numerator, x.denominator
    h2, k2, h1, k1 = 0, 1, 1, 0  # convergent recurrence seeds
    best_h, best_k = 0, 1
    u, v = num, den
    while v:
        step = u // v
        h, k = step * h1 + h2, step * k1 + k2
        if k > Q:
            break
        best_h, best_k = h, k
        h2, k2, h1, k1 = h1, k1, h, k
        u, v = v, u - step * v
    beta = float(x - Fraction(best_h, best_k))
    return RationalApprox(best_h, best_k, beta)


def geometric_char_sum(a: int, q: int) -> int:
    """Complete sum S(a, q) = sum_{m=1..q} e(a m / q) = q * [q divides a].

    Both the closed form and direct complex summation are computed; they must
    agree within 1e-9 * q, and the exact integer is returned.
    """
    if not isinstance(q, int) or q < 1:
        raise ParameterError(f"q must be a positive int, got {q}")
    if not isinstance(a, int) or a < 0:
        raise ParameterError(f"a must be a nonnegative int, got {a}")
    closed = q if a % q == 0 else 0
    m = np.arange(1, q + 1, dtype=np.int64)
    direct = np.exp(2j * np.pi * (((a % q) * m) % q) / q).sum()
    assert abs(direct - closed) <= 1e-9 * q, \
        f"char sum routes disagree at a={a}, q={q}: {direct} vs {closed}"
    return closed


# ================================================================
# major-arc diagnostic
# ================================================================

@dataclass(frozen=True)
class MajorArcRow:
    """|f - g| at one Farey fraction, with its normalized ratio."""

    a: int
    q: int
    diff: float
    ratio: float


def major_arc_diff_scan(window: PrimeWindow, gamma: GammaParam,
                        q_max: int) -> list:
    """D(a/q) = |f(a/q) - g(a/q)| over all reduced a/q in [0,1) with q <= q_max.

    ratio normalizes D by n^(21/31 - 14 gamma/31) * y^(23/31), the comparison
    scale for the f ~ g approximation on major arcs.  Rows are ordered by
    (q, a); q = 1 contributes the single fraction 0/1.
    """
    if not isinstance(q_max, int) or q_max < 1:
        raise ParameterError(f"q_max must be a positive int, got {q_max}")
    table = window_table(window, gamma)
    primes_g = window_primes(window)
    ones = np.ones(len(primes_g), dtype=np.float64)
    expo = (21.0 - 14.0 * float(gamma)) / 31.0
    denom = window.n ** expo * window.y ** (23.0 / 31.0)
    rows = []
    for q in range(1, q_max + 1):
        for a in range(q):
            if math.gcd(a, q) != 1:
                continue
            frac = Fraction(a, q)
            fz = (np.exp(2j * np.pi * _phase_array(table.primes, frac))
                  * table.weights).sum() if len(table) else 0j
            gz = (np.exp(2j * np.pi * _phase_array(primes_g, frac))
                  * ones).sum() if len(primes_g) else 0j
            diff = abs(fz - gz)
            rows.append(MajorArcRow(a, q, float(diff), float(diff / denom)))
    return rows
