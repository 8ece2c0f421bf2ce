"""Counting n = p1 + p2 + p3 with almost-equal Piatetski-Shapiro primes.

Let c_k = 1 when base + k is a window PS prime (base = ceil(n/3) - y, index
k in [0, 2y)).  The ordered representation count is the single coefficient

    count(n) = [x^(n - 3 base)] (sum_k c_k x^k)^3,

computed by exact integer convolution: schoolbook (np.convolve on int64) for
arrays shorter than 2^12, otherwise Kronecker substitution, which packs the
coefficients into 48-bit fields of one big integer, cubes it with GMP, and
extracts the one needed field.  Both routes are pure integer arithmetic; no
rounding argument is ever needed for count.

The weighted count replaces c_k by the weight w(base + k) and uses a real
FFT of sufficient length (float path; cross-checked against the circle-method
integral and against brute force).

predicted(n, y) = S3(n) * 3 y^2 / log^3 n is the main-term prediction the
scan compares against: 3y^2 is the lattice area of |t1|, |t2|, |t1 + t2| < y
and each prime contributes density 1/log n.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import gmpy2
import numpy as np
from scipy import fft as _fft

from .errors import ParameterError
from .ps_primes import GammaParam, PrimeWindow, PsPrimeTable, window_table
from .singular_series import DEFAULT_CUTOFF, singular_series

SCHOOLBOOK_LIMIT = 2 ** 12     # below this length, direct int64 convolution
BRUTE_FORCE_LIMIT = 10 ** 4    # quadratic-loop guard for the oracle route
_KRON_BITS = 48                # per-coefficient field width for Kronecker packing


@dataclass(frozen=True)
class RepCount:
    """Exact and weighted ordered representation counts for one (n, y, gamma)."""

    n: int
    y: int
    gamma: GammaParam
    count: int
    weighted: float
    predicted: float
    witnesses: tuple | None = None
    flags: tuple = ()


@dataclass(frozen=True)
class ScanRow:
    """One theorem_scan row; ratio = weighted / predicted."""

    n: int
    y: int
    count: int
    weighted: float
    predicted: float
    ratio: float
    flags: str


# ================================================================
# convolution engines
# ================================================================

def exact_triple_coefficient(arr: np.ndarray, index: int) -> int:
    """[x^index] (sum arr_k x^k)^3 for a nonnegative int array, exactly."""
    length = len(arr)
    if index < 0 or index > 3 * (length - 1):
        return 0
    if length < SCHOOLBOOK_LIMIT:
        cube = np.convolve(np.convolve(arr, arr), arr)  # int64 exact at this size
        return int(cube[index])
    total = int(arr.sum())
    bits = max(2 * total.bit_length() + 2, 8)
    width = max(_KRON_BITS, ((bits + 7) // 8) * 8)  # max coefficient <= total^2
    nbytes = width // 8
    buf = np.zeros(length * nbytes, dtype=np.uint8)
    buf[0::nbytes] = arr.astype(np.uint8)  # entries are 0/1 in all callers
    packed = gmpy2.mpz(int.from_bytes(buf.tobytes(), "little"))
    cube = packed * packed * packed
    return int((cube >> (width * index)) & ((1 << width) - 1))


def float_triple_coefficient(arr: np.ndarray, index: int) -> float:
    """Same coefficient for real arrays, via schoolbook or a real FFT."""
    length = len(arr)
    if index < 0 or index > 3 * (length - 1):
        return 0.0
    if length < SCHOOLBOOK_LIMIT:
        cube = np.convolve(np.convolve(arr, arr), arr)
        return float(cube[index])
    size = _fft.next_fast_len(3 * length - 2, real=True)
    spectrum = _fft.rfft(arr, size)
    cube = _fft.irfft(spectrum * spectrum * spectrum, size)
    return float(cube[index])


def _window_arrays(window: PrimeWindow, gamma: GammaParam,
                   table: PsPrimeTable | None = None):
    """(base, 0/1 indicator array, weight array) over indices [0, 2y)."""
    if table is None:
        table = window_table(window, gamma)
    base = -(-window.n // 3) - window.y  # ceil(n/3) - y, may be negative
    length = 2 * window.y
    ind = np.zeros(length, dtype=np.int64)
    wts = np.zeros(length, dtype=np.float64)
    if len(table):
        k = table.primes - base
        ind[k] = 1
        wts[k] = table.weights
    return base, ind, wts


# ================================================================
# counting
# ================================================================

def _witness_triples(table: PsPrimeTable, n: int) -> tuple:
    """All ordered PS-prime triples summing to n, via a two-sum inner scan."""
    primes = table.primes
    pset = set(primes.tolist())
    out = []
    for p1 in primes.tolist():
        for p2 in primes.tolist():
            p3 = n - p1 - p2
            if p3 in pset:
                out.append((p1, p2, p3))
    return tuple(out)


def count_reps(n: int, y: int, gamma: GammaParam,
               collect_witnesses: bool = False,
               cutoff: int = DEFAULT_CUTOFF) -> RepCount:
    """Exact ordered count, weighted count, and main-term prediction.

    Even n is allowed but flagged ('even-n'); a zero count is flagged
    ('zero-count').  An empty window yields count 0, not an error.
    """
    window = PrimeWindow(n, y)
    table = window_table(window, gamma)
    base, ind, wts = _window_arrays(window, gamma, table)
    index = n - 3 * base
    count = exact_triple_coefficient(ind, index) if len(table) else 0
    weighted = float_triple_coefficient(wts, index) if len(table) else 0.0
    predicted = singular_series(n, cutoff).value * 3.0 * y * y / math.log(n) ** 3
    flags = []
    if n % 2 == 0:
        flags.append("even-n")
    if count == 0:
        flags.append("zero-count")
    witnesses = None
    if collect_witnesses:
        witnesses = _witness_triples(table, n) if len(table) else ()
    return RepCount(n, y, gamma, count, weighted, predicted, witnesses, tuple(flags))


def weighted_count(n: int, y: int, gamma: GammaParam) -> float:
    """sum over ordered PS-prime triples p1+p2+p3 = n of w(p1) w(p2) w(p3)."""
    window = PrimeWindow(n, y)
    table = window_table(window, gamma)
    if len(table) == 0:
        return 0.0
    base, _, wts = _window_arrays(window, gamma, table)
    return float_triple_coefficient(wts, n - 3 * base)


def brute_force_reps(n: int, y: int, gamma: GammaParam,
                     collect_witnesses: bool = False,
                     cutoff: int = DEFAULT_CUTOFF) -> RepCount:
    """Oracle route: direct two-sum scan over the window table.

    Guarded: tables larger than 10^4 entries raise a parameter error rather
    than run the quadratic loop.
    """
    window = PrimeWindow(n, y)
    table = window_table(window, gamma)
    if len(table) > BRUTE_FORCE_LIMIT:
        raise ParameterError(
            f"window table has {len(table)} entries, beyond the "
            f"{BRUTE_FORCE_LIMIT} brute-force guard")
    primes, weights = table.primes, table.weights
    count = 0
    weighted = 0.0
    for i, p1 in enumerate(primes.tolist()):
        targets = n - p1 - primes
        idx = np.searchsorted(primes, targets)
        idx[idx >= len(primes)] = 0
        hit = primes[idx] == targets
        count += int(hit.sum())
        weighted += float(weights[i] * np.dot(weights[hit], weights[idx[hit]]))
    predicted = singular_series(n, cutoff).value * 3.0 * y * y / math.log(n) ** 3
    flags = []
    if n % 2 == 0:
        flags.append("even-n")
    if count == 0:
        flags.append("zero-count")
    witnesses = _witness_triples(table, n) if collect_witnesses else None
    return RepCount(n, y, gamma, count, weighted, predicted, witnesses, tuple(flags))


# ================================================================
# theorem scan
# ================================================================

def _scan_one(packed) -> ScanRow:
    n, a, b, theta, cutoff = packed
    gamma = GammaParam(a, b)
    y = math.ceil(n ** theta)
    rep = count_reps(n, y, gamma, cutoff=cutoff)
    ratio = rep.weighted / rep.predicted if rep.predicted > 0 else float("nan")
    return ScanRow(n, y, rep.count, rep.weighted, rep.predicted, ratio,
                   ";".join(rep.flags))


def scan_targets(n_lo: int, n_hi: int, samples: int | None = None) -> list:
    """Odd scan targets in [n_lo, n_hi]: all of them, or `samples` log-spaced."""
    if n_hi < n_lo or n_lo < 3:
        raise ParameterError(f"need 3 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]")
    if samples is None:
        return [n for n in range(n_lo, n_hi + 1) if n % 2 == 1]
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    grid = np.geomspace(n_lo, n_hi, samples)
    out = []
    for x in grid:
        n = int(round(x))
        n += 1 - n % 2  # round up to odd
        n = min(max(n, n_lo + (1 - n_lo % 2)), n_hi - (1 - n_hi % 2))
        if not out or n > out[-1]:
            out.append(n)
    return out


def theorem_scan(n_lo: int, n_hi: int, gamma: GammaParam, theta: float,
                 samples: int | None = None, workers: int = 1,
                 cutoff: int = DEFAULT_CUTOFF) -> list:
    """Scan rows (n, y, count, weighted, predicted, ratio, flags), odd n only.

    y = ceil(n^theta).  The solvability guidance theta >= (52 - 45 gamma)/8
    (when that exponent is below 1) is advisory; any theta in (0, 1) runs as
    a diagnostic.  Output is ordered by n and independent of worker count.
    """
    if not (0.0 < theta < 1.0):
        raise ParameterError(f"theta must lie in (0, 1), got {theta}")
    if workers < 1:
        raise ParameterError("workers must be >= 1")
    targets = scan_targets(n_lo, n_hi, samples)
    packed = [(n, gamma.a, gamma.b, theta, cutoff) for n in targets]
    if workers == 1 or len(packed) <= 1:
        return [_scan_one(p) for p in packed]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_one, packed))
