"""Piatetski-Shapiro primes: exact membership, enumeration, windows, weights.

For a rational gamma = a/b in (0, 1) in lowest terms (b <= 64), the thin prime
set studied here is

    A_gamma = { p prime : p = floor(m^(1/gamma)) for some integer m >= 1 }.

Membership never touches floating point.  n = floor(m^(b/a)) for some m iff
the interval [n^gamma, (n+1)^gamma) contains an integer, which after raising
to the b-th power becomes a big-integer comparison:

    m0 = ceil((n^a)^(1/b))  satisfies  m0^b < (n+1)^a.

Enumeration runs over m instead of n: every member of A_gamma below a bound
appears as floor(m^(b/a)) for m in a short exactly-computed range.  Since
(m+1)^(b/a) - m^(b/a) > 1 for b > a, those floors are strictly increasing, so
the m-loop visits each candidate exactly once.  The bulk path evaluates
m^(b/a) in float64 and re-checks any value within a guard band of an integer
with an exact integer root; the band is ~4.5e4 libm ulps wide, so the float
route can only prune, never decide a boundary.

Counting weight: w(p) = (1/gamma) * p^(1 - gamma).  Against the heuristic
density gamma * x^(gamma-1) of A_gamma this weight has mean value 1 on primes,
which is what makes the weighted counts below comparable with ordinary-prime
counts.

The almost-equal window around a Goldbach target n is the open interval
(n/3 - y, n/3 + y); membership of an integer p is the exact test
|3p - n| < 3y (strict on both sides by convention).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np

from .errors import CacheFormatError, ParameterError, ResourceError

MAX_DENOMINATOR = 64          # largest allowed b in gamma = a/b
PRIME_LIMIT = 2 ** 63         # enumeration beyond this is refused
FLOAT_GUARD = 1e-11           # relative guard band around integers for the float path
WEIGHT_BITS = 64              # fractional bits of the fixed-point scalar weight route

CACHE_MAGIC = b"PSGB"
CACHE_VERSION = 1

# Deterministic Miller-Rabin witness set, valid for every n < 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ================================================================
# parameter types
# ================================================================

@dataclass(frozen=True)
class GammaParam:
    """Exponent gamma = a/b in lowest terms with 0 < a < b <= 64."""

    a: int
    b: int

    def __post_init__(self):
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise ParameterError("gamma numerator and denominator must be ints")
        if not (0 < self.a < self.b <= MAX_DENOMINATOR):
            raise ParameterError(
                f"need 0 < a < b <= {MAX_DENOMINATOR}, got {self.a}/{self.b}")
        if math.gcd(self.a, self.b) != 1:
            raise ParameterError(f"{self.a}/{self.b} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "GammaParam":
        """Parse 'a/b' (e.g. '2/3')."""
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise ParameterError(f"gamma must look like 'a/b', got {text!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParameterError(f"gamma must look like 'a/b', got {text!r}") from exc
        return cls(a, b)

    def as_fraction(self) -> Fraction:
        return Fraction(self.a, self.b)

    def __float__(self) -> float:
        return self.a / self.b

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"


@dataclass(frozen=True)
class PrimeWindow:
    """Open window (n/3 - y, n/3 + y) around a Goldbach target n.

    Membership of an integer p is the exact test |3p - n| < 3y.  The window
    may extend below 2 (large y); it is then implicitly clipped by the prime
    domain p >= 2.  n may be even; counting layers flag that case.
    """

    n: int
    y: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ParameterError(f"window target n must be an int >= 2, got {self.n}")
        if not isinstance(self.y, int) or self.y < 1:
            raise ParameterError(f"window half-width y must be an int >= 1, got {self.y}")

    def contains(self, p: int) -> bool:
        return abs(3 * p - self.n) < 3 * self.y

    @property
    def p_lo(self) -> int:
        """Smallest integer >= 2 inside the window."""
        return max(2, -(-(self.n - 3 * self.y + 1) // 3))

    @property
    def p_hi(self) -> int:
        """Largest integer inside the window."""
        return (self.n + 3 * self.y - 1) // 3


# ================================================================
# exact integer roots
# ================================================================

def floor_kth_root(x: int, k: int) -> int:
    """Largest r >= 0 with r^k <= x (x >= 0, k >= 1)."""
    if x < 0 or k < 1:
        raise ParameterError("floor_kth_root needs x >= 0, k >= 1")
    r, _ = gmpy2.iroot(gmpy2.mpz(x), k)
    return int(r)


def ceil_kth_root(x: int, k: int) -> int:
    """Smallest r >= 0 with r^k >= x."""
    if x < 0 or k < 1:
        raise ParameterError("ceil_kth_root needs x >= 0, k >= 1")
    r, exact = gmpy2.iroot(gmpy2.mpz(x), k)
    return int(r) if exact else int(r) + 1


# ================================================================
# primality
# ================================================================

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 2^64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes p with lo <= p <= hi, via a segmented sieve over [lo, hi]."""
    lo = max(lo, 2)
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    if hi - lo > 2 ** 31:
        raise ResourceError(f"range [{lo}, {hi}] too wide to sieve")
    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in sieve_primes(math.isqrt(hi)):
        p = int(p)
        start = max(p * p, ((lo + p - 1) // p) * p)
        mask[start - lo:: p] = False
    return (np.nonzero(mask)[0] + lo).astype(np.int64)


def _prime_mask_for(values: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Boolean primality mask for sorted candidate values in [lo, hi]."""
    if len(values) == 0:
        return np.empty(0, dtype=bool)
    # A range sieve beats per-candidate tests once the candidates are dense.
    if len(values) >= 512 and hi - lo <= 2 ** 28:
        window_primes = primes_in_range(lo, hi)
        if len(window_primes) == 0:
            return np.zeros(len(values), dtype=bool)
        idx = np.minimum(np.searchsorted(window_primes, values), len(window_primes) - 1)
        return window_primes[idx] == values
    return np.fromiter((is_prime(int(v)) for v in values), dtype=bool, count=len(values))


# ================================================================
# membership and enumeration
# ================================================================

def ps_indicator(n: int, gamma: GammaParam) -> int:
    """1 if n = floor(m^(1/gamma)) for some integer m >= 1, else 0.

    Exact: n is hit iff the smallest m with m^b >= n^a also has
    m^b < (n+1)^a.  Exact rational powers (n^gamma integral) count as
    members; see chi_indicator for the cross-check route.
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"ps_indicator needs an int n >= 1, got {n}")
    a, b = gamma.a, gamma.b
    m0 = ceil_kth_root(n ** a, b)
    return 1 if m0 ** b < (n + 1) ** a else 0


def chi_indicator(n: int, gamma: GammaParam) -> int:
    """Counting-formula route: chi(n) = ceil((n+1)^gamma) - ceil(n^gamma).

    Since [-x] = -ceil(x), this equals [-n^gamma] - [-(n+1)^gamma] and counts
    integers m with n^gamma <= m < (n+1)^gamma, the same set ps_indicator
    decides.  Kept as an independently coded route for the boundary
    diagnostic.
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"chi_indicator needs an int n >= 1, got {n}")
    a, b = gamma.a, gamma.b
    return ceil_kth_root((n + 1) ** a, b) - ceil_kth_root(n ** a, b)


def indicator_disagreements(lo: int, hi: int, gamma: GammaParam) -> list:
    """Diagnostic: n in [lo, hi] where the two indicator routes differ.

    The two routes are provably identical (both count integers in
    [n^gamma, (n+1)^gamma)), so this returns [] and exists to make the
    boundary convention checkable rather than trusted.
    """
    return [n for n in range(max(lo, 1), hi + 1)
            if ps_indicator(n, gamma) != chi_indicator(n, gamma)]


def _m_bounds(lo: int, hi: int, gamma: GammaParam) -> tuple:
    """Exact m-range covering all floor(m^(b/a)) in [lo, hi]."""
    a, b = gamma.a, gamma.b
    m_lo = max(1, ceil_kth_root(lo ** a, b))
    m_hi = ceil_kth_root((hi + 1) ** a, b)
    return m_lo, m_hi


def ps_integers_in_range(lo: int, hi: int, gamma: GammaParam) -> np.ndarray:
    """All integers in [lo, hi] of the form floor(m^(1/gamma)), increasing.

    Bulk float64 powers with an exact re-check inside the guard band; for
    a = 1 the powers are integers and the float route is skipped.
    """
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    if hi >= PRIME_LIMIT:
        raise ResourceError(f"enumeration bound {hi} >= 2^63 unsupported")
    a, b = gamma.a, gamma.b
    m_lo, m_hi = _m_bounds(max(lo, 1), hi, gamma)
    if m_hi < m_lo:
        return np.empty(0, dtype=np.int64)

    if a == 1:
        if b == 2:
            m = np.arange(m_lo, m_hi + 1, dtype=np.int64)
            vals = m * m
        else:
            vals = np.array([mm ** b for mm in range(m_lo, m_hi + 1)], dtype=np.int64)
    elif hi <= 2 ** 52:
        m = np.arange(m_lo, m_hi + 1, dtype=np.int64)
        pf = np.power(m.astype(np.float64), b / a)
        vals = np.floor(pf).astype(np.int64)
        near = np.abs(pf - np.rint(pf)) <= (FLOAT_GUARD * pf + 1e-9)
        for i in np.nonzero(near)[0]:
            vals[i] = int(gmpy2.iroot(gmpy2.mpz(int(m[i])) ** b, a)[0])
    else:
        vals = np.array(
            [int(gmpy2.iroot(gmpy2.mpz(mm) ** b, a)[0]) for mm in range(m_lo, m_hi + 1)],
            dtype=np.int64)

    vals = vals[(vals >= lo) & (vals <= hi)]
    return np.unique(vals)  # floors are already strictly increasing; unique is belt and braces


# ================================================================
# weights
# ================================================================

def weight(p: int, gamma: GammaParam, bits: int = WEIGHT_BITS) -> float:
    """Counting weight (1/gamma) * p^(1 - gamma) via exact fixed point.

    Computes floor(p^((b-a)/b) * 2^bits) with one integer root, so the only
    rounding is the final float conversion: relative error < 2^-52 + 2^-bits.
    """
    if not isinstance(p, int) or p < 1:
        raise ParameterError(f"weight needs an int p >= 1, got {p}")
    if bits < 1:
        raise ParameterError("bits must be >= 1")
    a, b = gamma.a, gamma.b
    r = floor_kth_root((p ** (b - a)) << (b * bits), b)
    return (b * r) / (a * (1 << bits))


def weights_for(primes: np.ndarray, gamma: GammaParam) -> np.ndarray:
    """Vectorized weights (b/a) * p^((b-a)/b) in float64.

    libm pow is good to ~1 ulp, far inside the 2^-40 budget; the scalar
    fixed-point route above serves as the cross-check oracle.
    """
    if len(primes) == 0:
        return np.empty(0, dtype=np.float64)
    expo = (gamma.b - gamma.a) / gamma.b
    return (gamma.b / gamma.a) * np.power(primes.astype(np.float64), expo)


# ================================================================
# prime tables
# ================================================================

@dataclass
class PsPrimeTable:
    """PS primes of one gamma in [lo, hi], with counting weights.

    primes is strictly increasing int64; weights[i] = (1/gamma) *
    primes[i]^(1-gamma) (float64, recomputed on cache load, never stored).
    """

    gamma: GammaParam
    lo: int
    hi: int
    primes: np.ndarray
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes = np.asarray(self.primes, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.primes.shape != self.weights.shape:
            raise ParameterError("primes and weights must have equal length")
        if len(self.primes) and (
                np.any(np.diff(self.primes) <= 0)
                or self.primes[0] < self.lo or self.primes[-1] > self.hi):
            raise ParameterError("table primes must be strictly increasing inside [lo, hi]")

    def __len__(self) -> int:
        return len(self.primes)

    def validate(self) -> float:
        """Full membership re-check; returns the worst weight-identity residual.

        Verifies primality and PS membership of every entry and the identity
        weight(p) * gamma * p^(gamma-1) = 1.  Raises CacheFormatError on a
        bad entry.
        """
        g = self.gamma
        worst = 0.0
        expo = (g.a - g.b) / g.b  # gamma - 1
        for p, w in zip(self.primes.tolist(), self.weights.tolist()):
            if not is_prime(p) or not ps_indicator(p, g):
                raise CacheFormatError(f"table entry {p} fails primality/membership")
            worst = max(worst, abs(w * (g.a / g.b) * p ** expo - 1.0))
        return worst


def enumerate_ps_primes(lo: int, hi: int, gamma: GammaParam) -> PsPrimeTable:
    """PS primes in [lo, hi] by the m-loop, with primality by sieve or MR.

    Preconditions: 2 <= lo <= hi < 2^63.  hi < lo is a parameter error;
    hi >= 2^63 is a resource error.
    """
    if hi < lo:
        raise ParameterError(f"need lo <= hi, got [{lo}, {hi}]")
    if lo < 2:
        raise ParameterError(f"need lo >= 2, got {lo}")
    if hi >= PRIME_LIMIT:
        raise ResourceError(f"bound {hi} >= 2^63 unsupported")
    cand = ps_integers_in_range(lo, hi, gamma)
    mask = _prime_mask_for(cand, lo, hi)
    primes = cand[mask]
    return PsPrimeTable(gamma, lo, hi, primes, weights_for(primes, gamma))


def window_table(window: PrimeWindow, gamma: GammaParam) -> PsPrimeTable:
    """PS primes inside the almost-equal window (may be empty)."""
    lo, hi = window.p_lo, window.p_hi
    if hi < lo:
        empty = np.empty(0, dtype=np.int64)
        return PsPrimeTable(gamma, lo, max(lo, hi), empty, np.empty(0))
    cand = ps_integers_in_range(lo, hi, gamma)
    mask = _prime_mask_for(cand, lo, hi)
    primes = cand[mask]
    return PsPrimeTable(gamma, lo, hi, primes, weights_for(primes, gamma))


def window_primes(window: PrimeWindow) -> np.ndarray:
    """All (ordinary) primes inside the window."""
    return primes_in_range(window.p_lo, window.p_hi)


# ================================================================
# cache format
#
#   magic "PSGB" | version 0x01 | gamma "a/b" ASCII, NUL-terminated |
#   lo u64le | hi u64le | count u64le | count * prime u64le (strictly
#   increasing).  Weights are recomputed on load.
# ================================================================

def save_table(table: PsPrimeTable, path) -> None:
    """Write the binary cache file (deterministic bytes, no timestamps)."""
    header = CACHE_MAGIC + bytes([CACHE_VERSION])
    header += str(table.gamma).encode("ascii") + b"\x00"
    header += struct.pack("<QQQ", table.lo, table.hi, len(table))
    body = table.primes.astype("<u8").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(body)


def load_table(path) -> PsPrimeTable:
    """Read a cache file; raises CacheFormatError on any malformation."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != CACHE_MAGIC:
        raise CacheFormatError(f"{path}: bad magic {blob[:4]!r}")
    if len(blob) < 6 or blob[4] != CACHE_VERSION:
        raise CacheFormatError(f"{path}: unsupported version")
    nul = blob.find(b"\x00", 5)
    if nul < 0:
        raise CacheFormatError(f"{path}: unterminated gamma field")
    try:
        gamma = GammaParam.parse(blob[5:nul].decode("ascii"))
    except (ParameterError, UnicodeDecodeError) as exc:
        raise CacheFormatError(f"{path}: bad gamma field") from exc
    off = nul + 1
    if len(blob) < off + 24:
        raise CacheFormatError(f"{path}: truncated header")
    lo, hi, count = struct.unpack_from("<QQQ", blob, off)
    off += 24
    if len(blob) != off + 8 * count:
        raise CacheFormatError(f"{path}: body length mismatch")
    primes = np.frombuffer(blob, dtype="<u8", offset=off).astype(np.int64)
    if len(primes) and (np.any(np.diff(primes) <= 0)
                        or primes[0] < lo or primes[-1] > hi):
        raise CacheFormatError(f"{path}: primes not strictly increasing in range")
    try:
        return PsPrimeTable(gamma, int(lo), int(hi), primes, weights_for(primes, gamma))
    except ParameterError as exc:
        raise CacheFormatError(f"{path}: inconsistent table") from exc
