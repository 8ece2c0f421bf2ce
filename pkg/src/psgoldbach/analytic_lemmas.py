"""Sawtooth approximation and the Vaughan identity, validated numerically.

Sawtooth: psi(x) = x - floor(x) - 1/2.

Trig approximation (Vaaler-type): for H >= 1 put J(t) = pi t (1-t) cot(pi t)
+ t on (0, 1) and

    a_h = -(2 pi i h)^-1 J(|h|/(H+1)),   0 < |h| <= H,
    b_h = (1 - |h|/(H+1)) / (2H + 2),    |h| <= H.

Then |psi(x) - sum a_h e(hx)| <= sum b_h e(hx) pointwise; the right side is
a scaled Fejer kernel, hence nonnegative, with b_h <= 1/(2H) and |a_h| <=
1/(2 pi |h|) (J takes values in [0, 1]).  The inequality is tight at integer
x, and nothing here trusts it: build_psi_approx users are expected to verify
it on a grid, which the test suite and `psgb psi-check` do.

Difference operator (monotone substitution in the counting argument):

    Delta f(x) = f(-(x+1)^gamma) - f(-x^gamma).

Vaughan identity: with parameters u, v >= 1 and n > u,

    Lambda(n) = T1 - T2 - T3,
    T1 = sum_{d | n, d <= v} mu(d) log(n/d),
    T2 = sum_{k | n} a(k),      a(k) = sum_{cd = k, c <= u, d <= v} Lambda(c) mu(d),
    T3 = sum_{kc = n, k > 1, c > u} Lambda(c) b(k),   b(k) = sum_{d | k, d <= v} mu(d).

The identity is exact for every n > u (any v); vaughan_verify sweeps it
against a sieved Lambda to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .ps_primes import GammaParam, sieve_primes

PSI_COEFF_BOUND = 1.0 / (2.0 * math.pi)  # |a_h| * |h| <= this
PSI_MAJORANT_BOUND = 0.5                 # b_h * H <= this


# ================================================================
# sawtooth and its trig approximation
# ================================================================

def psi(x):
    """psi(x) = x - floor(x) - 1/2, in [-1/2, 1/2); scalar or array."""
    if np.isscalar(x):
        return float(x - math.floor(x) - 0.5)
    x = np.asarray(x, dtype=np.float64)
    return x - np.floor(x) - 0.5


def _taper(t: float) -> float:
    """J(t) = pi t (1 - t) cot(pi t) + t on (0, 1)."""
    return math.pi * t * (1.0 - t) * math.cos(math.pi * t) / math.sin(math.pi * t) + t


@dataclass(frozen=True)
class PsiApproxParams:
    """Coefficients a_h (0 < |h| <= H) and b_h (|h| <= H) of one approximation.

    a maps h to a complex coefficient with a_{-h} = conj(a_h); b maps h to a
    nonnegative real with b_{-h} = b_h.  smooth_eval / majorant_eval /
    error_eval evaluate sum a_h e(hx), sum b_h e(hx), and psi - smooth.
    """

    H: int
    a: dict
    b: dict

    def _harmonics(self):
        h = np.arange(1, self.H + 1, dtype=np.float64)
        aj = np.array([2.0 * math.pi * k * self.a[k].imag for k in range(1, self.H + 1)])
        bj = np.array([self.b[k] for k in range(1, self.H + 1)])
        return h, aj, bj

    def smooth_eval(self, x):
        """sum_{0 < |h| <= H} a_h e(hx); real-valued by conjugate symmetry."""
        h, aj, bj = self._harmonics()
        x = np.asarray(x, dtype=np.float64)
        out = -np.sin(2.0 * math.pi * np.multiply.outer(x, h)) @ (aj / (math.pi * h))
        return float(out) if out.ndim == 0 else out

    def majorant_eval(self, x):
        """sum_{|h| <= H} b_h e(hx) = scaled Fejer kernel, >= 0."""
        h, aj, bj = self._harmonics()
        x = np.asarray(x, dtype=np.float64)
        out = self.b[0] + 2.0 * np.cos(2.0 * math.pi * np.multiply.outer(x, h)) @ bj
        return float(out) if out.ndim == 0 else out

    def error_eval(self, x):
        """psi(x) - smooth part; the majorant must dominate its absolute value."""
        return psi(x) - self.smooth_eval(x)


def build_psi_approx(H: int) -> PsiApproxParams:
    """Vaaler-type coefficients at truncation H >= 1."""
    if not isinstance(H, int) or H < 1:
        raise ParameterError(f"H must be a positive int, got {H}")
    a = {}
    b = {0: 1.0 / (2.0 * H + 2.0)}
    for h in range(1, H + 1):
        taper = _taper(h / (H + 1.0))
        a[h] = complex(0.0, taper / (2.0 * math.pi * h))  # -(2 pi i h)^-1 * J
        a[-h] = a[h].conjugate()
        b[h] = (1.0 - h / (H + 1.0)) / (2.0 * H + 2.0)
        b[-h] = b[h]
    return PsiApproxParams(H, a, b)


_DELTA_PARTS = ("full", "smooth", "error")


def delta_psi(x, gamma: GammaParam, params: PsiApproxParams | None = None,
              part: str = "full") -> float:
    """Delta psi(x) = psi(-(x+1)^gamma) - psi(-x^gamma), or one split part.

    part 'smooth' uses the trig polynomial of `params`, 'error' the pointwise
    remainder psi - smooth, so full = smooth + error holds exactly by
    construction.  Power evaluation is float64 (diagnostic-quality): near an
    integer value of x^gamma the sawtooth jump can flip on the last ulp.
    """
    if part not in _DELTA_PARTS:
        raise ParameterError(f"part must be one of {_DELTA_PARTS}, got {part!r}")
    if not (x > 0):
        raise ParameterError(f"x must be positive, got {x}")
    g = gamma.a / gamma.b
    hi, lo = -((x + 1.0) ** g), -(x ** g)
    if part == "full":
        return psi(hi) - psi(lo)
    if params is None:
        raise ParameterError(f"part {part!r} needs psi-approximation params")
    if part == "smooth":
        return float(params.smooth_eval(hi) - params.smooth_eval(lo))
    return float(params.error_eval(hi) - params.error_eval(lo))


# ================================================================
# arithmetic sieves
# ================================================================

def von_mangoldt_sieve(limit: int) -> np.ndarray:
    """Lambda(0..limit) as float64: log p at prime powers p^k, else 0."""
    if limit < 0:
        raise ParameterError("limit must be >= 0")
    lam = np.zeros(limit + 1, dtype=np.float64)
    for p in sieve_primes(limit).tolist():
        logp = math.log(p)
        pk = p
        while pk <= limit:
            lam[pk] = logp
            pk *= p
    return lam


def mobius_sieve(limit: int) -> np.ndarray:
    """mu(0..limit) as int8 (mu(0) set to 0)."""
    if limit < 0:
        raise ParameterError("limit must be >= 0")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in sieve_primes(limit).tolist():
        mu[p::p] *= -1
        sq = p * p
        if sq <= limit:
            mu[sq::sq] = 0
    return mu


def _divisors(n: int) -> list:
    """All divisors of n >= 1, increasing (trial-division factorization)."""
    divs = [1]
    rem = n
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            powers = []
            pk = 1
            while rem % p == 0:
                rem //= p
                pk *= p
                powers.append(pk)
            divs += [d * q for d in divs for q in powers]
        p += 1 if p == 2 else 2
    if rem > 1:
        divs += [d * rem for d in divs]
    return sorted(divs)


# ================================================================
# Vaughan identity
# ================================================================

@dataclass(frozen=True)
class VaughanParams:
    """Range-splitting parameters u, v >= 1.

    Applications of the identity choose u v <= n, but exactness only needs
    n > u, so that constraint is not enforced here.
    """

    u: float
    v: float

    def __post_init__(self):
        if not (self.u >= 1.0 and self.v >= 1.0):
            raise ParameterError(f"need u, v >= 1, got u={self.u}, v={self.v}")


def vaughan_decompose(n: int, params: VaughanParams,
                      lam: np.ndarray | None = None,
                      mu: np.ndarray | None = None) -> tuple:
    """The three Vaughan terms (T1, -T2, -T3); their sum equals Lambda(n).

    Requires n > u.  Optional precomputed Lambda / mu arrays (indices up to
    n) amortize sieving across a sweep.
    """
    if not isinstance(n, int) or n < 2:
        raise ParameterError(f"n must be an int >= 2, got {n}")
    u, v = params.u, params.v
    if n <= u:
        raise ParameterError(f"the identity needs n > u, got n={n}, u={u}")
    if lam is None:
        lam = von_mangoldt_sieve(n)
    if mu is None:
        mu = mobius_sieve(n)
    divs = _divisors(n)

    t1 = sum(float(mu[d]) * math.log(n / d) for d in divs if d <= v)

    t2 = 0.0
    for k in divs:
        for c in _divisors(k):
            d = k // c
            if c <= u and d <= v:
                t2 += float(lam[c]) * float(mu[d])

    t3 = 0.0
    for k in divs:
        if k == 1:
            continue
        c = n // k
        if c > u:
            bk = sum(int(mu[d]) for d in _divisors(k) if d <= v)
            t3 += float(lam[c]) * bk

    return t1, -t2, -t3


def vaughan_verify(n_max: int, params: VaughanParams) -> float:
    """Max |T1 - T2 - T3 - Lambda(n)| over floor(u) < n <= n_max.

    Independent route from vaughan_decompose: a(k) and b(k) are accumulated
    by divisor sieves over the whole range instead of per-n factorization,
    so the sweep doubles as a cross-check of the per-n path (tests compare
    the two on samples).
    """
    if n_max < 2:
        raise ParameterError("n_max must be >= 2")
    u, v = params.u, params.v
    lam = von_mangoldt_sieve(n_max)
    mu = mobius_sieve(n_max)
    vcap = min(int(math.floor(v)), n_max)
    ucap = min(int(math.floor(u)), n_max)

    btab = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, vcap + 1):
        if mu[d]:
            btab[d::d] += int(mu[d])

    atab = np.zeros(n_max + 1, dtype=np.float64)
    for c in range(2, ucap + 1):
        lc = float(lam[c])
        if lc > 0.0:
            for d in range(1, min(vcap, n_max // c) + 1):
                if mu[d]:
                    atab[c * d] += lc * int(mu[d])

    divlists = [[] for _ in range(n_max + 1)]
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            divlists[m].append(d)

    logt = np.zeros(n_max + 1, dtype=np.float64)
    logt[1:] = np.log(np.arange(1, n_max + 1, dtype=np.float64))

    worst = 0.0
    for n in range(max(ucap + 1, 2), n_max + 1):
        ln = float(logt[n])
        t1 = t2 = t3 = 0.0
        for k in divlists[n]:
            if k <= v and mu[k]:
                t1 += int(mu[k]) * (ln - float(logt[k]))
            t2 += float(atab[k])
            if k > 1:
                c = n // k
                if c > u:
                    t3 += float(lam[c]) * int(btab[k])
        worst = max(worst, abs(t1 - t2 - t3 - float(lam[n])))
    return worst
