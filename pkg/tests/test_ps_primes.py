"""Membership, enumeration, weights, windows, and the cache round trip."""

import math
import random

import numpy as np
import pytest
import sympy

from psgoldbach import (CacheFormatError, GammaParam, ParameterError,
                        PrimeWindow, PsPrimeTable, ResourceError,
                        chi_indicator, enumerate_ps_primes,
                        indicator_disagreements, load_table, ps_indicator,
                        ps_integers_in_range, save_table, weight, weights_for,
                        window_table)
from psgoldbach.ps_primes import (ceil_kth_root, floor_kth_root, is_prime,
                                  primes_in_range, sieve_primes)

G12 = GammaParam(1, 2)
G23 = GammaParam(2, 3)
G910 = GammaParam(9, 10)
GAMMAS = (G12, G23, GammaParam(3, 5), G910, GammaParam(44, 45),
          GammaParam(59, 60))


def brute_member_set(hi: int, gamma: GammaParam) -> set:
    # independent oracle: walk m directly, p = floor(m^(b/a)) by exact roots
    a, b = gamma.a, gamma.b
    out = set()
    m = 1
    while True:
        p = floor_kth_root(m ** b, a)
        if p > hi:
            return out
        out.add(p)
        m += 1


def test_gamma_param_validation():
    assert float(G23) == pytest.approx(2 / 3)
    assert str(GammaParam.parse(" 9/10 ")) == "9/10"
    for bad in ("2", "2/3/4", "x/y", "1.5/2"):
        with pytest.raises(ParameterError):
            GammaParam.parse(bad)
    for a, b in ((0, 2), (3, 2), (2, 2), (2, 4), (1, 65), (-1, 2)):
        with pytest.raises(ParameterError):
            GammaParam(a, b)


def test_prime_window_bounds():
    w = PrimeWindow(15, 3)
    assert (w.p_lo, w.p_hi) == (3, 7)
    assert w.contains(3) and w.contains(7)
    assert not w.contains(2) and not w.contains(8)
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(3, 10 ** 6)
        y = rng.randrange(1, n)  # y >= n/3 allowed: window clips at p = 2
        w = PrimeWindow(n, y)
        assert w.p_lo >= 2
        assert w.contains(w.p_hi) and not w.contains(w.p_hi + 1)
        if w.p_lo > 2:
            assert w.contains(w.p_lo) and not w.contains(w.p_lo - 1)
    with pytest.raises(ParameterError):
        PrimeWindow(15, 0)
    with pytest.raises(ParameterError):
        PrimeWindow(1, 3)


def test_integer_roots():
    assert floor_kth_root(8, 3) == 2
    assert ceil_kth_root(8, 3) == 2
    assert ceil_kth_root(9, 3) == 3
    rng = random.Random(11)
    for _ in range(500):
        k = rng.randrange(1, 60)
        x = rng.randrange(0, 1 << 96)
        r = floor_kth_root(x, k)
        assert r ** k <= x < (r + 1) ** k
        c = ceil_kth_root(x, k)
        assert (c - 1) ** k < x <= c ** k or (x == 0 and c == 0)


def test_is_prime_against_sympy():
    for n in range(0, 2000):
        assert is_prime(n) == sympy.isprime(n)
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randrange(2, 1 << 62)
        assert is_prime(n) == sympy.isprime(n)


def test_primes_in_range_matches_sieve():
    full = sieve_primes(50000)
    seg = primes_in_range(17, 50000)
    assert np.array_equal(seg, full[full >= 17])
    assert primes_in_range(24, 28).size == 0


def test_indicator_examples():
    assert ps_indicator(4, G12) == 1
    assert ps_indicator(5, G23) == 1
    assert ps_indicator(6, G23) == 0
    # chi route agrees even at the exact-power boundary n = 4
    assert chi_indicator(4, G12) == 1
    assert indicator_disagreements(2, 200, G23) == []


def test_indicator_matches_direct_m_walk():
    for gamma in GAMMAS:
        members = brute_member_set(3000, gamma)
        for n in range(1, 3001):
            want = 1 if n in members else 0
            assert ps_indicator(n, gamma) == want, (n, str(gamma))
            assert chi_indicator(n, gamma) == want, (n, str(gamma))


def test_indicator_chi_agree_on_random_big_n():
    rng = random.Random(17)
    for _ in range(400):
        gamma = rng.choice(GAMMAS)
        n = rng.randrange(1, 10 ** 12)
        assert ps_indicator(n, gamma) == chi_indicator(n, gamma)


def test_ps_integers_match_indicator():
    for gamma in GAMMAS:
        got = ps_integers_in_range(2, 20000, gamma).tolist()
        want = [n for n in range(2, 20001) if ps_indicator(n, gamma)]
        assert got == want, str(gamma)


def test_enumerate_example_and_cross_check():
    t = enumerate_ps_primes(2, 31, G23)
    assert t.primes.tolist() == [2, 5, 11, 31]
    assert t.validate() < 1e-12
    # two-algorithm agreement: m-loop enumeration vs indicator filter
    for gamma in (G12, G23, G910, GammaParam(44, 45)):
        t = enumerate_ps_primes(2, 30000, gamma)
        want = [int(p) for p in sieve_primes(30000)
                if p >= 2 and ps_indicator(int(p), gamma)]
        assert t.primes.tolist() == want, str(gamma)


def test_enumerate_misuse():
    with pytest.raises(ParameterError):
        enumerate_ps_primes(2, 1, G12)
    with pytest.raises(ParameterError):
        enumerate_ps_primes(0, 10, G12)
    with pytest.raises(ResourceError):
        enumerate_ps_primes(2, 1 << 63, G12)


def test_density_sanity_9_10():
    t = enumerate_ps_primes(2, 10 ** 7, G910)
    n = 10 ** 7
    ratio = len(t) / (n ** 0.9 / math.log(n))
    assert 0.8 < ratio < 1.2


def test_window_table_examples():
    assert window_table(PrimeWindow(15, 3), G23).primes.tolist() == [5]
    assert window_table(PrimeWindow(12, 3), G23).primes.tolist() == [2, 5]
    assert len(window_table(PrimeWindow(9, 1), G23)) == 0
    # monotone in y
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randrange(10, 40000)
        y1 = rng.randrange(1, n // 2 + 1)
        y2 = y1 + rng.randrange(0, n // 2 + 1)
        small = set(window_table(PrimeWindow(n, y1), G23).primes.tolist())
        big = set(window_table(PrimeWindow(n, y2), G23).primes.tolist())
        assert small <= big


def test_weight_examples_and_identity():
    assert weight(4, G12) == 4.0
    assert weight(8, G23) == 3.0
    assert weight(5, G23) == pytest.approx(1.5 * 5 ** (1 / 3), rel=1e-15)
    assert weight(97, G910) == pytest.approx(97 ** 0.1 * 10 / 9, rel=1e-15)
    rng = random.Random(23)
    for _ in range(300):
        gamma = rng.choice(GAMMAS)
        p = rng.randrange(2, 10 ** 9)
        w = weight(p, gamma)
        g = gamma.a / gamma.b
        assert abs(w * g * p ** (g - 1) - 1.0) < 2 ** -30
        # higher fixed-point precision must not move the value materially
        assert weight(p, gamma, bits=96) == pytest.approx(w, rel=1e-14)


def test_bulk_weights_match_scalar_route():
    rng = random.Random(29)
    for gamma in GAMMAS:
        primes = np.array(sorted(rng.sample(range(2, 10 ** 8), 200)),
                          dtype=np.int64)
        bulk = weights_for(primes, gamma)
        for p, w in zip(primes.tolist(), bulk.tolist()):
            assert w == pytest.approx(weight(p, gamma), rel=1e-12)


def test_table_rejects_malformed_arrays():
    with pytest.raises(ParameterError):
        PsPrimeTable(G23, 2, 31, np.array([5, 5]), np.array([1.0, 1.0]))
    with pytest.raises(ParameterError):
        PsPrimeTable(G23, 2, 31, np.array([5, 40]), np.array([1.0, 1.0]))
    with pytest.raises(ParameterError):
        PsPrimeTable(G23, 2, 31, np.array([5]), np.array([1.0, 2.0]))


def test_table_validate_catches_bad_entries():
    t = enumerate_ps_primes(2, 2000, G23)
    bad = PsPrimeTable(G23, 2, 2000, t.primes.copy(), t.weights.copy())
    bad.primes[3] += 1
    with pytest.raises(CacheFormatError):
        bad.validate()


def test_cache_round_trip(tmp_path):
    path = tmp_path / "t.psgb"
    for gamma in (G23, GammaParam(59, 60)):
        t = enumerate_ps_primes(2, 50000, gamma)
        save_table(t, path)
        r = load_table(path)
        assert r.gamma == t.gamma and (r.lo, r.hi) == (t.lo, t.hi)
        assert np.array_equal(r.primes, t.primes)
        assert np.array_equal(r.weights, t.weights)  # recomputed, same route


def test_cache_rejects_malformed_files(tmp_path):
    path = tmp_path / "t.psgb"
    t = enumerate_ps_primes(2, 1000, G23)
    save_table(t, path)
    good = path.read_bytes()

    def rewrite(data: bytes):
        path.write_bytes(data)
        with pytest.raises(CacheFormatError):
            load_table(path)

    rewrite(b"NOPE" + good[4:])          # magic
    rewrite(good[:4] + b"\x02" + good[5:])  # version
    rewrite(good[:-3])                   # truncated body
    rewrite(good + b"\x00" * 8)          # trailing bytes
    rewrite(good[:5] + b"5/3\x00" + good[9:])  # gamma out of range
    # non-monotonic primes: swap the first two 8-byte entries
    head = len(good) - 8 * len(t)
    swapped = (good[:head] + good[head + 8:head + 16]
               + good[head:head + 8] + good[head + 16:])
    rewrite(swapped)
