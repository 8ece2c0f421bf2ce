"""Self-contained invariant suites behind the `verify` CLI command.

Five suites: Parseval, oracle equivalence, Vaughan, psi majorant, char sums.
Each returns its worst residual against a fixed tolerance; the CLI exits 1
if any suite fails.  A fault hook (used by tests and --inject-fault) may
corrupt the PS table feeding the convolution route of the oracle-equivalence
suite.  That suite revalidates every table entry (primality, membership,
weight identity) and then compares counts against the brute-force route,
whose table is rebuilt independently, so an injected flip always surfaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic_lemmas, exp_sums, repr_counter
from .errors import CacheFormatError
from .ps_primes import GammaParam, PrimeWindow, PsPrimeTable, window_table


@dataclass(frozen=True)
class SuiteResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def flip_table_entry(table: PsPrimeTable) -> PsPrimeTable:
    """Fault injector: nudge one prime entry while keeping the table well formed."""
    if len(table) == 0:
        return table
    primes = table.primes.copy()
    i = len(primes) // 2
    primes[i] += 1
    if i + 1 < len(primes) and primes[i] >= primes[i + 1]:
        primes[i] -= 2
    return PsPrimeTable(table.gamma, table.lo, table.hi, primes, table.weights.copy())


def _suite_charsum() -> SuiteResult:
    worst = 0.0
    for q in range(1, 60):
        for a in range(0, 2 * q + 1, max(1, q // 7)):
            closed = q if a % q == 0 else 0
            got = exp_sums.geometric_char_sum(a, q)
            worst = max(worst, abs(got - closed) / q)
    return SuiteResult("char-sums", worst, 1e-9)


def _suite_parseval(gamma: GammaParam) -> SuiteResult:
    worst = 0.0
    for n, y in ((4001, 160), (9001, 320)):
        w = PrimeWindow(n, y)
        samples = 2 * (n // 3 + y) + 3
        for kind in ("f", "g"):
            exact = exp_sums.mean_square(kind, w, gamma)
            quad = exp_sums.mean_square_quadrature(kind, w, gamma, samples)
            if exact > 0:
                worst = max(worst, abs(quad - exact) / exact)
    return SuiteResult("parseval", worst, 1e-6)


def _suite_oracle(gamma: GammaParam, fault_hook=None) -> SuiteResult:
    dense = GammaParam(9, 10)
    cases = ((gamma, 301, 40), (gamma, 1207, 150),
             (dense, 601, 80), (dense, 1207, 150))
    worst = 0.0
    for g, n, y in cases:
        window = PrimeWindow(n, y)
        table = window_table(window, g)
        if fault_hook is not None:
            table = fault_hook(table)
        try:
            worst = max(worst, table.validate())
        except CacheFormatError:
            worst = max(worst, 1.0)
        base, ind, wts = repr_counter._window_arrays(window, g, table)
        index = n - 3 * base
        count = repr_counter.exact_triple_coefficient(ind, index)
        weighted = repr_counter.float_triple_coefficient(wts, index)
        oracle = repr_counter.brute_force_reps(n, y, g)
        worst = max(worst, float(abs(count - oracle.count)))
        scale = max(1.0, abs(oracle.weighted))
        worst = max(worst, abs(weighted - oracle.weighted) / scale)
    return SuiteResult("oracle-equivalence", worst, 1e-6)


def _suite_vaughan() -> SuiteResult:
    params = analytic_lemmas.VaughanParams(13.0, 13.0)
    return SuiteResult("vaughan", analytic_lemmas.vaughan_verify(2000, params), 1e-8)


def _suite_psi() -> SuiteResult:
    grid = np.arange(20001) / 20001.0
    worst = -math.inf
    for H in (4, 16):
        params = analytic_lemmas.build_psi_approx(H)
        excess = np.abs(params.error_eval(grid)) - params.majorant_eval(grid)
        worst = max(worst, float(excess.max()))
    return SuiteResult("psi-majorant", worst, 1e-9)


def run_verify(gamma: GammaParam | None = None, fault_hook=None) -> list:
    """Run the five invariant suites; returns SuiteResult rows in fixed order."""
    if gamma is None:
        gamma = GammaParam(2, 3)
    return [
        _suite_parseval(gamma),
        _suite_oracle(gamma, fault_hook),
        _suite_vaughan(),
        _suite_psi(),
        _suite_charsum(),
    ]
