"""Ternary Goldbach representations with almost-equal Piatetski-Shapiro primes.

Exact window enumeration of primes of the form floor(m^(1/gamma)), weighted
exponential sums f and g, circle-method representation counting by integer
convolution, the singular series with tail bounds, and the supporting
analytic identities (Vaughan decomposition, sawtooth majorant) with
verifiable finite checks.
"""

from .analytic_lemmas import (PsiApproxParams, VaughanParams, build_psi_approx,
                              delta_psi, mobius_sieve, psi, vaughan_decompose,
                              vaughan_verify, von_mangoldt_sieve)
from .errors import CacheFormatError, ParameterError, ResourceError
from .exp_sums import (ExpSumValue, MajorArcRow, RationalApprox,
                       circle_integral, dirichlet_approx, eval_f, eval_g,
                       geometric_char_sum, major_arc_diff_scan, mean_square,
                       mean_square_quadrature)
from .ps_primes import (GammaParam, PrimeWindow, PsPrimeTable, chi_indicator,
                        enumerate_ps_primes, indicator_disagreements,
                        load_table, ps_indicator, ps_integers_in_range,
                        save_table, weight, weights_for, window_primes,
                        window_table)
from .repr_counter import (RepCount, ScanRow, brute_force_reps, count_reps,
                           exact_triple_coefficient, float_triple_coefficient,
                           theorem_scan, weighted_count)
from .singular_series import (DEFAULT_CUTOFF, SingularSeriesValue,
                              prime_factors, singular_series)
from .verify import SuiteResult, run_verify

__version__ = "0.1.0"

__all__ = [
    "CacheFormatError", "DEFAULT_CUTOFF", "ExpSumValue", "GammaParam",
    "MajorArcRow", "ParameterError", "PrimeWindow", "PsPrimeTable",
    "PsiApproxParams", "RationalApprox", "RepCount", "ResourceError",
    "ScanRow", "SingularSeriesValue", "SuiteResult", "VaughanParams",
    "brute_force_reps", "build_psi_approx", "chi_indicator", "circle_integral",
    "count_reps", "delta_psi", "dirichlet_approx", "enumerate_ps_primes",
    "eval_f", "eval_g", "exact_triple_coefficient", "float_triple_coefficient",
    "geometric_char_sum", "indicator_disagreements", "load_table",
    "major_arc_diff_scan", "mean_square", "mean_square_quadrature",
    "mobius_sieve", "prime_factors", "ps_indicator", "ps_integers_in_range",
    "psi", "run_verify", "save_table", "singular_series", "theorem_scan",
    "vaughan_decompose", "vaughan_verify", "von_mangoldt_sieve", "weight",
    "weighted_count", "weights_for", "window_primes", "window_table",
]
