"""Enumerate Piatetski-Shapiro primes and test membership two ways."""

import numpy as np

from psgoldbach import (GammaParam, enumerate_ps_primes, ps_indicator,
                        chi_indicator, ps_integers_in_range,
                        indicator_disagreements)

gamma = GammaParam.parse("2/3")  # p = floor(m^(3/2))

table = enumerate_ps_primes(2, 10 ** 6, gamma)
print(f"{len(table)} PS primes up to 1e6 at gamma={gamma}")
print("first ten:", table.primes[:10].tolist())

# membership is exact integer arithmetic, no float comparisons
for n in (31, 32, 5, 7, 999999):
    print(f"  ps_indicator({n}) = {ps_indicator(n, gamma)}"
          f"  chi = {chi_indicator(n, gamma)}")

# the ceil-difference route and the root-membership route never disagree
print("disagreements below 1e5:", indicator_disagreements(1, 10 ** 5, gamma))

# density: about gamma * N^gamma members up to N
N = 10 ** 6
members = ps_integers_in_range(1, N, gamma)
expected = N ** (gamma.a / gamma.b)
print(f"PS integers up to {N}: {len(members)} (N^gamma = {expected:.0f})")

# prime density within the sequence, versus 1/log p
primes = table.primes
count_5e5 = int(np.searchsorted(primes, 5 * 10 ** 5))
print(f"PS primes up to 5e5: {count_5e5}")
print(f"PS primes in (5e5, 1e6]: {len(primes) - count_5e5}")
