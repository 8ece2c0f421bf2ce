"""Singular series values for three-prime sums."""

from psgoldbach import singular_series

# even targets have no odd+odd+odd representation, the product vanishes
for n in (4, 100, 10 ** 6):
    print(f"S3({n}) = {singular_series(n).value}")

# odd targets sit in a narrow band
for n in (3, 105, 9999, 78901, 99999):
    s = singular_series(n, cutoff=10 ** 6)
    print(f"S3({n}) = {s.value:.10f}  tail <= {s.tail_bound:.2e}")

# doubling the cutoff moves the value less than the reported tail bound
n = 12345
a = singular_series(n, cutoff=10 ** 5)
b = singular_series(n, cutoff=2 * 10 ** 5)
print(f"n={n}: cutoff 1e5 -> {a.value:.12f}")
print(f"        cutoff 2e5 -> {b.value:.12f}")
print(f"        shift {abs(b.value - a.value):.3e} vs bound {a.tail_bound:.3e}")

# the value depends only on the set of prime divisors
print(singular_series(9).value, singular_series(27).value, "(3 and 3^3 agree)")
