"""Exponential sums over a window of PS primes: values, mean squares, arcs."""

import numpy as np

from psgoldbach import (GammaParam, PrimeWindow, eval_f, eval_g, mean_square,
                        mean_square_quadrature, dirichlet_approx,
                        major_arc_diff_scan)

gamma = GammaParam(2, 3)
window = PrimeWindow(4001, 160)  # primes p with |3p - n| < 3y
print(f"window around n/3: [{window.p_lo}, {window.p_hi}]")

# g runs over all primes in the window; f over PS primes, weighted
for alpha in (0.0, 0.5, 1 / 3, 0.123456):
    g = eval_g(alpha, window)
    f = eval_f(alpha, window, gamma)
    print(f"alpha={alpha:.6f}  g={complex(g.re, g.im):+.6f}  "
          f"|f|={abs(complex(f.re, f.im)):.3f}")

# Parseval: the mean square over [0,1) equals the coefficient power exactly
ms_g = mean_square("g", window)
ms_f = mean_square("f", window, gamma)
print(f"int |g|^2 = {ms_g}  (= number of primes in the window)")
print(f"int |f|^2 = {ms_f:.6f}  (= sum of squared weights)")
print("quadrature g:", mean_square_quadrature("g", window))
print("quadrature f:", mean_square_quadrature("f", window, gamma))

# best rational approximations with bounded denominator
for alpha in (np.pi - 3, 0.5 - 1e-9):
    r = dirichlet_approx(alpha, 50)
    print(f"alpha={alpha:.9f} ~ {r.a}/{r.q}  "
          f"|q*alpha - a| = {r.q * abs(r.beta):.2e}")

# f and g track each other on major arcs; diff normalized per arc
rows = major_arc_diff_scan(window, gamma, q_max=5)
for row in rows[:8]:
    print(f"  a/q = {row.a}/{row.q}  |f-g| = {row.diff:.4f}  "
          f"ratio = {row.ratio:.6f}")
