"""The sawtooth approximation and the Lambda decomposition, numerically."""

import numpy as np

from psgoldbach import (GammaParam, VaughanParams, build_psi_approx, psi,
                        delta_psi, vaughan_decompose, vaughan_verify,
                        von_mangoldt_sieve)

# psi(x) = x - floor(x) - 1/2, approximated by H-term trig polynomials;
# away from the jump the error decays with H, and everywhere (jump
# included) it stays below the nonnegative majorant
x = np.linspace(0.1, 0.9, 1601)
x_all = np.arange(0, 2000) / 2000.0
for H in (4, 16, 64):
    params = build_psi_approx(H)
    err = np.abs(psi(x) - params.smooth_eval(x)).max()
    excess = (np.abs(params.error_eval(x_all))
              - params.majorant_eval(x_all)).max()
    print(f"H={H:3d}: max |psi - approx| on [0.1, 0.9] = {err:.6f}, "
          f"majorant excess = {excess:.2e}")

# delta_psi drives the PS indicator error term
print("delta_psi(3, 1/2) =", delta_psi(3.0, GammaParam(1, 2)))

# the decomposition needs n > u; 121 = 11^2 and 143 = 11*13 exercise the
# type-II term since both factors exceed u
params = VaughanParams(10.0, 10.0)
lam = von_mangoldt_sieve(150)
for n in (25, 30, 121, 143):
    t1, t2, t3 = vaughan_decompose(n, params)
    print(f"n={n}: {t1:+.6f} {t2:+.6f} {t3:+.6f} -> {t1 + t2 + t3:.6f} "
          f"(Lambda = {lam[n]:.6f})")

# residual over a full range, three parameter profiles
for u, v in ((10.0, 10.0), (100.0, 10.0), (2.0, 2.0)):
    res = vaughan_verify(5000, VaughanParams(u, v))
    print(f"u={u:6.1f} v={v:5.1f}: max residual {res:.2e}")
