"""Main-term tracking along a log-spaced ladder of targets.

For each odd n the window half-width is y = ceil(n^theta) and the table
reports weighted count / (S3(n) * 3y^2 / log^3 n). A flat ratio column is
the whole point: the prediction tracks the truth across a decade.
"""

import math

from psgoldbach import (GammaParam, PrimeWindow, theorem_scan,
                        major_arc_diff_scan)

gamma = GammaParam(9, 10)
theta = 0.8

rows = theorem_scan(10001, 200001, gamma, theta, samples=8)
print(f"gamma={gamma} theta={theta}")
print(f"{'n':>8} {'y':>6} {'count':>10} {'ratio':>7}  arcs(q<=log n)")
for r in rows:
    arcs = major_arc_diff_scan(PrimeWindow(r.n, r.y), gamma,
                               q_max=max(2, int(math.log(r.n))))
    top = max(a.ratio for a in arcs)
    print(f"{r.n:>8} {r.y:>6} {r.count:>10} {r.ratio:>7.4f}  max {top:.5f}"
          + (f"  [{r.flags}]" if r.flags else ""))
