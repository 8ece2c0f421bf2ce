"""Count n = p1 + p2 + p3 in PS primes with the almost-equal constraint."""

from psgoldbach import (GammaParam, PrimeWindow, count_reps, brute_force_reps,
                        weighted_count, circle_integral)

gamma = GammaParam(2, 3)

r = count_reps(15, 3, gamma, collect_witnesses=True)
print(f"n=15 y=3: count={r.count} witnesses={r.witnesses}")
# the log^3 n prediction is crude at tiny n; the ratio settles later
print(f"weighted={r.weighted} predicted={r.predicted:.4f} "
      f"ratio={r.weighted / r.predicted:.4f}")

# gamma = 2/3 is sparse; a denser sequence gives real counts
dense = GammaParam(9, 10)

# ordered representations, so permutations count separately
r = count_reps(4001, 300, dense, collect_witnesses=True)
print(f"gamma=9/10 n=4001 y=300: count={r.count}")
for w in r.witnesses[:5]:
    print("   ", " + ".join(map(str, w)), "=", sum(w))

# three routes to the same number
n, y = 4001, 300
conv = count_reps(n, y, dense).count
brute = brute_force_reps(n, y, dense).count
circ = circle_integral(PrimeWindow(n, y), dense, weighted=False)
print(f"convolution {conv} | brute force {brute} | circle {circ:.9f}")

wv = weighted_count(n, y, dense)
wc = circle_integral(PrimeWindow(n, y), dense, weighted=True)
print(f"weighted    {wv:.9f} | circle {wc:.9f}")
for n in (10001, 30001, 90001):
    r = count_reps(n, n // 20, dense)
    print(f"gamma=9/10 n={n} y={n // 20}: count={r.count} "
          f"ratio={r.weighted / r.predicted:.3f}")
