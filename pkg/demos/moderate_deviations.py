"""Moderate-deviation constants and the Tauberian growth of return sums.

The power-law index alpha and constant c of 1 - s*phi'(h(s)) near s = 1
determine the MDP scaling and rate; a log-log regression recovers them
numerically, and the partial sums of return probabilities grow with the
matching Tauberian constant.
"""

import math

from recordwalk import (
    IncrementLaw,
    mdp_constants,
    mdp_rate,
    return_prob_partial_sums,
)

sym = IncrementLaw.explicit("right", 0.5, [0.0, 0.5])
stable = IncrementLaw.stable("right", 0.5, 0.5)

print("== closed-form vs regression estimates of (alpha, c) ==")
for name, law in [("sym", sym), ("stable", stable)]:
    closed = mdp_constants(law)
    numeric = mdp_constants(law, method="numeric")
    print(f"{name:>7s}: closed  alpha = {closed.alpha:.6f}, c = {closed.c:.6f}")
    print(f"{'':>7s}  numeric alpha = {numeric.alpha:.6f}, "
          f"c = {numeric.c:.6f} (spread {numeric.uncertainty:.2%})")

print("\n== induced MDP rate, symmetric walk ==")
c = mdp_constants(sym)
print(f"scaling exponents: {c.scaling_exponents}")
print(f"rate = {c.rate_coefficient} * x^{c.rate_exponent}")
for x in (0.5, 1.0, 2.0):
    print(f"  x = {x}: rate {mdp_rate(c, x):.6f}  "
          f"(quadratic form q^2 x^2 / 2 sigma^2 = {0.25 * x * x / 2:.6f})")

print("\n== Tauberian growth of U_n = sum of return probabilities ==")
target = 2.0 * math.sqrt(2.0) / math.sqrt(math.pi)
_, U = return_prob_partial_sums(sym, 10000)
for n in (100, 1000, 10000):
    print(f"n = {n:5d}: U_n / sqrt(n) = {U[n] / math.sqrt(n):.6f}")
print(f"limit constant 2*sqrt(2)/sqrt(pi) = {target:.6f}")
