"""Large-deviation rate functions of the weak-record count.

Walks through the chain h(s) -> Lambda(lambda) -> Lambda*(x) -> LDP rate
for a few increment laws, and prints a small rate table over record
densities.
"""

import math

import numpy as np

from recordwalk import (
    IncrementLaw,
    cumulant,
    cumulant_deriv,
    ldp_rate,
    legendre,
    rate_point,
    solve_h,
)

sym = IncrementLaw.explicit("right", 0.5, [0.0, 0.5])
asym = IncrementLaw.explicit("right", 0.4, [0.35, 0.1, 0.15])
stable = IncrementLaw.stable("right", 0.5, 0.5)

print("== fixed point and cumulant, symmetric walk ==")
s = 0.6
print(f"h({s}) = {solve_h(sym, s):.12f}  (closed form 1/3)")
lam = math.log(s)
print(f"Lambda(ln {s}) = {cumulant(sym, lam):.12f}  (= ln 0.4)")
print(f"Lambda'(ln {s}) = {cumulant_deriv(sym, lam):.12f}")

print("\n== Legendre transform ==")
for x in (1.0, 1.3125, 2.0, 5.0):
    print(f"Lambda*({x}) = {legendre(sym, x):.12f}")

print("\n== rate table over record densities ==")
print(f"{'law':>8s} " + " ".join(f"x_rec={x:.2f}" for x in (0.25, 0.5, 0.75, 1.0)))
for name, law in [("sym", sym), ("asym", asym), ("stable", stable)]:
    rates = [ldp_rate(law, x) for x in (0.25, 0.5, 0.75, 1.0)]
    print(f"{name:>8s} " + " ".join(f"{r:10.6f}" for r in rates))

print("\n== a full solved point ==")
pt = rate_point(sym, 0.5)
print(f"x = {pt.x}, lambda = {pt.lam:.6f}, Lambda = {pt.Lambda:.6f}, "
      f"Lambda* = {pt.Lambda_star:.6f}, rate = {pt.ldp_rate:.6f}")

print("\n== decay of P(A_n >= n/2) implied by the rate ==")
for n in (50, 100, 200):
    print(f"n = {n:4d}: exp(-n*rate) = {math.exp(-n * pt.ldp_rate):.3e}")
