"""Gauss-Müntz rules integrate fractional polynomials exactly.

A classical Gauss-Legendre rule treats t**0.75 as just another smooth-ish
function and pays for the singular derivative at 0. The Gauss-Müntz rule for
lam = 0.75 builds its nodes from polynomials in y = t**0.75, so every
Müntz polynomial up to degree 2N+1 is integrated exactly.
"""

import numpy as np

from muntzquad import WeightFunction, gauss_muntz_rule, muntz_legendre

w = WeightFunction.power(1.0, 1.0)  # (1 - t) on [0, 1]
lam = 0.75

for degree, N in ((5, 2), (7, 3)):
    L = muntz_legendre(degree, lam)
    rule = gauss_muntz_rule(w, lam, N)
    ref = w.integrate(L, epsabs=1e-16, epsrel=1e-14)
    print(f"L_{degree} with {N + 1} nodes: rule {rule(L):+.16e}  adaptive {ref:+.16e}  "
          f"error {abs(rule(L) - ref):.1e}")

# the same integrand through a classical Gauss-Legendre rule of equal size
x, wt = np.polynomial.legendre.leggauss(4)
x, wt = 0.5 * (x + 1), 0.5 * wt
L7 = muntz_legendre(7, lam)
classical = np.sum(wt * (1 - x) * L7(x))
print(f"\nGauss-Legendre, 4 nodes, on L_7: error {abs(classical - w.integrate(L7)):.1e}")

rule = gauss_muntz_rule(w, lam, 3)
print("\nnodes  ", np.array2string(rule.nodes, precision=6))
print("weights", np.array2string(rule.weights, precision=6))
print(f"sum of weights {rule.weights.sum():.15f} = k_w = {w.mass:.15f}")
