"""Integrating exp(-2t) sin(3 t**lam) with matched fractional rules.

Nodes are zeros of Müntz polynomials orthogonal for (2 - t); weights are the
interpolatory ones for exp(-2t) on [0, 2]. The integrand has a t**lam
singularity at the origin that the rule absorbs, so smaller lam tends to
give smaller errors for the same number of nodes.
"""

import numpy as np

from muntzquad import WeightFunction, interpolatory_weights, orthogonal_monic_sequence, roots

w_exp = WeightFunction(lambda t: np.exp(-2.0 * np.asarray(t, dtype=float)), 0.0, 2.0)
w_nodes = WeightFunction.power(2.0, 1.0)

print("N    " + "".join(f"lam={lam:<10}" for lam in (1.0, 0.75, 0.5, 0.25)))
table = {}
for lam in (1.0, 0.75, 0.5, 0.25):
    f = lambda t, lam=lam: np.sin(3.0 * np.asarray(t, dtype=float) ** lam)
    ref = w_exp.integrate(f, epsabs=1e-15, epsrel=1e-14)
    seq = orthogonal_monic_sequence(w_nodes, lam, 9)
    for N in range(9):
        rule = interpolatory_weights(roots(seq, N + 1), lam, w_exp)
        table[lam, N] = abs(rule(f) - ref)
for N in range(9):
    print(f"{N:<5}" + "".join(f"{table[lam, N]:<14.2e}" for lam in (1.0, 0.75, 0.5, 0.25)))

mean = {lam: np.mean([np.log10(table[lam, N]) for N in range(9)]) for lam in (1.0, 0.75, 0.5, 0.25)}
print("\nmean log10 error:", "  ".join(f"{lam}: {v:.2f}" for lam, v in mean.items()))
