"""Solving Caputo initial value problems by collocation.

Example 5 has the solution (t - 1/2)_+^4.5 and alpha = 0.75. Choosing
lam = alpha puts the solution's fractional powers inside the basis, and the
error drops to rounding level at M = 6.
"""

import time

from muntzquad import MuntzBasisParams, l2_error, solve
from muntzquad.problems import example4, example5

prob = example5(0.75)
print("Example 5, J = 2")
for lam in (1.0, 0.75, 0.5):
    for M in (4, 5, 6):
        t0 = time.perf_counter()
        sol = solve(prob, MuntzBasisParams(2, M, lam))
        err = l2_error(sol, prob.exact)
        print(f"  lam={lam:<5} M={M}  e_y={err:.3e}  newton={sol.newton_iterations}"
              f"  ({time.perf_counter() - t0:.1f}s)")

# a nonlinear problem: D y + y^2 = 2t + t^4, y = t^2
prob = example4(1.0)
sol = solve(prob, MuntzBasisParams(3, 3, 1.0))
print("\nExample 4 (nonlinear), J=3, M=3, lam=1")
print("  residual history:", ", ".join(f"{r:.1e}" for r in sol.residual_history))
print(f"  y(0.7) = {sol(0.7):.15f}  exact {0.49:.15f}")
