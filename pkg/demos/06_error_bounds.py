"""Remainder bounds against observed errors, w = 1 on [-1, 1] and lam = 1.

exp is analytic inside every Bernstein ellipse, so the r = 2 bound decays
geometrically. |t| has one derivative of bounded variation, and its bound
decays only like 1/N.
"""

import math

import numpy as np

from muntzquad import WeightFunction, error_bound_analytic, error_bound_bv, gauss_muntz_rule
from muntzquad.quadrature import bernstein_ellipse_max

w = WeightFunction.unit(-1.0, 1.0)
M_r = bernstein_ellipse_max(np.exp, 2.0)
print(f"exp: M_r on E_2 = {M_r:.6f}")
for N in range(1, 7):
    emp = abs(gauss_muntz_rule(w, 1.0, N)(np.exp) - (math.e - 1 / math.e))
    print(f"  N={N}  |R_N| = {emp:.3e}   bound = {error_bound_analytic(2.0, M_r, 2.0, N):.3e}")

print("|t|: V_1 = 2, s = 1")
for N in range(2, 9):
    emp = abs(gauss_muntz_rule(w, 1.0, N)(np.abs) - 1.0)
    print(f"  N={N}  |R_N| = {emp:.3e}   bound = {error_bound_bv(2.0, 2.0, 1, N):.3e}")
