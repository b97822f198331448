"""Riemann-Liouville integration as a matrix.

Omega maps the scaling functions to piecewise powers. F(t, alpha) applies
I^alpha to the piecewise powers at t, and P = Omega^-1 F Omega does the same
for the scaling functions.
"""

import math

import numpy as np

from muntzquad import MuntzBasisParams, build_F, build_omega, build_P
from muntzquad.basis import piecewise_power_vector, scaling_vector
from muntzquad.operational import omega_condition

params = MuntzBasisParams(J=2, M=3, lam=0.75)
np.set_printoptions(precision=4, suppress=True)
print("Omega for J=2, M=3, lam=0.75")
print(build_omega(params).entries)
print(f"condition number {omega_condition(params):.3e}")

alpha, t = 0.5, 0.8
F = build_F(params, alpha, t)
P = build_P(params, alpha, t)
IT = F @ piecewise_power_vector(params, t)
IPhi = P @ scaling_vector(params, t)

# spot check one entry: I^alpha of (t - 1/2)**0.75 at t = 0.8
e = 0.75
direct = math.gamma(e + 1) / math.gamma(e + alpha + 1) * (t - 0.5) ** (e + alpha)
print(f"\nI^{alpha} T_(2,1)({t}): matrix {IT[params.index(2, 1)]:.15f}, closed form {direct:.15f}")
print("I^alpha Phi(t) =", IPhi)
