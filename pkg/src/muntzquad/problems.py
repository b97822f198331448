"""Built-in Caputo initial value problems with known solutions."""

import math

import numpy as np

from . import special
from .solver import FDEProblem, caputo_power_series

SERIES_COEFF_CUTOFF = 1e-18


def example1(alpha=1.0):
    """``D^a y + y = 24 t^(4-a)/Gamma(5-a) + t^4``; ``y = t^4``."""
    g = special.gamma(5.0 - alpha)
    return FDEProblem(
        alpha,
        lambda t, y: 24.0 * t ** (4.0 - alpha) / g + t ** 4 - y,
        rhs_jacobian=lambda t, y: -1.0,
        label="ex1",
        exact=lambda t: t ** 4,
    )


def sine_power_series(freq=math.pi, power=1.5):
    """Taylor exponents and coefficients of ``sin(freq * t**power)``."""
    exps, coeffs = [], []
    k = 0
    while True:
        c = (-1) ** k * freq ** (2 * k + 1) / math.factorial(2 * k + 1)
        if abs(c) < SERIES_COEFF_CUTOFF:
            return exps, coeffs
        exps.append(power * (2 * k + 1))
        coeffs.append(c)
        k += 1


def example3(alpha=1.0):
    """``D^a y = D^a sin(pi t^1.5)``; ``y = sin(pi t^1.5)``."""
    if alpha == 1.0:
        def f(t, y):
            return 1.5 * math.pi * math.sqrt(t) * math.cos(math.pi * t ** 1.5)
    else:
        exps, coeffs = sine_power_series()

        def f(t, y):
            return caputo_power_series(exps, coeffs, alpha, t) if t > 0 else 0.0
    return FDEProblem(alpha, f, rhs_jacobian=lambda t, y: 0.0, label="ex3",
                      exact=lambda t: math.sin(math.pi * t ** 1.5))


def example4(alpha=1.0):
    """``D^a y + y^2 = 2 t^(2-a)/Gamma(3-a) + t^4``; ``y = t^2``."""
    g = special.gamma(3.0 - alpha)
    return FDEProblem(
        alpha,
        lambda t, y: 2.0 * t ** (2.0 - alpha) / g + t ** 4 - y * y,
        rhs_jacobian=lambda t, y: -2.0 * y,
        label="ex4",
        exact=lambda t: t ** 2,
    )


def example5(alpha=0.75):
    """``D^a y + y = f`` with ``y = (t - 1/2)_+^4.5``."""
    g = special.gamma(5.5) / special.gamma(5.5 - alpha)

    def f(t, y):
        s = t - 0.5
        src = g * s ** (4.5 - alpha) + s ** 4.5 if s >= 0 else 0.0
        return src - y

    return FDEProblem(alpha, f, rhs_jacobian=lambda t, y: -1.0, label="ex5",
                      exact=lambda t: max(t - 0.5, 0.0) ** 4.5)


BUILTINS = {
    "ex1": example1,
    "ex3": example3,
    "ex4": example4,
    "ex5": example5,
}

DEFAULT_ALPHA = {"ex1": 1.0, "ex3": 1.0, "ex4": 1.0, "ex5": 0.75}

# (J, M) grids of the reference convergence studies
TABLE_GRIDS = {
    "ex1": [(J, M) for J in (2, 3, 4) for M in (2, 3, 4)],
    "ex3": [(J, M) for J in (2, 3, 4) for M in (2, 3, 4)],
    "ex4": [(J, M) for J in (2, 3, 4) for M in (2, 3, 4)],
    "ex5": [(2, M) for M in (4, 5, 6)],
}
TABLE_LAMBDAS = {
    "ex1": [1.0],
    "ex3": [1.0, 0.75, 0.5, 0.25],
    "ex4": [1.0, 0.75, 0.5, 0.25],
    "ex5": [1.0, 0.75, 0.5, 0.25],
}


def get_problem(name, alpha=None):
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin problem {name!r}")
    return BUILTINS[name](DEFAULT_ALPHA[name] if alpha is None else alpha)
