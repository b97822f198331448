import math
import warnings

import numpy as np
import pytest
from scipy import integrate as si


def rl_oracle_piecewise(params, n, m, alpha, t):
    """Adaptive Gauss-Kronrod value of I^alpha T_{n,m}(t), split at the cell edges."""
    s = params.cell_start(n)
    e = m * params.lam
    if t <= s:
        return 0.0
    end = min(t, s + params.width)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", si.IntegrationWarning)
        if end == t:
            # both endpoint singularities handled by the algebraic weight
            val = si.quad(lambda z: 1.0, s, t, weight="alg", wvar=(e, alpha - 1.0),
                          epsabs=1e-15, epsrel=1e-13, limit=200)[0]
        else:
            val = si.quad(lambda z: (t - z) ** (alpha - 1.0), s, end, weight="alg",
                          wvar=(e, 0.0), epsabs=1e-15, epsrel=1e-13, limit=200)[0]
    return val / math.gamma(alpha)


def rl_oracle_vector(params, alpha, t):
    return np.array([rl_oracle_piecewise(params, n, m, alpha, t)
                     for n in range(1, params.n_cells + 1) for m in range(params.M)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def gram_matrix(params, n_points=40):
    """Exact Gram matrix of the scaling functions.

    On a cell of width h put x = h s**(1/lam): every product of local powers
    becomes a polynomial in s against the Jacobi weight s**(1/lam - 1).
    """
    from scipy.special import roots_jacobi

    from muntzquad.basis import scaling_vector

    lam, h = params.lam, params.width
    s, w = roots_jacobi(n_points, 0.0, 1.0 / lam - 1.0)
    s = 0.5 * (s + 1.0)
    w = w * 0.5 ** (1.0 / lam) * h / lam
    G = np.zeros((params.K, params.K))
    for n in range(params.n_cells):
        t = n * h + h * s ** (1.0 / lam)
        Phi = scaling_vector(params, t)
        G += (Phi * w[:, None]).T @ Phi
    return G


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
