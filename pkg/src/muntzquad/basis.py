r"""Müntz-Legendre scaling functions and piecewise fractional powers.

Level ``J`` splits ``[0, 1)`` into ``2**(J-1)`` half-open cells of width
``h = 2**(1-J)``. On cell ``n`` (1-based) with left end ``s_n``:

* ``T_{n,m}(t) = (t - s_n)**(m*lam)``
* ``phi_{n,m}(t) = 2**((J-1)/2) * sqrt(2*m*lam + 1) * L_m((t - s_n)/h)``

Both families are flattened to length ``K = 2**(J-1) * M`` with index
``(n-1)*M + m``. Evaluation at ``t = 1`` returns the left limit of the last
cell.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .muntz import WeightFunction, check_lambda, muntz_legendre, ypow
from .quadrature import gauss_muntz_rule, lagrange_matrix
from .special import chebyshev_roots

PROJECTION_EXTRA_NODES = 4
# 2**44: s + u*h is exact for cell indices below 2**8
NODE_GRID = 2.0 ** 44


@dataclass(frozen=True)
class MuntzBasisParams:
    J: int
    M: int
    lam: float

    def __post_init__(self):
        if int(self.J) != self.J or self.J < 1:
            raise ValueError("J must be an integer >= 1")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError("M must be an integer >= 1")
        object.__setattr__(self, "lam", check_lambda(self.lam))

    @property
    def n_cells(self) -> int:
        return 2 ** (self.J - 1)

    @property
    def K(self) -> int:
        return self.n_cells * self.M

    @property
    def width(self) -> float:
        return 1.0 / self.n_cells

    @property
    def exponents(self) -> np.ndarray:
        return self.lam * np.arange(self.M)

    def cell_start(self, n: int) -> float:
        return (n - 1) / self.n_cells

    def index(self, n: int, m: int) -> int:
        self.check_index(n, m)
        return (n - 1) * self.M + m

    def check_index(self, n, m):
        if not 1 <= n <= self.n_cells:
            raise IndexError(f"cell index {n} outside 1..{self.n_cells}")
        if not 0 <= m < self.M:
            raise IndexError(f"degree index {m} outside 0..{self.M - 1}")

    def cell_of(self, t):
        """1-based cell containing ``t`` (``t = 1`` maps to the last cell)."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0) or np.any(t > 1):
            raise ValueError("t must lie in [0, 1]")
        n = np.floor(t * self.n_cells).astype(int) + 1
        n = np.minimum(n, self.n_cells)
        return int(n) if n.ndim == 0 else n


def _scaling_factor(params, m):
    return 2.0 ** ((params.J - 1) / 2.0) * math.sqrt(2.0 * m * params.lam + 1.0)


def piecewise_power_eval(params: MuntzBasisParams, n: int, m: int, t):
    """``T_{n,m}(t)``; zero off the cell."""
    params.check_index(n, m)
    t = np.asarray(t, dtype=float)
    on = params.cell_of(t) == n
    local = np.where(on, t - params.cell_start(n), 0.0)
    val = np.where(on, ypow(local, params.lam) ** m if m else 1.0, 0.0)
    return float(val) if val.ndim == 0 else val


def scaling_eval(params: MuntzBasisParams, n: int, m: int, t):
    """``phi_{n,m}(t)``; zero off the cell."""
    params.check_index(n, m)
    t = np.asarray(t, dtype=float)
    on = params.cell_of(t) == n
    u = np.where(on, (t - params.cell_start(n)) * params.n_cells, 0.0)
    val = np.where(on, _scaling_factor(params, m) * muntz_legendre(m, params.lam)(u), 0.0)
    return float(val) if val.ndim == 0 else val


def _local(params, t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    n = np.atleast_1d(params.cell_of(t))
    return t, n, t - (n - 1) * params.width


def piecewise_power_vector(params: MuntzBasisParams, t) -> np.ndarray:
    """``T(t)``: shape ``(K,)`` for scalar ``t``, ``(len(t), K)`` otherwise."""
    scalar = np.ndim(t) == 0
    t, n, x = _local(params, t)
    out = np.zeros((t.size, params.K))
    y = ypow(x, params.lam)
    for m in range(params.M):
        out[np.arange(t.size), (n - 1) * params.M + m] = y ** m
    return out[0] if scalar else out


def scaling_vector(params: MuntzBasisParams, t) -> np.ndarray:
    """``Phi(t)``: shape ``(K,)`` for scalar ``t``, ``(len(t), K)`` otherwise."""
    scalar = np.ndim(t) == 0
    t, n, x = _local(params, t)
    u = x * params.n_cells
    out = np.zeros((t.size, params.K))
    for m in range(params.M):
        out[np.arange(t.size), (n - 1) * params.M + m] = (
            _scaling_factor(params, m) * muntz_legendre(m, params.lam)(u)
        )
    return out[0] if scalar else out


@dataclass(frozen=True)
class CoefficientVector:
    values: np.ndarray
    params: MuntzBasisParams

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.params.K,):
            raise ValueError(f"expected {self.params.K} coefficients, got {v.shape}")
        object.__setattr__(self, "values", v)

    def __call__(self, t):
        return eval_expansion(self, t)


@lru_cache(maxsize=64)
def _projection_rule(M: int, lam: float):
    """Nodes ``v_j`` on ``[0, 1]`` and weights ``W[m, j] = int_0^1 h_j L_m``.

    ``h_j L_m`` is a Müntz polynomial of degree ``2M + 2``, so a Gauss-type
    rule with ``M + 2`` points integrates it exactly. The Chebyshev nodes are
    placed in ``y = u**lam``, the variable the cardinal functions live in;
    placing them in ``u`` crowds the ``y`` nodes towards 1 for small ``lam``.
    """
    nodes = chebyshev_roots(1, M + PROJECTION_EXTRA_NODES, (0.0, 1.0)) ** (1.0 / lam)
    # snap so that cell_start + node * width is exact in floating point: the
    # input is sampled at absolute t, and near a cell start the rounding of t
    # is amplified by the u**lam singularity
    nodes = np.round(nodes * NODE_GRID) / NODE_GRID
    if nodes[0] <= 0 or np.any(np.diff(nodes) <= 0):
        raise ValueError(f"projection nodes collapse for M={M}, lam={lam}")
    exact = gauss_muntz_rule(WeightFunction.unit(0.0, 1.0), lam, M + 1)
    H = lagrange_matrix(nodes, lam, exact.nodes)
    L = np.array([muntz_legendre(m, lam)(exact.nodes) for m in range(M)])
    W = (L * exact.weights) @ H
    return nodes, W


def project(p, params: MuntzBasisParams) -> CoefficientVector:
    """L2 projection onto the scaling functions, cell by cell.

    Each ``int p phi_{n,m}`` uses the fractional quadrature rule on ``M + 4``
    Chebyshev nodes of the cell, so in-span inputs are reproduced exactly.
    """
    nodes, W = _projection_rule(params.M, params.lam)
    scale = np.array([_scaling_factor(params, m) for m in range(params.M)]) * params.width
    out = np.empty(params.K)
    for n in range(1, params.n_cells + 1):
        t = params.cell_start(n) + nodes * params.width
        vals = np.asarray(p(t), dtype=float) * np.ones_like(t)
        out[(n - 1) * params.M: n * params.M] = scale * (W @ vals)
    return CoefficientVector(out, params)


def eval_expansion(coeffs: CoefficientVector, t):
    """``P^T Phi(t)``."""
    val = scaling_vector(coeffs.params, t) @ coeffs.values
    return float(val) if np.ndim(val) == 0 else val
