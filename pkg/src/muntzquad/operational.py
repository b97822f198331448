r"""Riemann-Liouville integration operational matrices.

For the piecewise powers ``T`` the left RL integral at a point ``t`` in cell
``q`` is, per basis function ``T_{n,m}``:

* ``n > q``: zero;
* ``n = q``: ``(t - s_q)**(alpha + lam_m) B(alpha, lam_m + 1) / Gamma(alpha)``;
* ``n < q``: ``(1/Gamma(alpha)) int_0^h (c - x)**(alpha-1) x**lam_m dx`` with
  ``c = t - s_n >= h``, evaluated by the fractional quadrature rule on the
  ``M`` first-kind Chebyshev roots of ``[0, h]``. The rule is exact because
  ``x**lam_m`` has Müntz degree ``m <= M - 1``.

``F(t, alpha)`` collects these so that ``I^alpha T(t) = F(t, alpha) T(t)``,
and ``P = Omega^{-1} F Omega`` does the same for the scaling functions.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional
import csv
import math

import numpy as np
from scipy import linalg

from . import special
from .basis import MuntzBasisParams, piecewise_power_vector, scaling_vector, _scaling_factor
from .integrate import quad_vec
from .muntz import WeightFunction, muntz_legendre, ypow
from .quadrature import CardinalBasis, gauss_muntz_rule, lagrange_matrix
from .special import chebyshev_roots

OMEGA_MAX_COND = 1e12
# x = (h/2) s**k on the left half softens the x**lam endpoint behaviour
_LEFT_SUBSTITUTION_POWER = 4


class SingularMatrixError(ArithmeticError):
    pass


@dataclass(frozen=True)
class OperationalMatrix:
    entries: np.ndarray
    role: str
    params: MuntzBasisParams
    eval_point: Optional[float] = None
    alpha: Optional[float] = None

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __matmul__(self, other):
        return self.entries @ np.asarray(other)

    def to_csv(self, path):
        """Row-major dump with 17 significant digits."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in self.entries:
                writer.writerow([format(v, ".17g") for v in row])


def case2_value(offset, exponent, alpha):
    """``I^alpha`` of ``(z - s)**exponent`` at ``t`` with ``offset = t - s >= 0``."""
    return offset ** (alpha + exponent) * special.beta(alpha, exponent + 1.0) / special.gamma(alpha)


@lru_cache(maxsize=32)
def _tail_nodes(M: int, h: float):
    return chebyshev_roots(1, M, (0.0, h))


@lru_cache(maxsize=4096)
def _tail_weights_cached(M: int, lam: float, h: float, alpha: float, c: float):
    nodes = _tail_nodes(M, h)
    if alpha == 1.0:
        # the kernel is constant: a unit-weight fractional quadrature rule
        exact = gauss_muntz_rule(WeightFunction.unit(0.0, 1.0), lam, max(M - 1, 0))
        H = lagrange_matrix(nodes / h, lam, exact.nodes)
        return h * (exact.weights @ H)

    k = _LEFT_SUBSTITUTION_POWER
    half = 0.5 * h
    basis = CardinalBasis(nodes, lam)

    def left(s):
        x = half * s ** k
        return basis(x) * (c - x) ** (alpha - 1.0) * half * k * s ** (k - 1)

    # u = (c - x)**alpha removes the kernel singularity at x = c
    def right(u):
        x = c - u ** (1.0 / alpha)
        return basis(x) / alpha

    w_left = quad_vec(left, 0.0, 1.0)
    w_right = quad_vec(right, (c - h) ** alpha, (c - half) ** alpha)
    return w_left + w_right


def tail_weights(params: MuntzBasisParams, alpha: float, c: float) -> np.ndarray:
    """Weights ``w_j = int_0^h h_j(x) (c - x)**(alpha-1) dx`` on the tail nodes."""
    h = params.width
    if c < h * (1 - 1e-14):
        raise ValueError("tail weights need c >= cell width")
    c = max(c, h)
    key_c = 0.0 if alpha == 1.0 else float(c)
    return _tail_weights_cached(params.M, params.lam, h, float(alpha), key_c)


def tail_values(params: MuntzBasisParams, alpha: float, c: float) -> np.ndarray:
    """``I^alpha T_{n,m}`` for ``m = 0..M-1`` from a cell lying entirely left of ``t``."""
    nodes = _tail_nodes(params.M, params.width)
    w = tail_weights(params, alpha, c)
    powers = ypow(nodes, params.lam)[None, :] ** np.arange(params.M)[:, None]
    return powers @ w / special.gamma(alpha)


def tail_value_hypergeometric(params: MuntzBasisParams, m: int, alpha: float, c: float) -> float:
    """Closed form of the tail integral via 2F1 (independent check)."""
    h = params.width
    lm = m * params.lam
    mu = c ** (alpha - 1.0) * h ** (lm + 1.0) / (lm + 1.0) * special.hyp2f1(
        1.0 - alpha, lm + 1.0, lm + 2.0, h / c)
    return mu / special.gamma(alpha)


def _check_alpha_t(alpha, t):
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")


def rl_integral_piecewise(params: MuntzBasisParams, n: int, m: int, alpha: float, t: float) -> float:
    """``I^alpha T_{n,m}`` at ``t`` by the three-case formula."""
    params.check_index(n, m)
    _check_alpha_t(alpha, t)
    q = params.cell_of(t)
    if n > q:
        return 0.0
    if n == q:
        return case2_value(t - params.cell_start(n), m * params.lam, alpha)
    return float(tail_values(params, alpha, t - params.cell_start(n))[m])


def rl_integral_vector(params: MuntzBasisParams, alpha: float, t: float) -> np.ndarray:
    """``I^alpha T(t)`` for all ``K`` piecewise powers."""
    _check_alpha_t(alpha, t)
    q = params.cell_of(t)
    M = params.M
    out = np.zeros(params.K)
    x = t - params.cell_start(q)
    out[(q - 1) * M: q * M] = [case2_value(x, e, alpha) for e in params.exponents]
    for n in range(1, q):
        out[(n - 1) * M: n * M] = tail_values(params, alpha, t - params.cell_start(n))
    return out


def build_F(params: MuntzBasisParams, alpha: float, t: float) -> OperationalMatrix:
    """``F(t, alpha)`` with ``I^alpha T(t) = F T(t)`` at the build point.

    Only block column ``q`` (the cell holding ``t``) is populated: its
    diagonal block carries the in-cell factors and the first column of each
    block above it the tail integrals, which multiply ``T_{q,0}(t) = 1``.
    """
    _check_alpha_t(alpha, t)
    q = params.cell_of(t)
    M = params.M
    F = np.zeros((params.K, params.K))
    x = t - params.cell_start(q)
    for r, e in enumerate(params.exponents):
        F[(q - 1) * M + r, (q - 1) * M + r] = (
            x ** alpha * special.beta(alpha, e + 1.0) / special.gamma(alpha)
        )
    for n in range(1, q):
        F[(n - 1) * M: n * M, (q - 1) * M] = tail_values(params, alpha, t - params.cell_start(n))
    return OperationalMatrix(F, "F", params, float(t), float(alpha))


@lru_cache(maxsize=64)
def _omega_block(M: int, lam: float):
    # int_0^1 u**(i lam) L_k(u) du, Müntz degree <= 2M - 2: exact with M points
    rule = gauss_muntz_rule(WeightFunction.unit(0.0, 1.0), lam, M - 1)
    y = ypow(rule.nodes, lam)
    B = np.zeros((M, M))
    for k in range(M):
        Lk = muntz_legendre(k, lam)(rule.nodes)
        for i in range(M):
            B[i, k] = np.dot(rule.weights, y ** i * Lk) if i >= k else 0.0
    return B


@lru_cache(maxsize=64)
def _omega_cached(params: MuntzBasisParams):
    M = params.M
    B = _omega_block(M, params.lam)
    h = params.width
    block = np.empty_like(B)
    for i in range(M):
        for k in range(M):
            # <T_i, phi_k> on a cell, after u = (t - s)/h
            block[i, k] = h ** (i * params.lam + 1.0) * _scaling_factor(params, k) * B[i, k]
    omega = linalg.block_diag(*([block] * params.n_cells))
    cond = np.linalg.cond(omega)
    if not np.isfinite(cond) or cond > OMEGA_MAX_COND:
        raise SingularMatrixError(f"Omega condition number {cond:.3e} exceeds {OMEGA_MAX_COND:g}")
    omega.setflags(write=False)
    return omega, cond, linalg.lu_factor(omega)


def build_omega(params: MuntzBasisParams) -> OperationalMatrix:
    """Transformation matrix with ``T(t) = Omega Phi(t)``, entries ``<T_i, phi_j>``."""
    omega, _, _ = _omega_cached(params)
    return OperationalMatrix(omega.copy(), "Omega", params)


def omega_condition(params: MuntzBasisParams) -> float:
    return _omega_cached(params)[1]


def omega_solve(params: MuntzBasisParams, rhs, trans=0):
    """``Omega^{-1} rhs`` (``trans=1``: ``Omega^{-T} rhs``) via the cached LU."""
    return linalg.lu_solve(_omega_cached(params)[2], rhs, trans=trans)


def build_P(params: MuntzBasisParams, alpha: float, t: float) -> OperationalMatrix:
    """``P(t, alpha) = Omega^{-1} F(t, alpha) Omega``."""
    F = build_F(params, alpha, t).entries
    omega, _, _ = _omega_cached(params)
    return OperationalMatrix(omega_solve(params, F @ omega), "P", params, float(t), float(alpha))


def rl_integral_scaling_vector(params: MuntzBasisParams, alpha: float, t: float) -> np.ndarray:
    """``P(t, alpha) Phi(t)``, i.e. ``I^alpha Phi(t)``, without forming ``P``."""
    return omega_solve(params, rl_integral_vector(params, alpha, t))
