r"""Collocation solver for Caputo fractional initial value problems.

Solves ``D^alpha y = f(t, y)``, ``y(0) = y0``, ``alpha in (0, 1]``, by writing
``D^alpha y ~ C^T Phi(t)``. Then ``y(t) ~ C^T P(t, alpha) Phi(t) + y0`` and
the residual

    R_n(C) = C^T Phi(t_n) - f(t_n, C^T P(t_n, alpha) Phi(t_n) + y0)

is driven to zero at ``K`` collocation points by Newton's method.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional
import logging
import math
import warnings

import numpy as np
from scipy import linalg

from . import special
from .basis import CoefficientVector, MuntzBasisParams, project, scaling_vector
from .operational import omega_solve, rl_integral_scaling_vector, rl_integral_vector

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-12
STEP_TOL = 1e-13
MAX_ITER = 100
FD_STEP = 1e-7
L2_SAMPLES = 1001
L2_RIGHT_END = 1.0 - 1e-9


class SolverError(ArithmeticError):
    """Newton failed; ``residual`` holds the last residual norm."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class FDEProblem:
    alpha: float
    rhs: Callable
    y0: float = 0.0
    rhs_jacobian: Optional[Callable] = None
    label: str = "custom"
    exact: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")


@dataclass(frozen=True)
class FDESolution:
    coeffs: CoefficientVector
    params: MuntzBasisParams
    problem: FDEProblem
    newton_iterations: int
    residual_norm: float
    residual_history: tuple = ()

    def __call__(self, t):
        return eval_solution(self, t)


def collocation_grid(params: MuntzBasisParams, layout: str = "cell") -> np.ndarray:
    """Shifted second-kind Chebyshev roots.

    ``layout="cell"`` places the ``M`` roots of ``U_M`` in every cell;
    ``layout="global"`` uses the ``K`` roots of ``U_K`` on ``[0, 1]``.
    """
    if layout == "global":
        return special.chebyshev_roots(2, params.K, (0.0, 1.0))
    if layout != "cell":
        raise ValueError(f"unknown collocation layout {layout!r}")
    ref = special.chebyshev_roots(2, params.M, (0.0, 1.0))
    return np.concatenate([(n + ref) * params.width for n in range(params.n_cells)])


class CollocationSystem:
    """Rows ``Phi(t_n)`` and ``P(t_n, alpha) Phi(t_n)`` at the grid points."""

    def __init__(self, problem: FDEProblem, params: MuntzBasisParams, grid=None):
        self.problem = problem
        self.params = params
        self.grid = collocation_grid(params) if grid is None else np.asarray(grid, dtype=float)
        self.phi = scaling_vector(params, self.grid)
        self.integ = np.array([
            rl_integral_scaling_vector(params, problem.alpha, t) for t in self.grid
        ])

    def y_at_grid(self, C):
        return self.integ @ C + self.problem.y0

    def residual(self, C):
        C = np.asarray(C, dtype=float)
        f = np.array([self.problem.rhs(t, y) for t, y in zip(self.grid, self.y_at_grid(C))],
                     dtype=float)
        return self.phi @ C - f

    def jacobian(self, C):
        C = np.asarray(C, dtype=float)
        jac = self.problem.rhs_jacobian
        if jac is not None:
            fy = np.array([jac(t, y) for t, y in zip(self.grid, self.y_at_grid(C))], dtype=float)
            return self.phi - fy[:, None] * self.integ
        R0 = self.residual(C)
        Jm = np.empty((R0.size, C.size))
        for k in range(C.size):
            step = FD_STEP * (1.0 + abs(C[k]))
            Ck = C.copy()
            Ck[k] += step
            Jm[:, k] = (self.residual(Ck) - R0) / step
        return Jm


def assemble_residual(problem: FDEProblem, params: MuntzBasisParams, C, grid=None) -> np.ndarray:
    """Collocation residual ``R(C)``."""
    return CollocationSystem(problem, params, grid).residual(C)


def _newton(system: CollocationSystem, C):
    history = []
    R = system.residual(C)
    history.append(float(np.max(np.abs(R))))
    if not np.isfinite(history[-1]):
        raise SolverError("non-finite residual at the starting guess", residual=history[-1])
    it = 0
    while history[-1] > RESIDUAL_TOL:
        if it >= MAX_ITER:
            raise SolverError(f"Newton did not converge in {MAX_ITER} iterations",
                              residual=history[-1])
        Jm = system.jacobian(C)
        try:
            with warnings.catch_warnings():
                # exact singularity is detected from the pivots below
                warnings.simplefilter("ignore", linalg.LinAlgWarning)
                lu = linalg.lu_factor(Jm, check_finite=True)
        except ValueError as exc:
            raise SolverError(f"non-finite Jacobian: {exc}", residual=history[-1]) from exc
        if np.any(np.abs(np.diag(lu[0])) <= 1e-14 * np.max(np.abs(lu[0]))):
            raise SolverError("singular collocation Jacobian", residual=history[-1])
        dC = linalg.lu_solve(lu, -R)
        C = C + dC
        it += 1
        R = system.residual(C)
        history.append(float(np.max(np.abs(R))))
        if not np.isfinite(history[-1]):
            raise SolverError("Newton iterate diverged", residual=history[-1])
        if np.max(np.abs(dC)) <= STEP_TOL * (1.0 + np.max(np.abs(C))):
            break
    return C, it, history


def solve(problem: FDEProblem, params: MuntzBasisParams, grid=None) -> FDESolution:
    """Newton solve of the collocation system, starting from ``C = 0``.

    If that start fails, Newton is retried from the projection of
    ``f(t, y0)``.
    """
    system = CollocationSystem(problem, params, grid)
    try:
        C, it, history = _newton(system, np.zeros(params.K))
    except SolverError as first:
        log.info("Newton from C = 0 failed (%s); retrying from projection of f(t, y0)", first)
        start = project(lambda t: np.array([problem.rhs(s, problem.y0) for s in np.atleast_1d(t)]),
                        params).values
        try:
            C, it, history = _newton(system, start)
        except SolverError:
            raise first
    coeffs = CoefficientVector(C, params)
    return FDESolution(coeffs, params, problem, it, history[-1], tuple(history))


def eval_solution(sol: FDESolution, t):
    """``C^T P(t, alpha) Phi(t) + y0``."""
    params = sol.params
    # C^T Omega^{-1} F T(t) = (Omega^{-T} C) . I^alpha T(t)
    v = omega_solve(params, sol.coeffs.values, trans=1)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    vals = np.array([v @ rl_integral_vector(params, sol.problem.alpha, s) for s in ts])
    vals = vals + sol.problem.y0
    return float(vals[0]) if np.ndim(t) == 0 else vals


def l2_error(sol: FDESolution, y_exact) -> float:
    """Trapezoidal L2 norm of ``y_exact - y_approx`` on 1001 points of ``[0, 1)``."""
    t = np.linspace(0.0, L2_RIGHT_END, L2_SAMPLES)
    diff = np.asarray([y_exact(s) for s in t], dtype=float) - eval_solution(sol, t)
    return math.sqrt(np.trapezoid(diff ** 2, t))


def caputo_power_series(exponents, coeffs, alpha, t):
    """Caputo derivative of ``sum_k coeffs[k] t**exponents[k]``, ``alpha in (0, 1]``.

    Constant terms vanish; ``t**g`` maps to ``Gamma(g+1)/Gamma(g+1-alpha) t**(g-alpha)``.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for g, c in zip(exponents, coeffs):
        if g < 0:
            raise ValueError("exponents must be nonnegative")
        if g == 0:
            continue
        arg = g + 1.0 - alpha
        if arg <= 0 and float(arg).is_integer():
            raise ValueError(f"Gamma pole at exponent {g}")
        factor = special.gamma(g + 1.0) / special.gamma(arg) if arg > 0 else \
            special.gamma(g + 1.0) / math.gamma(arg)
        out = out + c * factor * t ** (g - alpha)
    return float(out) if out.ndim == 0 else out
