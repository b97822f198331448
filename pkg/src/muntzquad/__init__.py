"""Fractional (Müntz) quadrature, Müntz-Legendre scaling functions and a
collocation solver for Caputo fractional initial value problems."""

__version__ = "0.1.0"

from .basis import (
    CoefficientVector,
    MuntzBasisParams,
    eval_expansion,
    piecewise_power_eval,
    piecewise_power_vector,
    project,
    scaling_eval,
    scaling_vector,
)
from .muntz import (
    MuntzPolynomial,
    OrthogonalSequence,
    WeightFunction,
    inner_product,
    muntz_legendre,
    orthogonal_monic_sequence,
    roots,
)
from .operational import (
    OperationalMatrix,
    build_F,
    build_omega,
    build_P,
    rl_integral_piecewise,
)
from .quadrature import (
    QuadratureRule,
    error_bound_analytic,
    error_bound_bv,
    fractional_lagrange,
    gauss_muntz_rule,
    integrate,
    interpolatory_weights,
    node_distance_study,
)
from .solver import (
    FDEProblem,
    FDESolution,
    assemble_residual,
    caputo_power_series,
    collocation_grid,
    eval_solution,
    l2_error,
    solve,
)
