"""Fractional quadrature rule, exact for Müntz polynomials.

The cardinal functions are Lagrange polynomials in ``y = t**lam``::

    h_j(t) = prod_{i != j} (t**lam - t_i**lam) / (t_j**lam - t_i**lam)

and the weights are ``w_j = int h_j(t) w(t) dt``. With arbitrary distinct
nodes the rule integrates Müntz polynomials of degree ``N`` exactly; with the
zeros of the orthogonal Müntz polynomial ``p_{N+1}`` it reaches ``2N+1``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .muntz import (
    WeightFunction,
    check_lambda,
    orthogonal_monic_sequence,
    roots,
    ypow,
)

DISTINCT_TOL = 1e-12
WEIGHT_EPSABS = 1e-16
WEIGHT_EPSREL = 2e-14


def fractional_lagrange(nodes, lam, j, t):
    """Cardinal function ``h_j`` of the node set, evaluated at ``t``."""
    y_nodes = ypow(np.asarray(nodes, dtype=float), lam)
    y = ypow(t, lam)
    out = np.ones_like(np.asarray(y, dtype=float))
    for i, yi in enumerate(y_nodes):
        if i != j:
            out = out * (y - yi) / (y_nodes[j] - yi)
    return out if np.ndim(out) else float(out)


class CardinalBasis:
    """All cardinal functions ``h_j`` of a fixed node set, product form.

    Each ``h_j`` is the product of ``(y - y_i)`` over ``i != j`` (prefix times
    suffix products) times a precomputed reciprocal denominator, so it is
    never expanded into monomials.
    """

    def __init__(self, nodes, lam):
        self.lam = lam
        self.y_nodes = ypow(np.asarray(nodes, dtype=float), lam)
        d = self.y_nodes[:, None] - self.y_nodes[None, :]
        np.fill_diagonal(d, 1.0)
        self.inv_denom = 1.0 / np.prod(d, axis=1)

    def __call__(self, t):
        """Shape ``(N+1,)`` for scalar ``t``, ``(len(t), N+1)`` otherwise."""
        scalar = np.ndim(t) == 0
        y = np.atleast_1d(ypow(np.asarray(t, dtype=float), self.lam))
        diff = y[:, None] - self.y_nodes[None, :]
        ones = np.ones((y.size, 1))
        prefix = np.cumprod(np.hstack([ones, diff[:, :-1]]), axis=1)
        suffix = np.cumprod(np.hstack([ones, diff[:, :0:-1]]), axis=1)[:, ::-1]
        out = prefix * suffix * self.inv_denom
        return out[0] if scalar else out


def lagrange_matrix(nodes, lam, t):
    """All cardinal functions at the points ``t``: shape ``(len(t), N+1)``."""
    return CardinalBasis(nodes, lam)(np.atleast_1d(np.asarray(t, dtype=float)))


def check_nodes(nodes, a, b):
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size == 0:
        raise ValueError("need a nonempty 1-d node array")
    if np.any(nodes < a) or np.any(nodes > b):
        raise ValueError("nodes must lie in the closed weight domain")
    srt = np.sort(nodes)
    if np.any(np.diff(srt) <= DISTINCT_TOL * (b - a)):
        raise ValueError("quadrature nodes must be distinct")
    return srt


@dataclass(frozen=True)
class QuadratureRule:
    lam: float
    nodes: np.ndarray
    weights: np.ndarray
    weight_fn: WeightFunction
    exactness_degree: int

    @property
    def N(self) -> int:
        return self.nodes.size - 1

    def __call__(self, p) -> float:
        return integrate(self, p)


def integrate(rule: QuadratureRule, p) -> float:
    """``sum_j p(t_j) w_j``."""
    vals = np.asarray(p(rule.nodes), dtype=float)
    if vals.ndim == 0:
        vals = np.full(rule.nodes.shape, float(vals))
    return float(np.dot(vals, rule.weights))


def interpolatory_weights(nodes, lam, w: WeightFunction) -> QuadratureRule:
    """Fractional quadrature rule on the given nodes (exact to degree N)."""
    lam = check_lambda(lam)
    nodes = check_nodes(nodes, w.a, w.b)
    weights = np.array([
        w.integrate(lambda t, j=j: fractional_lagrange(nodes, lam, j, t),
                    epsabs=WEIGHT_EPSABS, epsrel=WEIGHT_EPSREL)
        for j in range(nodes.size)
    ])
    return QuadratureRule(lam, nodes, weights, w, nodes.size - 1)


def moment_weights(nodes, lam, w: WeightFunction) -> np.ndarray:
    """Weights from the Müntz moment equations ``V^T w = mu``.

    Independent of the cardinal-function route; ill-conditioned for large
    node counts, so only meant as a cross-check for small rules.
    """
    nodes = np.asarray(nodes, dtype=float)
    k = np.arange(nodes.size)
    V = ypow(nodes[None, :], lam) ** k[:, None]
    mu = np.array([w.integrate(lambda t, k=k: ypow(t, lam) ** k) for k in k])
    return np.linalg.solve(V, mu)


def gauss_muntz_rule(w: WeightFunction, lam, N: int) -> QuadratureRule:
    """Gauss-type rule: nodes at the zeros of ``p_{N+1}`` (exact to ``2N+1``)."""
    lam = check_lambda(lam)
    seq = orthogonal_monic_sequence(w, lam, N + 1)
    nodes = roots(seq, N + 1)
    rule = interpolatory_weights(nodes, lam, w)
    if np.any(rule.weights <= 0):
        raise ArithmeticError("Gauss-type rule produced a nonpositive weight")
    return QuadratureRule(lam, rule.nodes, rule.weights, w, 2 * N + 1)


def error_bound_analytic(k_w, M_r, r, N) -> float:
    """Remainder bound for ``p`` analytic inside the Bernstein ellipse ``E_r``.

    ``|R_N(p)| <= 4 k_w M_r / (r**(2N+2) (1 - 1/r))``.
    """
    if r <= 1:
        raise ValueError("ellipse parameter r must exceed 1")
    if M_r <= 0 or k_w <= 0:
        raise ValueError("k_w and M_r must be positive")
    if N < 0:
        raise ValueError("N must be nonnegative")
    return 4.0 * k_w * M_r / (r ** (2 * N + 2) * (1.0 - 1.0 / r))


def error_bound_bv(k_w, V_s, s, N) -> float:
    """Remainder bound when ``p^(s)`` has bounded variation ``V_s``.

    ``|R_N(p)| <= 4 k_w V_s / (pi s (2N+1)(2N)...(2N-s+2))``, ``s`` factors.
    """
    if s < 1 or int(s) != s:
        raise ValueError("s must be a positive integer")
    if N < s // 2:
        raise ValueError(f"need N >= floor(s/2) = {s // 2}")
    if k_w <= 0 or V_s < 0:
        raise ValueError("k_w must be positive and V_s nonnegative")
    denom = math.prod(2 * N + 1 - i for i in range(int(s)))
    return 4.0 * k_w * V_s / (math.pi * s * denom)


def bernstein_ellipse_max(p, r, n_samples=2000) -> float:
    """``max |p|`` sampled on the ellipse with foci ``+-1`` and ``a + b = r``."""
    theta = np.linspace(0.0, 2.0 * np.pi, n_samples, endpoint=False)
    z = 0.5 * (r * np.exp(1j * theta) + np.exp(-1j * theta) / r)
    return float(np.max(np.abs(p(z))))


def node_distance_study(lambdas, p, degree, c, a=0.0):
    """Zeros of ``p_degree`` for the weight ``(c - t)**p`` on ``[a, c]``.

    Returns one record per ``lam`` with the zeros and ``||t - c||_2``.
    """
    w = WeightFunction.power(c, p, a)
    out = []
    for lam in lambdas:
        seq = orthogonal_monic_sequence(w, lam, degree)
        t = roots(seq, degree)
        out.append({"lambda": float(lam), "p": p, "degree": degree,
                    "roots": t, "distance_norm": float(np.linalg.norm(t - c))})
    return out
