r"""Müntz polynomials on ``[0, 1]`` and orthogonal Müntz sequences.

A Müntz polynomial of degree ``n`` here is ``sum_i c_i t**(i*lam)``, i.e. an
ordinary polynomial in ``y = t**lam``. That change of variables is used
everywhere: the three-term recurrence for an arbitrary weight is run in
``y``-space with the Jacobian folded into the weight, and the zeros come from
the symmetric tridiagonal Jacobi matrix.
"""

from dataclasses import dataclass, field
from functools import cached_property
import math
from typing import Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .integrate import EPSABS, EPSREL, quad

ORTHO_TOL = 1e-10
# norms of monic polynomials shrink geometrically: tolerances must be relative
REL_TOL = 2e-14


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    return lam


def ypow(t, lam):
    """``t**lam`` that stays exact (and sign-preserving) for ``lam == 1``."""
    if lam == 1.0:
        return np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    return np.power(t, lam)


@dataclass(frozen=True)
class MuntzPolynomial:
    """``sum_i coeffs[i] * t**(i*lam)``."""

    lam: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if c.size == 0 or c[-1] == 0.0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, t):
        y = ypow(t, self.lam)
        return np.polynomial.polynomial.polyval(y, self.coeffs)


def _legendre_coeff(i: int, m: int, lam: float) -> float:
    # c_{i,m} = prod_{j<m}(1 + l_i + l_j) / prod_{j!=i, j<=m}(l_i - l_j), l_k = k*lam
    li = i * lam
    if m < 12:
        num = 1.0
        for j in range(m):
            num *= 1.0 + li + j * lam
        den = 1.0
        for j in range(m + 1):
            if j != i:
                den *= li - j * lam
        return num / den
    log_num = sum(math.log1p(li + j * lam) for j in range(m))
    log_den = m * math.log(lam) + math.lgamma(i + 1) + math.lgamma(m - i + 1)
    sign = -1.0 if (m - i) % 2 else 1.0
    return sign * math.exp(log_num - log_den)


def muntz_legendre(m: int, lam: float) -> MuntzPolynomial:
    """Müntz-Legendre polynomial ``L_m`` for the exponent ladder ``i*lam``.

    Orthogonal on ``[0, 1]`` with unit weight, ``||L_m||**2 = 1/(2*m*lam + 1)``.
    """
    lam = check_lambda(lam)
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if m == 0:
        return MuntzPolynomial(lam, np.array([1.0]))
    return MuntzPolynomial(lam, np.array([_legendre_coeff(i, m, lam) for i in range(m + 1)]))


@dataclass(frozen=True)
class WeightFunction:
    """Weight ``w(t) >= 0`` on ``[a, b]``.

    ``w`` may vanish like ``(t - a)**left_exp`` or ``(b - t)**right_exp`` at the
    endpoints. When ``regular`` is given, ``w(t) = (t-a)**left_exp *
    (b-t)**right_exp * regular(t)`` and integrators treat the algebraic factors
    analytically; otherwise the factors are divided out of ``evaluator``.
    """

    evaluator: Callable
    a: float
    b: float
    left_exp: float = 0.0
    right_exp: float = 0.0
    regular: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("weight domain needs a < b")
        if self.left_exp < 0 or self.right_exp < 0:
            raise ValueError("endpoint exponents must be >= 0")

    def __call__(self, t):
        return self.evaluator(t)

    @classmethod
    def unit(cls, a=0.0, b=1.0):
        return cls(lambda t: np.ones_like(np.asarray(t, dtype=float)), a, b)

    @classmethod
    def power(cls, c, p, a=0.0, b=None):
        """``(c - t)**p`` on ``[a, b]`` (``b`` defaults to ``c``)."""
        b = c if b is None else b
        if b > c:
            raise ValueError("(c - t)**p must be nonnegative on the domain")
        if b == c and p != 0:
            return cls(lambda t: (c - np.asarray(t, dtype=float)) ** p, a, b,
                       right_exp=p, regular=lambda t: np.ones_like(np.asarray(t, dtype=float)))
        return cls(lambda t: (c - np.asarray(t, dtype=float)) ** p, a, b)

    def regular_part(self, t):
        if self.regular is not None:
            return self.regular(t)
        # QAWS samples the endpoints themselves; step inside to divide there
        span = self.b - self.a
        t = min(max(t, self.a + 1e-12 * span), self.b - 1e-12 * span)
        val = self.evaluator(t)
        if self.left_exp:
            val = val / (t - self.a) ** self.left_exp
        if self.right_exp:
            val = val / (self.b - t) ** self.right_exp
        return val

    def integrate(self, f, epsabs=EPSABS, epsrel=EPSREL):
        """``int_a^b f(t) w(t) dt``."""
        if self.left_exp or self.right_exp:
            return quad(lambda t: f(t) * self.regular_part(t), self.a, self.b,
                        left_exp=self.left_exp, right_exp=self.right_exp,
                        epsabs=epsabs, epsrel=epsrel)
        return quad(lambda t: f(t) * self.evaluator(t), self.a, self.b,
                    epsabs=epsabs, epsrel=epsrel)

    @cached_property
    def mass(self) -> float:
        """Total mass ``k_w``."""
        return self.integrate(lambda t: 1.0)


def inner_product(f, g, w: WeightFunction) -> float:
    """Weighted inner product ``int f g w dt``."""
    return w.integrate(lambda t: f(t) * g(t))


class _YSpace:
    """The weight pushed forward through ``y = t**lam``."""

    def __init__(self, w: WeightFunction, lam: float):
        if lam != 1.0 and w.a < 0:
            raise ValueError("fractional lambda needs a weight domain with a >= 0")
        self.w = w
        self.lam = lam
        self.a = float(ypow(w.a, lam))
        self.b = float(ypow(w.b, lam))
        if lam == 1.0:
            self.left, self.right = w.left_exp, w.right_exp
        elif w.a == 0.0:
            # t**L * (dt/dy) = y**((L + 1)/lam - 1) / lam exactly
            self.left, self.right = (w.left_exp + 1.0) / lam - 1.0, w.right_exp
        else:
            self.left, self.right = w.left_exp, w.right_exp

    def regular(self, y):
        w, lam = self.w, self.lam
        if lam == 1.0:
            return w.regular_part(y)
        t = y ** (1.0 / lam)
        val = w.regular_part(t)
        if w.a == 0.0:
            val = val / lam
        else:
            val = val * y ** (1.0 / lam - 1.0) / lam
            if w.left_exp:
                val = val * self._slope(t - w.a, y - self.a, self.a) ** w.left_exp
        if w.right_exp:
            val = val * self._slope(w.b - t, self.b - y, self.b) ** w.right_exp
        return val

    def _slope(self, dt, dy, y_end):
        # dt/dy, falling back to the derivative of y**(1/lam) at the endpoint
        if dy == 0.0:
            return y_end ** (1.0 / self.lam - 1.0) / self.lam
        return dt / dy

    def integrate(self, f, epsabs=0.0, epsrel=REL_TOL):
        return quad(lambda y: f(y) * self.regular(y), self.a, self.b,
                    left_exp=self.left, right_exp=self.right,
                    epsabs=epsabs, epsrel=epsrel)


@dataclass(frozen=True)
class OrthogonalSequence:
    """Recurrence data of the monic orthogonal Müntz polynomials ``p_n``.

    ``p_{n+1}(y) = (y - alphas[n]) p_n(y) - betas[n-1] p_{n-1}(y)`` in
    ``y = t**lam``; ``norms2[n] = ||p_n||_w**2``.
    """

    lam: float
    alphas: np.ndarray
    betas: np.ndarray
    norms2: np.ndarray
    weight: WeightFunction
    max_degree: int

    def eval_y(self, n: int, y):
        """``p_n`` evaluated at ``y = t**lam``."""
        y = np.asarray(y, dtype=float)
        p_prev, p = np.zeros_like(y), np.ones_like(y)
        for k in range(n):
            b = self.betas[k - 1] if k else 0.0
            p_prev, p = p, (y - self.alphas[k]) * p - b * p_prev
        return p

    def __call__(self, n: int, t):
        return self.eval_y(n, ypow(t, self.lam))

    def jacobi_matrix(self, n: int):
        """Diagonal and off-diagonal of the ``n x n`` Jacobi matrix."""
        if not 1 <= n <= self.max_degree:
            raise ValueError(f"need 1 <= n <= {self.max_degree}")
        return self.alphas[:n].copy(), np.sqrt(self.betas[: n - 1])


class OrthogonalityError(ArithmeticError):
    pass


def orthogonal_monic_sequence(w: WeightFunction, lam: float, n_max: int,
                              check: bool = True) -> OrthogonalSequence:
    """Stieltjes procedure for the orthogonal monic Müntz polynomials of ``w``.

    Inner products are computed in ``y = t**lam``. With ``check`` the
    generated ``p_0..p_{n_max}`` are verified to be mutually orthogonal to
    ``1e-10`` relative to their norms.
    """
    lam = check_lambda(lam)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ys = _YSpace(w, lam)
    alphas, betas, norms2 = [], [], []

    def poly(n):
        def p(y):
            y = np.asarray(y, dtype=float)
            q_prev, q = np.zeros_like(y), np.ones_like(y)
            for k in range(n):
                b = betas[k - 1] if k else 0.0
                q_prev, q = q, (y - alphas[k]) * q - b * q_prev
            return q
        return p

    for n in range(n_max + 1):
        p = poly(n)
        nrm = ys.integrate(lambda y: p(y) ** 2)
        if not nrm > 0:
            raise OrthogonalityError(f"nonpositive norm at degree {n}: {nrm}")
        norms2.append(nrm)
        if n >= 1:
            beta = nrm / norms2[n - 1]
            if not beta > 0:
                raise OrthogonalityError(f"beta_{n} = {beta} is not positive")
            if n < n_max:
                betas.append(beta)
        if n < n_max:
            alphas.append(ys.integrate(lambda y: y * p(y) ** 2) / nrm)

    seq = OrthogonalSequence(lam, np.array(alphas), np.array(betas), np.array(norms2), w, n_max)
    if check:
        for j in range(n_max + 1):
            pj = poly(j)
            for k in range(j + 1, n_max + 1):
                pk = poly(k)
                scale = math.sqrt(norms2[j] * norms2[k])
                ip = ys.integrate(lambda y: pj(y) * pk(y), epsabs=1e-3 * ORTHO_TOL * scale)
                if abs(ip) > ORTHO_TOL * scale:
                    raise OrthogonalityError(
                        f"(p_{j}, p_{k}) = {ip:.3e}: integration accuracy broke down"
                    )
    return seq


def roots(seq: OrthogonalSequence, n: int) -> np.ndarray:
    """Zeros of ``p_n`` in ``t``, ascending."""
    d, e = seq.jacobi_matrix(n)
    y = eigh_tridiagonal(d, e, eigvals_only=True) if n > 1 else d
    y = np.sort(y)
    if seq.lam != 1.0:
        if np.any(y < 0):
            raise ValueError("negative zero in y-space: cannot take a fractional root")
        t = y ** (1.0 / seq.lam)
    else:
        t = y
    w = seq.weight
    if np.any(t < w.a) or np.any(t > w.b):
        raise ValueError("zeros fell outside the weight's domain")
    return t
