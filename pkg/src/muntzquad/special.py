"""Scalar special functions used throughout the package.

Gamma and log-Gamma come from :mod:`math`; the Gauss hypergeometric function
from :mod:`scipy.special` (only used as an independent check on quadrature).
The Mittag-Leffler function is summed directly from its power series, which
is adequate for the moderate arguments that show up on ``[0, 1]``.
"""

import math
import cmath

import numpy as np
from scipy import special as _sp

GAMMA_OVERFLOW = 171.6
ML_MAX_TERMS = 300
ML_MAX_ABS_Z = 50.0


class ConvergenceError(ArithmeticError):
    """A series or iteration stopped before reaching its tolerance."""


def _check_finite(*values):
    for v in values:
        if not cmath.isfinite(v):
            raise ValueError(f"non-finite argument {v!r}")


def gamma(x: float) -> float:
    """Gamma function for positive real ``x``."""
    _check_finite(x)
    if x <= 0:
        raise ValueError(f"gamma: argument must be positive, got {x}")
    if x > GAMMA_OVERFLOW:
        raise OverflowError(f"gamma: argument {x} overflows double precision")
    return math.gamma(x)


def beta(a: float, b: float) -> float:
    """Euler Beta function, evaluated through log-Gamma."""
    _check_finite(a, b)
    if a <= 0 or b <= 0:
        raise ValueError(f"beta: arguments must be positive, got ({a}, {b})")
    # symmetric in (a, b) by construction: the sum is commutative in IEEE
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real ``z <= 1``."""
    return float(_sp.hyp2f1(a, b, c, z))


def mittag_leffler(alpha: float, beta: float, z: complex) -> complex:
    r"""Two-parameter Mittag-Leffler function :math:`E_{\alpha,\beta}(z)`.

    Summed from :math:`\sum_k z^k / \Gamma(\alpha k + \beta)`. Terms are
    generated as ``exp(k log z - lgamma(alpha k + beta))`` so that large
    ``k`` does not overflow the Gamma function.
    """
    z = complex(z)
    _check_finite(alpha, beta, z)
    if alpha <= 0:
        raise ValueError("mittag_leffler: alpha must be positive")
    if abs(z) > ML_MAX_ABS_Z:
        raise ValueError(f"mittag_leffler: |z| = {abs(z):.3g} exceeds the series regime")

    total = 0j
    for k in range(ML_MAX_TERMS):
        arg = alpha * k + beta
        term = _power_over_gamma(z, k, arg)
        total += term
        if k > 0 and abs(term) <= 1e-16 * max(abs(total), 1e-300):
            return total
        if z == 0 and k == 0:
            return total
    raise ConvergenceError(
        f"mittag_leffler({alpha}, {beta}, {z}) did not converge in {ML_MAX_TERMS} terms"
    )


def _power_over_gamma(z: complex, k: int, arg: float) -> complex:
    # z**k / Gamma(arg), with 1/Gamma vanishing at the poles
    if arg <= 0 and float(arg).is_integer():
        return 0j
    if k == 0:
        return 1.0 / math.gamma(arg) + 0j
    if z == 0:
        return 0j
    sign = math.copysign(1.0, math.gamma(arg)) if arg < 0 else 1.0
    return sign * cmath.exp(k * cmath.log(z) - math.lgamma(arg))


def caputo_sin(freq: float, alpha: float, t: float) -> float:
    """Caputo derivative of order ``alpha`` in (0, 1] of ``sin(freq * t)``.

    Uses the Mittag-Leffler representation with ``m = 1``; the two conjugate
    terms combine into a real number.
    """
    if not 0 < alpha <= 1:
        raise ValueError("caputo_sin: alpha must lie in (0, 1]")
    if t <= 0:
        raise ValueError("caputo_sin: t must be positive")
    if alpha == 1:
        return freq * math.cos(freq * t)
    m = 1
    b = m - alpha + 1
    iz = 1j * freq * t
    value = (
        -0.5j
        * (1j * freq) ** m
        * t ** (m - alpha)
        * (mittag_leffler(1, b, iz) - (-1) ** m * mittag_leffler(1, b, -iz))
    )
    scale = max(1.0, abs(value))
    assert abs(value.imag) <= 1e-12 * scale, value
    return value.real


def chebyshev_roots(kind: int, degree: int, interval=(-1.0, 1.0)) -> np.ndarray:
    """Roots of the Chebyshev polynomial of the first or second kind.

    The roots are mapped affinely onto ``interval`` and returned in
    ascending order.
    """
    a, b = map(float, interval)
    if degree < 1:
        raise ValueError("chebyshev_roots: degree must be >= 1")
    if not a < b:
        raise ValueError("chebyshev_roots: need a < b")
    k = np.arange(1, degree + 1)
    if kind == 1:
        x = np.cos((2 * k - 1) * np.pi / (2 * degree))
    elif kind == 2:
        x = np.cos(k * np.pi / (degree + 1))
    else:
        raise ValueError("chebyshev_roots: kind must be 1 or 2")
    x = x[::-1]
    # symmetrize so that roundoff does not break the midpoint symmetry
    x = 0.5 * (x - x[::-1])
    return 0.5 * (a + b) + 0.5 * (b - a) * x
