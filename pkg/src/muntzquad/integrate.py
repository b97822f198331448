"""Adaptive Gauss-Kronrod integration with endpoint-singularity handling.

Thin layer over QUADPACK (:func:`scipy.integrate.quad`). Algebraic endpoint
factors ``(t - a)**p`` and ``(b - t)**q`` are passed to the ``'alg'`` weight
of QUADPACK's QAWS routine, which integrates them analytically; everything
else goes through QAGS with its epsilon-algorithm extrapolation.
"""

import warnings

import numpy as np
from scipy import integrate as _si

EPSABS = 1e-14
EPSREL = 1e-13
LIMIT = 400


class IntegrationError(ArithmeticError):
    """Adaptive integration missed its tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


def quad(f, a, b, *, left_exp=0.0, right_exp=0.0, epsabs=EPSABS, epsrel=EPSREL,
         points=None, slack=1e3):
    """Integrate ``f(t) * (t-a)**left_exp * (b-t)**right_exp`` over ``[a, b]``.

    Raises :class:`IntegrationError` when the QUADPACK error estimate exceeds
    ``slack`` times the requested tolerance (QUADPACK estimates are
    pessimistic, so a small overshoot is tolerated).
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    kwargs = dict(epsabs=epsabs, epsrel=epsrel, limit=LIMIT, full_output=1)
    if left_exp or right_exp:
        if points is not None:
            raise ValueError("breakpoints are not supported with algebraic weights")
        kwargs.update(weight="alg", wvar=(float(left_exp), float(right_exp)))
    elif points is not None:
        pts = [p for p in points if a < p < b]
        if pts:
            kwargs["points"] = pts
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _si.IntegrationWarning)
        out = _si.quad(f, a, b, **kwargs)
    value, err = out[0], out[1]
    tol = max(epsabs, epsrel * abs(value))
    if np.isfinite(value) and err > slack * tol:
        # cancellation (e.g. an odd integrand): judge against the integral of |f|
        kwargs.update(epsabs=0.0, epsrel=1e-6, full_output=0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", _si.IntegrationWarning)
            mag = _si.quad(lambda t: abs(f(t)), a, b, **kwargs)[0]
        tol = max(tol, epsrel * mag)
    if not np.isfinite(value) or err > slack * tol:
        raise IntegrationError(
            f"quad on [{a}, {b}] reached error estimate {err:.3e} (value {value:.16e})",
            estimate=value, error=err,
        )
    return value


def quad_vec(f, a, b, *, epsabs=EPSABS, epsrel=EPSREL, slack=1e3):
    """Integrate a vector-valued smooth-ish ``f`` over ``[a, b]``."""
    a = float(a)
    b = float(b)
    if a == b:
        return np.zeros_like(np.asarray(f(a), dtype=float))
    value, err = _si.quad_vec(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=LIMIT)
    scale = np.max(np.abs(value)) if np.size(value) else 0.0
    if not np.all(np.isfinite(value)) or err > slack * max(epsabs, epsrel * scale):
        raise IntegrationError(
            f"quad_vec on [{a}, {b}] reached error estimate {err:.3e}",
            estimate=value, error=err,
        )
    return value
