"""Adaptive quadrature with an explicit failure mode."""

from __future__ import annotations

import math
import warnings

from scipy import integrate

__all__ = ["QuadratureError", "quad_integrate"]


class QuadratureError(RuntimeError):
    """The integrator could not certify the requested accuracy."""


def quad_integrate(fn, interval, tol: float = 1e-10, *, rtol: float = 0.0, alg=None,
                   limit: int = 500) -> float:
    """Integrate ``fn`` over ``interval`` by adaptive Gauss-Kronrod (QUADPACK).

    Succeeds when the error estimate is below ``max(tol, rtol * |I|)``.
    ``alg=(a, b)`` multiplies the integrand by (x - lo)^a (hi - x)^b and
    treats those endpoint singularities exactly; both exponents must be > -1.
    Infinite endpoints are allowed when ``alg`` is not given.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    kwargs = {"epsabs": tol, "epsrel": rtol, "limit": limit}
    if alg is not None:
        a, b = alg
        if not (a > -1 and b > -1):
            raise ValueError(f"weight exponents must exceed -1, got {alg}")
        if math.isinf(lo) or math.isinf(hi):
            raise ValueError("algebraic weights need a finite interval")
        kwargs.update(weight="alg", wvar=(a, b))
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(fn, lo, hi, **kwargs)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(str(exc).strip().splitlines()[0]) from exc
    if not math.isfinite(value) or err > max(tol, rtol * abs(value)):
        raise QuadratureError(f"error estimate {err:.3g} above tolerance (value {value:.6g})")
    return value
