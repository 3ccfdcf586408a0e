"""Classical orthogonal polynomials with arbitrary real parameters.

Polynomials are kept as monomial coefficient vectors because the extension
formulas need exact derivatives and products, not just point values.
Jacobi and Laguerre coefficients come from finite Pochhammer-product sums, so
negative and non-integer parameters (seed functions) never hit a division
by a vanishing recurrence denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

__all__ = [
    "MAX_DEGREE",
    "Poly",
    "pochhammer",
    "gen_binomial",
    "jacobi_poly",
    "jacobi_eval",
    "jacobi_deriv",
    "laguerre_poly",
    "log_gamma",
]

MAX_DEGREE = 64


def pochhammer(x: float, k: int) -> float:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1)."""
    out = 1.0
    for j in range(k):
        out *= x + j
    return out


def gen_binomial(x: float, k: int) -> float:
    """Generalized binomial coefficient C(x, k) for real x, integer k >= 0."""
    if k < 0:
        return 0.0
    out = 1.0
    for j in range(k):
        out *= (x - j) / (j + 1)
    return out


@dataclass(frozen=True)
class Poly:
    """Real polynomial c_0 + c_1 x + ... + c_d x^d.

    Exact-zero leading coefficients are stripped on construction, so
    ``degree`` is the true degree unless rounding left a tiny remainder.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        c = [float(v) for v in coeffs] or [0.0]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if len(c) - 1 > MAX_DEGREE:
            raise ValueError(f"polynomial degree {len(c) - 1} exceeds cap {MAX_DEGREE}")
        if not all(math.isfinite(v) for v in c):
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, value: float) -> Poly:
        return cls([value])

    @classmethod
    def linear(cls, c0: float, c1: float) -> Poly:
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0.0

    def __call__(self, x):
        return npoly.polyval(x, self.coeffs)

    def deriv(self, order: int = 1) -> Poly:
        if self.degree < order:
            return Poly([0.0])
        return Poly(npoly.polyder(self.coeffs, order))

    def compose_linear(self, a: float, b: float) -> Poly:
        """Return the polynomial x -> self(a + b x)."""
        out = Poly([0.0])
        basis = Poly([1.0])
        step = Poly([a, b])
        for c in self.coeffs:
            out = out + c * basis
            basis = basis * step
        return out

    def trim(self, rtol: float) -> Poly:
        """Drop trailing coefficients below ``rtol`` times the largest one."""
        scale = max(abs(c) for c in self.coeffs)
        c = list(self.coeffs)
        while len(c) > 1 and abs(c[-1]) <= rtol * scale:
            c.pop()
        return Poly(c)

    def __add__(self, other):
        if isinstance(other, Poly):
            return Poly(npoly.polyadd(self.coeffs, other.coeffs))
        return Poly(npoly.polyadd(self.coeffs, [float(other)]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(npoly.polymul(self.coeffs, other.coeffs))
        return Poly([float(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> Poly:
        return Poly([c / scalar for c in self.coeffs])


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds cap {MAX_DEGREE}")


def _use_sum(n: int, a: float, b: float) -> bool:
    # The recurrence is the accurate route for classical parameters; outside
    # that range its small denominators amplify rounding, while the sum stays
    # accurate at the low degrees where such parameters are used.
    if not (a > -1.0 and b > -1.0):
        return True
    return any(min(abs(k + a + b), abs(2 * k + a + b - 2)) < 0.1 for k in range(2, n + 1))


def _jacobi_sum(n: int, a: float, b: float) -> Poly:
    # terminating hypergeometric sum in powers of (z-1)/2; total in (a, b)
    shifted = [
        pochhammer(n + a + b + 1.0, k) * pochhammer(a + k + 1.0, n - k)
        / (math.factorial(k) * math.factorial(n - k))
        for k in range(n + 1)
    ]
    return Poly(shifted).compose_linear(-0.5, 0.5)


def _recurrence_coeffs(k: int, a: float, b: float):
    c = 2 * k + a + b
    d = 2 * k * (k + a + b) * (c - 2)
    return (c - 1) * c * (c - 2) / d, (c - 1) * (a * a - b * b) / d, 2 * (k + a - 1) * (k + b - 1) * c / d


def jacobi_poly(n: int, a: float, b: float) -> Poly:
    """Jacobi polynomial P_n^{(a,b)}(z) for any real a, b, as monomial coefficients in z.

    Classical parameters (a, b > -1) go through the three-term recurrence,
    which keeps high-degree coefficients far more accurate; everything else
    expands the hypergeometric sum.
    """
    _check_degree(n)
    if _use_sum(n, a, b):
        return _jacobi_sum(n, a, b)
    prev, cur = Poly.constant(1.0), Poly([0.5 * (a - b), 0.5 * (a + b + 2.0)])
    if n == 0:
        return prev
    z = Poly([0.0, 1.0])
    for k in range(2, n + 1):
        c1, c0, c2 = _recurrence_coeffs(k, a, b)
        prev, cur = cur, cur * z * c1 + cur * c0 - prev * c2
    return cur


def jacobi_eval(n: int, a: float, b: float, z):
    """P_n^{(a,b)}(z) evaluated by forward recurrence on values.

    Better conditioned than monomial evaluation for large n; non-classical
    parameters are routed through :func:`jacobi_poly`.
    """
    _check_degree(n)
    z = np.asarray(z, dtype=float)
    if _use_sum(n, a, b):
        return jacobi_poly(n, a, b)(z)
    prev, cur = np.ones_like(z), 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z
    if n == 0:
        return prev
    for k in range(2, n + 1):
        c1, c0, c2 = _recurrence_coeffs(k, a, b)
        prev, cur = cur, (c1 * z + c0) * cur - c2 * prev
    return cur


def jacobi_deriv(p: Poly) -> Poly:
    """Coefficientwise derivative of a polynomial."""
    return p.deriv()


def laguerre_poly(n: int, a: float) -> Poly:
    """Generalized Laguerre polynomial L_n^{(a)}(x), coefficients in x."""
    _check_degree(n)
    return Poly([
        (-1.0) ** k * gen_binomial(n + a, n - k) / math.factorial(k)
        for k in range(n + 1)
    ])


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)
