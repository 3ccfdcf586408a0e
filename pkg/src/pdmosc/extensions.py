"""Rational extensions of the PDM oscillator built on X_m-Jacobi polynomials.

An extension of type I, II or III with degree m deforms V(r; L, omega) by a
rational term built from a Jacobi polynomial p_m(t) with no zeros in (-1, 1).
Types I and II keep the spectrum; type III adds one level below it.

Jacobi parameters are written with kappa = Delta / (2 alpha).  Shifting
Delta by +-2 alpha shifts kappa by +-1, which is how the "shifted"
polynomials p_m^{(L+1, Delta+2alpha)} and friends are indexed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oracle.quadrature import quad_integrate
from .oscillator import N_CAP, energy, ground_state_unnormalized, potential
from .pct import ModelParams, deforming_f, deforming_f_prime, t_of_r
from .specfun import Poly, jacobi_poly, laguerre_poly, log_gamma

__all__ = [
    "KINDS",
    "InvalidExtension",
    "ExtensionSpec",
    "SeedFunction",
    "extension_violations",
    "seed_violations",
    "check_extension",
    "partner_params",
    "gamma_shift",
    "seed",
    "seed_function",
    "seed_energy",
    "seed_superpotential",
    "denominator_poly",
    "p_poly",
    "rational_term",
    "extended_potential",
    "extended_energy",
    "extended_levels",
    "eop_polynomial",
    "eop_weight_exponents",
    "extended_wavefunction",
    "extended_norm",
    "extended_superpotential",
    "extended_superpotential_prime",
    "shape_invariance_partner",
    "explicit_m1_wavefunction",
    "q_poly",
    "limit_seed",
    "limit_seed_energy",
    "limit_extended_energy",
    "limit_rational_term",
    "limit_extended_potential",
    "limit_eop",
]

KINDS = ("I", "II", "III")


class InvalidExtension(ValueError):
    """An extension spec violates one of its parameter constraints."""


@dataclass(frozen=True)
class ExtensionSpec:
    kind: str
    m: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidExtension(f"extension type must be one of {KINDS}, got {self.kind!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise InvalidExtension(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        if self.kind == "III" and self.m % 2:
            raise InvalidExtension(f"type III needs even m, got m={self.m}")

    def as_dict(self) -> dict:
        return {"type": self.kind, "m": self.m}


# -- validity ----------------------------------------------------------------

def extension_violations(spec: ExtensionSpec, params: ModelParams) -> list[str]:
    """Constraints on (L, omega, alpha) that an extension of these params breaks."""
    if not params.deformed:
        return ["extension needs alpha > 0 (use the limit_* functions for alpha = 0)"]
    m, L, k = spec.m, params.L, params.kappa
    out = []
    if spec.kind in ("I", "III") and not m < k + 1:
        out.append(f"m < Delta/(2 alpha) + 1 fails: m={m}, Delta/(2 alpha)+1={k + 1:.6g}")
    if spec.kind in ("II", "III") and not m < L + 1.5:
        out.append(f"m < L + 3/2 fails: m={m}, L={L}")
    if spec.kind == "II" and not params.alpha < params.omega / (2.0 * math.sqrt(2.0)):
        out.append(f"alpha < omega/(2 sqrt 2) fails: alpha={params.alpha:.6g}, omega={params.omega:.6g}")
    return out


def seed_violations(spec: ExtensionSpec, params: ModelParams) -> list[str]:
    """Constraints for a seed function evaluated at its own (L, omega)."""
    if not params.deformed:
        return ["seed needs alpha > 0 (use limit_seed for alpha = 0)"]
    m, L, k = spec.m, params.L, params.kappa
    out = []
    if spec.kind in ("I", "III") and not m < k:
        out.append(f"m < Delta/(2 alpha) fails: m={m}, Delta/(2 alpha)={k:.6g}")
    if spec.kind in ("II", "III") and not m < L + 0.5:
        out.append(f"m < L + 1/2 fails: m={m}, L={L}")
    return out


def check_extension(spec: ExtensionSpec, params: ModelParams) -> None:
    bad = extension_violations(spec, params)
    if bad:
        raise InvalidExtension(f"invalid type {spec.kind} extension (m={spec.m}): " + "; ".join(bad))


def _check_seed(spec: ExtensionSpec, params: ModelParams) -> None:
    bad = seed_violations(spec, params)
    if bad:
        raise InvalidExtension(f"invalid type {spec.kind} seed (m={spec.m}): " + "; ".join(bad))


def _limit_violations(spec: ExtensionSpec, L: int) -> list[str]:
    if spec.kind in ("II", "III") and not spec.m < L + 0.5:
        return [f"m < L + 1/2 fails: m={spec.m}, L={L}"]
    return []


# -- partners and seeds ------------------------------------------------------

def _partner_omega(kind: str, params: ModelParams) -> float:
    a, w, D = params.alpha, params.omega, params.Delta
    sign = -1.0 if kind == "II" else 1.0
    return math.sqrt(w * w + 4 * a * a + sign * 4 * a * D)


def partner_params(spec: ExtensionSpec, params: ModelParams) -> ModelParams:
    """(L', omega') of the conventional partner whose seed builds the extension.

    Raises for type I with L = 0, where L' = -1 is only formal.
    """
    check_extension(spec, params)
    Lp = params.L - 1 if spec.kind == "I" else params.L + 1
    if Lp < 0:
        raise InvalidExtension("type I partner with L = 0 would have L' = -1")
    return params.with_(L=Lp, omega=_partner_omega(spec.kind, params))


def gamma_shift(spec: ExtensionSpec, params: ModelParams) -> float:
    check_extension(spec, params)
    a, L, D = params.alpha, params.L, params.Delta
    if spec.kind == "I":
        return a * (2 * L - 1) - D
    if spec.kind == "II":
        return -a * (2 * L + 3) + D
    return -a * (2 * L + 3) - D


def _seed_shape(kind: str, m: int, L: float, k: float) -> tuple[float, float, Poly]:
    """(power of r, power of f, Jacobi factor in t) for a seed at (L, kappa)."""
    if kind == "I":
        return L + 1.0, -0.5 * (L + 2.5 - k), jacobi_poly(m, L + 0.5, -k)
    if kind == "II":
        return -float(L), -0.5 * (-L + 1.5 + k), jacobi_poly(m, -L - 0.5, k)
    return -float(L), -0.5 * (-L + 1.5 - k), jacobi_poly(m, -L - 0.5, -k)


@dataclass(frozen=True)
class SeedFunction:
    """Unnormalized seed solution chi(r) = r^a f^b P(t) below the ground state."""

    spec: ExtensionSpec
    params: ModelParams
    energy: float
    poly: Poly
    r_power: float
    f_power: float

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise ValueError("r must be positive")
        a = self.params.alpha
        out = r**self.r_power * np.exp(self.f_power * np.log1p(a * r * r)) * self.poly(t_of_r(self.params, r))
        return float(out) if out.ndim == 0 else out

    def log_derivative(self, r):
        """d/dr log chi."""
        r = np.asarray(r, dtype=float)
        a = self.params.alpha
        f = 1.0 + a * r * r
        t = (2.0 - f) / f
        dt_dr = -4.0 * a * r / f**2
        out = (self.r_power / r + self.f_power * 2.0 * a * r / f
               + self.poly.deriv()(t) / self.poly(t) * dt_dr)
        return float(out) if out.ndim == 0 else out


def seed(spec: ExtensionSpec, params: ModelParams) -> SeedFunction:
    _check_seed(spec, params)
    rp, fp, poly = _seed_shape(spec.kind, spec.m, params.L, params.kappa)
    return SeedFunction(spec, params, seed_energy(spec, params), poly, rp, fp)


def seed_function(spec: ExtensionSpec, params: ModelParams, r):
    return seed(spec, params)(r)


def seed_energy(spec: ExtensionSpec, params: ModelParams) -> float:
    _check_seed(spec, params)
    a, L, D, m = params.alpha, params.L, params.Delta, spec.m
    if spec.kind == "I":
        return a * (2 * L + 2.5) - (L + 1.5) * D + 4 * (a * (L + 1.5) - 0.5 * D) * m + 4 * a * m * m
    if spec.kind == "II":
        return a * (-2 * L + 0.5) - (L - 0.5) * D + 4 * (a * (-L + 0.5) + 0.5 * D) * m + 4 * a * m * m
    return a * (-2 * L + 0.5) + (L - 0.5) * D + 4 * (a * (-L + 0.5) - 0.5 * D) * m + 4 * a * m * m


def seed_superpotential(spec: ExtensionSpec, params: ModelParams, r):
    """W = -f (log chi)' - f'/2 for the seed at ``params`` (the partner's own parameters)."""
    s = seed(spec, params)
    return -deforming_f(params, r) * s.log_derivative(r) - 0.5 * deforming_f_prime(params, r)


# -- extended potentials -----------------------------------------------------

def p_poly(kind: str, m: int, L: float, k: float) -> Poly:
    """p_m^{(L, Delta)}(t) with kappa = Delta/(2 alpha); p_{-1} is zero."""
    if m < 0:
        return Poly([0.0])
    if kind == "I":
        return jacobi_poly(m, L - 0.5, -k - 1.0)
    if kind == "II":
        return jacobi_poly(m, -L - 1.5, k - 1.0)
    return jacobi_poly(m, -L - 1.5, -k - 1.0)


def denominator_poly(spec: ExtensionSpec, params: ModelParams) -> Poly:
    check_extension(spec, params)
    return p_poly(spec.kind, spec.m, params.L, params.kappa)


def _rational_from_p(p: Poly, alpha: float, t):
    p1, p2 = p.deriv(), p.deriv(2)
    pv = p(t)
    d1 = p1(t) / pv
    return 8.0 * alpha * (t * d1 - (1.0 - t * t) * (p2(t) / pv - d1 * d1))


def rational_term(spec: ExtensionSpec, params: ModelParams, r):
    p = denominator_poly(spec, params)
    out = _rational_from_p(p, params.alpha, np.asarray(t_of_r(params, r)))
    return float(out) if np.ndim(out) == 0 else out


def extended_potential(spec: ExtensionSpec, params: ModelParams, r):
    """V_ext = V + V_rat; the isospectral partner is V_ext + gamma_shift()."""
    return potential(params, r) + rational_term(spec, params, r)


def _check_level(spec: ExtensionSpec, n: int) -> None:
    if int(n) != n:
        raise InvalidExtension(f"level must be an integer, got {n!r}")
    if n > N_CAP:
        raise InvalidExtension(f"level {n} exceeds cap {N_CAP}")
    if n < 0 and not (spec.kind == "III" and n == -spec.m - 1):
        allowed = "n >= 0 or n = -m-1" if spec.kind == "III" else "n >= 0"
        raise InvalidExtension(f"type {spec.kind} levels need {allowed}, got n={n}")


def extended_energy(spec: ExtensionSpec, params: ModelParams, n: int) -> float:
    check_extension(spec, params)
    _check_level(spec, n)
    if spec.kind in ("I", "II"):
        return energy(params, n)
    a, L, D = params.alpha, params.L, params.Delta
    return a * (6 * L + 12.5) + (L + 3.5) * D + 4 * (a * (L + 3.5) + 0.5 * D) * n + 4 * a * n * n


def extended_levels(spec: ExtensionSpec, n_max: int) -> list[int]:
    """Level labels in increasing energy order up to n_max."""
    head = [-spec.m - 1] if spec.kind == "III" else []
    return head + list(range(n_max + 1))


def _jac(n: int, a: float, b: float) -> Poly:
    return jacobi_poly(n, a, b) if n >= 0 else Poly([0.0])


def _eop(kind: str, m: int, n: int, L: float, k: float) -> Poly:
    if kind == "III" and n == -m - 1:
        return Poly([1.0])
    p = p_poly(kind, m, L, k)
    if kind == "I":
        Pn = _jac(n, L - 0.5, 1.0 + k)
        bracket = ((n + L + 1.5 + k) * p * _jac(n - 1, L + 0.5, 2.0 + k)
                   - (m + L - 0.5 - k) * p_poly("I", m - 1, L + 1, k - 1) * Pn)
        return (k + 1.0) * p * Pn + 0.5 * Poly([1.0, 1.0]) * bracket
    if kind == "II":
        Pn = _jac(n, L + 1.5, k - 1.0)
        bracket = ((n + L + 1.5 + k) * p * _jac(n - 1, L + 2.5, k)
                   - (m - L - 1.5 + k) * p_poly("II", m - 1, L - 1, k + 1) * Pn)
        return -(L + 1.5) * p * Pn + 0.5 * Poly([1.0, -1.0]) * bracket
    Pn = _jac(n, L + 1.5, 1.0 + k)
    bracket = ((n + L + 3.5 + k) * p * _jac(n - 1, L + 2.5, 2.0 + k)
               - (m - L - 1.5 - k) * p_poly("III", m - 1, L - 1, k - 1) * Pn)
    lead = Poly([-(L + 0.5 - k), -(L + 2.5 + k)])
    return lead * p * Pn + 0.5 * Poly([1.0, 0.0, -1.0]) * bracket


def eop_polynomial(spec: ExtensionSpec, params: ModelParams, n: int) -> Poly:
    """Q_n^{(m)}(t): the exceptional Jacobi polynomial of level n."""
    check_extension(spec, params)
    _check_level(spec, n)
    return _eop(spec.kind, spec.m, n, params.L, params.kappa)


def eop_weight_exponents(params: ModelParams) -> tuple[float, float]:
    """Exponents (a, b) of the weight (1-t)^a (1+t)^b / p^2 on (-1, 1)."""
    return params.L + 0.5, params.kappa


def _weighted_t_integral(fn, params: ModelParams, rtol: float) -> float:
    a, b = eop_weight_exponents(params)
    return quad_integrate(fn, (-1.0, 1.0), 0.0, rtol=rtol, alg=(b, a))


def extended_norm(spec: ExtensionSpec, params: ModelParams, n: int) -> float:
    """Positive constant N with N * psi0_unnorm * Q_n / p normalized on (0, inf)."""
    p = denominator_poly(spec, params)
    Q = eop_polynomial(spec, params, n)
    integral = _weighted_t_integral(lambda t: (Q(t) / p(t)) ** 2, params, 1e-12)
    # the r-integral equals alpha^{-(L+3/2)} 2^{-(A+B+1)} times the t-integral
    A, B = params.A, params.B
    log_int = math.log(integral) - (params.L + 1.5) * math.log(params.alpha) - (A + B + 1) * math.log(2.0)
    return math.exp(-0.5 * log_int)


def _sign_at_origin(Q: Poly, p: Poly) -> float:
    for t in (1.0, 1.0 - 1e-6, 1.0 - 1e-3):
        v = Q(t) / p(t)
        if v != 0.0:
            return math.copysign(1.0, v)
    return 1.0


def extended_wavefunction(spec: ExtensionSpec, params: ModelParams, n: int, r):
    """Normalized eigenfunction of V_ext, positive near r = 0."""
    check_extension(spec, params)
    _check_level(spec, n)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    if spec.kind == "I" and spec.m == 1 and 0 <= n <= 2 and abs(params.L + 0.5 - params.kappa) > 1e-8:
        return explicit_m1_wavefunction(params, n, r)
    p = denominator_poly(spec, params)
    Q = eop_polynomial(spec, params, n)
    t = t_of_r(params, r)
    scale = _sign_at_origin(Q, p) * extended_norm(spec, params, n)
    out = scale * ground_state_unnormalized(params, r) * Q(t) / p(t)
    return float(out) if np.ndim(out) == 0 else out


def _xjacobi_m1(params: ModelParams, n: int, r: np.ndarray) -> np.ndarray:
    """X_1-Jacobi polynomial of degree n+1 written in r, for n = 0, 1, 2."""
    L, a, D = params.L, params.alpha, params.Delta
    d = L + 0.5 - params.kappa
    f = 1.0 + a * r * r
    r2 = r * r
    if n == 0:
        return -(2 * L + 3 + (D + 2 * a) * r2) / (2 * d * f)
    if n == 1:
        return -((2 * L + 1) * (2 * L + 5) - D * (D + 4 * a) * r2 * r2) / (4 * d * f**2)
    if n == 2:
        poly = ((2 * L + 1) * (2 * L + 3) * (2 * L + 7)
                - (2 * L + 1) * (2 * L + 7) * (D + 6 * a) * r2
                - (2 * L + 7) * D * (D + 6 * a) * r2 * r2
                + D * (D + 2 * a) * (D + 6 * a) * r2**3)
        return -poly / (16 * d * f**3)
    raise ValueError("explicit X_1-Jacobi forms are available for n = 0, 1, 2")


def explicit_m1_norm(params: ModelParams, n: int) -> float:
    L, k = params.L, params.kappa
    log_n2 = (math.log(8.0) + (L + 1.5) * math.log(params.alpha) + 2 * math.log(abs(L + 0.5 - k))
              + math.log(L + 1.5 + k + 2 * n) + log_gamma(n + 1.0) + log_gamma(L + 1.5 + k + n)
              - math.log(L + 1.5 + n) - math.log(n + 1.0 + k)
              - log_gamma(L + 0.5 + n) - log_gamma(n + k))
    return math.exp(0.5 * log_n2)


def explicit_m1_wavefunction(params: ModelParams, n: int, r, sign_convention: bool = True):
    """Closed-form type I, m = 1 eigenfunction through X_1-Jacobi polynomials.

    With ``sign_convention`` the overall sign is flipped to be positive near r = 0.
    """
    check_extension(ExtensionSpec("I", 1), params)
    r = np.asarray(r, dtype=float)
    L, a, D, k = params.L, params.alpha, params.Delta, params.kappa
    env = r ** (L + 1) * np.exp(-0.5 * (L + 0.5 + k) * np.log1p(a * r * r)) / (2 * L + 1 + D * r * r)
    out = explicit_m1_norm(params, n) * env * _xjacobi_m1(params, n, r)
    if sign_convention:
        # every X_1 factor tends to a constant of sign -sign(L + 1/2 - kappa) at r = 0
        out = -math.copysign(1.0, L + 0.5 - k) * out
    return float(out) if np.ndim(out) == 0 else out


# -- deformed SUSY of the extended potentials ---------------------------------

def _logp_derivs(p: Poly, params: ModelParams, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """First and second r-derivatives of log p(t(r))."""
    a = params.alpha
    f = 1.0 + a * r * r
    t = (2.0 - f) / f
    t1 = -4.0 * a * r / f**2
    t2 = -4.0 * a / f**2 + 16.0 * a * a * r * r / f**3
    pv = p(t)
    d1 = p.deriv()(t) / pv
    d2 = p.deriv(2)(t) / pv
    return d1 * t1, (d2 - d1 * d1) * t1 * t1 + d1 * t2


def _ext_superpotential_parts(spec: ExtensionSpec, params: ModelParams, r):
    if spec.kind == "III":
        raise InvalidExtension("the extended superpotential is defined for types I and II only")
    check_extension(spec, params)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    L, k = params.L, params.kappa
    lo1, lo2 = _logp_derivs(p_poly(spec.kind, spec.m, L, k), params, r)
    up1, up2 = _logp_derivs(p_poly(spec.kind, spec.m, L + 1, k + 1.0), params, r)
    return r, up1 - lo1, up2 - lo2


def extended_superpotential(spec: ExtensionSpec, params: ModelParams, r):
    """W_ext = -f (log psi_0^ext)' - f'/2, closed form valid for types I and II."""
    r, g1, _ = _ext_superpotential_parts(spec, params, r)
    L, a, D = params.L, params.alpha, params.Delta
    out = -(L + 1) / r + 0.5 * (a + D) * r - (1.0 + a * r * r) * g1
    return float(out) if out.ndim == 0 else out


def extended_superpotential_prime(spec: ExtensionSpec, params: ModelParams, r):
    r, g1, g2 = _ext_superpotential_parts(spec, params, r)
    L, a, D = params.L, params.alpha, params.Delta
    out = (L + 1) / (r * r) + 0.5 * (a + D) - 2.0 * a * r * g1 - (1.0 + a * r * r) * g2
    return float(out) if out.ndim == 0 else out


def shape_invariance_partner(spec: ExtensionSpec, params: ModelParams) -> tuple[ModelParams, float]:
    """Parameters (L+1, omega') and constant R with V_ext + 2 f W_ext' = V_ext(L+1, omega') + R."""
    a, L, D, w = params.alpha, params.L, params.Delta, params.omega
    up = params.with_(L=L + 1, omega=math.sqrt(w * w + 4 * a * a + 4 * a * D))
    return up, a * (2 * L + 3 + D / a)


# -- constant-mass limits -----------------------------------------------------

def q_poly(kind: str, m: int, L: float) -> Poly:
    """Laguerre factor q_m^{(L)}(rho) of the alpha -> 0 extensions; q_{-1} is zero."""
    if m < 0:
        return Poly([0.0])
    if kind == "I":
        return laguerre_poly(m, L - 0.5).compose_linear(0.0, -1.0)
    if kind == "II":
        return laguerre_poly(m, -L - 1.5)
    return laguerre_poly(m, -L - 1.5).compose_linear(0.0, -1.0)


def limit_seed(spec: ExtensionSpec, L: int, omega: float, r):
    bad = _limit_violations(spec, L)
    if bad:
        raise InvalidExtension("; ".join(bad))
    r = np.asarray(r, dtype=float)
    x = 0.5 * omega * r * r
    if spec.kind == "I":
        out = r ** (L + 1) * np.exp(0.5 * x) * laguerre_poly(spec.m, L + 0.5)(-x)
    elif spec.kind == "II":
        out = r ** (-L) * np.exp(-0.5 * x) * laguerre_poly(spec.m, -L - 0.5)(x)
    else:
        out = r ** (-L) * np.exp(0.5 * x) * laguerre_poly(spec.m, -L - 0.5)(-x)
    return float(out) if out.ndim == 0 else out


def limit_seed_energy(spec: ExtensionSpec, L: int, omega: float) -> float:
    m = spec.m
    if spec.kind == "I":
        return -omega * (L + 1.5 + 2 * m)
    if spec.kind == "II":
        return -omega * (L - 0.5 - 2 * m)
    return -omega * (-L + 0.5 + 2 * m)


def limit_extended_energy(spec: ExtensionSpec, L: int, omega: float, n: int) -> float:
    """Constant-mass extended spectrum; type III adds (L + 3/2 - 2m) omega at n = -m-1."""
    bad = _limit_violations(spec, L)
    if bad:
        raise InvalidExtension("; ".join(bad))
    _check_level(spec, n)
    shift = 1 if spec.kind == "III" else 0
    return (2.0 * (n + shift) + L + 1.5) * omega


def limit_rational_term(spec: ExtensionSpec, L: int, omega: float, r):
    r = np.asarray(r, dtype=float)
    q = q_poly(spec.kind, spec.m, L)
    rho = 0.5 * omega * r * r
    qv = q(rho)
    d1 = q.deriv()(rho) / qv
    out = -2.0 * omega * (d1 + 2.0 * rho * (q.deriv(2)(rho) / qv - d1 * d1))
    return float(out) if out.ndim == 0 else out


def limit_extended_potential(spec: ExtensionSpec, L: int, omega: float, r):
    return potential(ModelParams(0.0, L, omega), r) + limit_rational_term(spec, L, omega, r)


def limit_eop(spec: ExtensionSpec, L: int, omega: float, n: int) -> Poly:
    """alpha -> 0 limit of Q_n as a polynomial in rho = omega r^2 / 2."""
    bad = _limit_violations(spec, L)
    if bad:
        raise InvalidExtension("; ".join(bad))
    _check_level(spec, n)
    kind, m = spec.kind, spec.m
    if kind == "III" and n == -m - 1:
        return Poly([1.0])
    rho = Poly([0.0, 1.0])
    q = q_poly(kind, m, L)

    def lag(k, a):
        return laguerre_poly(k, a) if k >= 0 else Poly([0.0])

    if kind == "I":
        Ln = lag(n, L - 0.5)
        return q * (Ln + lag(n - 1, L + 0.5)) + q_poly("I", m - 1, L + 1) * Ln
    Ln = lag(n, L + 1.5)
    tail = rho * q_poly(kind, m - 1, L - 1) * Ln
    if kind == "II":
        return q * ((L + 1.5) * Ln - rho * lag(n - 1, L + 2.5)) + tail
    return q * ((L + 1.5 - rho) * Ln - rho * lag(n - 1, L + 2.5)) - tail
