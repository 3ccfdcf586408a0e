"""Invariant suites with measured residuals, used by ``pdmosc verify``."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import extensions as ext
from . import oscillator as osc
from . import susy
from .oracle import deformed_residual, pdm_fd_eigenvalues, quad_integrate
from .pct import GridFunction, ModelParams, u_of_r
from .specfun import gen_binomial, jacobi_eval, jacobi_poly, laguerre_poly

__all__ = ["Check", "SUITES", "DEFAULT_SWEEP", "run_suite", "run_suites"]

SQ3 = math.sqrt(3.0)
DEFAULT_SWEEP = (ModelParams(0.3, 0, 1.0), ModelParams(1 / SQ3, 1, 1.0), ModelParams(0.1, 2, 2.0))


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    measured: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _check(suite, name, measured, tol, *, above=False) -> Check:
    measured = float(measured)
    ok = math.isfinite(measured) and (measured > tol if above else measured <= tol)
    return Check(suite, name, measured, float(tol), bool(ok))


def _rel(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def _specfun() -> list[Check]:
    rng = np.random.default_rng(7)
    z = np.linspace(-0.95, 0.95, 20)
    worst_rec = 0.0
    for _ in range(40):
        a, b = rng.uniform(-5, 5, 2)
        for n in range(2, 11):
            c = 2 * n + a + b
            if min(abs(c - 2), abs(c - 1), abs(c)) < 1e-6:
                continue
            P = [jacobi_poly(k, a, b)(z) for k in (n - 2, n - 1, n)]
            lhs = 2 * n * (n + a + b) * (c - 2) * P[2]
            rhs = ((c - 1) * (c * (c - 2) * z + a * a - b * b) * P[1]
                   - 2 * (n + a - 1) * (n + b - 1) * c * P[0])
            scale = np.max(np.abs(lhs)) + np.max(np.abs(rhs)) + 1.0
            worst_rec = max(worst_rec, float(np.max(np.abs(lhs - rhs)) / scale))
    worst_end = 0.0
    worst_sym = 0.0
    for a, b in [(0.5, 0.5), (-2.3, 1.7), (3.1, -4.4)]:
        for n in range(8):
            P = jacobi_poly(n, a, b)
            e1 = gen_binomial(n + a, n)
            e2 = (-1) ** n * gen_binomial(n + b, n)
            worst_end = max(worst_end, abs(P(1.0) - e1) / max(1.0, abs(e1)),
                            abs(P(-1.0) - e2) / max(1.0, abs(e2)))
            worst_sym = max(worst_sym, float(np.max(np.abs(P(-z) - (-1) ** n * jacobi_poly(n, b, a)(z)))))
    errs = []
    for beta in (1e3, 1e4, 1e5):
        x = 0.65
        errs.append(abs(jacobi_eval(3, 1.5, beta, 1 - 2 * x / beta) - laguerre_poly(3, 1.5)(x)))
    mono = 0.0 if errs[0] > errs[1] > errs[2] else 1.0
    return [
        _check("specfun", "jacobi three-term recurrence residual", worst_rec, 1e-9),
        _check("specfun", "jacobi endpoint identities", worst_end, 1e-10),
        _check("specfun", "jacobi reflection symmetry", worst_sym, 1e-10),
        _check("specfun", "jacobi->laguerre limit monotone (0 = yes)", mono, 0.0),
    ]


def _oscillator(sweep) -> list[Check]:
    out = []
    for p in sweep:
        tag = f"(L={p.L}, omega={p.omega:g}, alpha={p.alpha:.6g})"
        ev = pdm_fd_eigenvalues(p, lambda r: osc.potential(p, r), 6)
        cf = [osc.energy(p, n) for n in range(6)]
        out.append(_check("oscillator", f"FD oracle spectrum n=0..5 {tag}", _rel(ev, cf), 1e-6))
        ident = max(abs(osc.energy(p, n) - (p.alpha * osc.pt1_energy(p.A, p.B, n) + p.c_pct))
                    / osc.energy(p, n) for n in range(10))
        out.append(_check("oscillator", f"E_n = alpha eps_n + c {tag}", ident, 1e-12))
        worst = 0.0
        for m in range(7):
            for n in range(m, 7):
                g = quad_integrate(
                    lambda u: osc.wavefunction(p, m, np.tan(u) / math.sqrt(p.alpha))
                    * osc.wavefunction(p, n, np.tan(u) / math.sqrt(p.alpha)) / (math.cos(u) ** 2 * math.sqrt(p.alpha)),
                    (0.0, math.pi / 2), 1e-12)
                worst = max(worst, abs(g - (m == n)))
        out.append(_check("oscillator", f"orthonormality m,n<=6 {tag}", worst, 1e-8))
        r = np.geomspace(1e-3, 1e3, 10000)
        bad = sum(osc.count_nodes(osc.wavefunction(p, n, r)) != n for n in range(7))
        out.append(_check("oscillator", f"node counts n=0..6 mismatches {tag}", bad, 0))
        rr = np.array([0.3, 1.0, 2.5])
        pct = max(float(np.max(np.abs(p.alpha**0.25 * (1 + p.alpha * rr * rr) ** -0.5
                                      * osc.pt1_wavefunction(p.A, p.B, n, u_of_r(p, rr))
                                      - osc.wavefunction(p, n, rr)))) for n in range(4))
        out.append(_check("oscillator", f"PCT wavefunction map {tag}", pct, 1e-10))
    return out


def _susy(sweep) -> list[Check]:
    out = []
    for p in sweep:
        tag = f"(L={p.L}, omega={p.omega:g}, alpha={p.alpha:.6g})"
        levels = susy.hierarchy(p, 10)
        csum = np.cumsum([lv.eps_i for lv in levels])
        out.append(_check("susy", f"sum eps_i = E_n, n<=10 {tag}",
                          _rel(csum, [osc.energy(p, n) for n in range(11)]), 1e-12))
        r = np.linspace(0.02, 12.0, 6001)
        psi0 = GridFunction(r, osc.wavefunction(p, 0, r))
        out.append(_check("susy", f"A- psi_0 relative norm {tag}",
                          susy.apply_A_minus(p, psi0).norm() / psi0.norm(), 1e-6))
        rr = np.linspace(0.1, 10.0, 1000)
        up = p.with_(L=p.L + 1, omega=susy.partner_omega(p))
        diff = susy.partner_potential(p, rr) - osc.potential(up, rr)
        out.append(_check("susy", f"partner constant-shift variance {tag}", float(np.var(diff)), 1e-18))
        out.append(_check("susy", f"Delta' = Delta + 2 alpha {tag}",
                          abs(math.hypot(up.omega, p.alpha) - p.Delta - 2 * p.alpha), 1e-12))
    return out


def _extension_cases():
    S = ext.ExtensionSpec
    return [
        (S("I", 1), ModelParams(1 / SQ3, 1, 1.0)),
        (S("I", 2), ModelParams(0.2, 1, 1.0)),
        (S("II", 1), ModelParams(0.1, 1, 1.0)),
        (S("II", 2), ModelParams(0.1, 2, 1.0)),
        (S("III", 2), ModelParams(0.3, 3, 1.0)),
    ]


def _eop_offdiag(spec, p, nmax=5) -> float:
    a, b = ext.eop_weight_exponents(p)
    pd = ext.denominator_poly(spec, p)
    levels = ext.extended_levels(spec, nmax)
    Q = {n: ext.eop_polynomial(spec, p, n) for n in levels}
    diag = {n: quad_integrate(lambda t, q=Q[n]: (q(t) / pd(t)) ** 2, (-1.0, 1.0), 0.0, rtol=1e-12, alg=(b, a))
            for n in levels}
    worst = 0.0
    for i, j in ((i, j) for i in levels for j in levels if i < j):
        scale = math.sqrt(diag[i] * diag[j])
        g = quad_integrate(lambda t: Q[i](t) * Q[j](t) / pd(t) ** 2, (-1.0, 1.0), 1e-12 * scale, alg=(b, a))
        worst = max(worst, abs(g) / scale)
    return worst


def _extensions() -> list[Check]:
    out = []
    p = ModelParams(1 / SQ3, 1, 1.0)
    spec = ext.ExtensionSpec("I", 1)
    reference = np.array([19, 55, 107]) / (2 * SQ3)
    out.append(_check("extensions", "type I m=1 closed-form energies vs 19,55,107/(2 sqrt3)",
                      _rel([ext.extended_energy(spec, p, n) for n in range(3)], reference), 1e-14))
    g = ext.gamma_shift(spec, p)
    ev = pdm_fd_eigenvalues(p, lambda r: ext.extended_potential(spec, p, r) + g, 3) - g
    out.append(_check("extensions", "type I m=1 oracle energies vs 19,55,107/(2 sqrt3)", _rel(ev, reference), 1e-6))
    for spec, p in _extension_cases():
        tag = f"type {spec.kind} m={spec.m} (L={p.L}, alpha={p.alpha:g})"
        out.append(_check("extensions", f"EOP orthogonality {tag}", _eop_offdiag(spec, p), 1e-8))
        g = ext.gamma_shift(spec, p)
        levels = ext.extended_levels(spec, 3)
        ev = pdm_fd_eigenvalues(p, lambda r: ext.extended_potential(spec, p, r) + g, len(levels)) - g
        cf = [ext.extended_energy(spec, p, n) for n in levels]
        out.append(_check("extensions", f"oracle spectrum of V_ext + gamma {tag}", _rel(ev, cf), 1e-5))
        if spec.kind in ("I", "II"):
            k, m = p.kappa, spec.m
            c = (1 + k - m) if spec.kind == "I" else (m - p.L - 1.5)
            ref = c * ext.p_poly(spec.kind, m, p.L + 1, k + 1)
            q0 = ext.eop_polynomial(spec, p, 0)
            out.append(_check("extensions", f"Q_0 proportionality {tag}", _rel(q0.coeffs, ref.coeffs), 1e-10))
            rr = np.linspace(0.1, 8.0, 400)
            up, R = ext.shape_invariance_partner(spec, p)
            lhs = ext.extended_potential(spec, p, rr) + 2 * (1 + p.alpha * rr**2) * ext.extended_superpotential_prime(spec, p, rr)
            out.append(_check("extensions", f"extended shape invariance {tag}",
                              float(np.max(np.abs(lhs - ext.extended_potential(spec, up, rr) - R))), 1e-7))
        r = np.linspace(0.02, 14.0, 7001)
        for n in levels[:3]:
            psi = GridFunction(r, ext.extended_wavefunction(spec, p, n, r))
            res = deformed_residual(p, lambda x: ext.extended_potential(spec, p, x), psi,
                                    ext.extended_energy(spec, p, n))
            out.append(_check("extensions", f"operator residual n={n} {tag}", res, 1e-5))
    return out


SUITES = {
    "specfun": lambda sweep: _specfun(),
    "oscillator": _oscillator,
    "susy": _susy,
    "extensions": lambda sweep: _extensions(),
}


def run_suite(name: str, sweep=DEFAULT_SWEEP) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](sweep)


def run_suites(name: str, sweep=DEFAULT_SWEEP) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    return [c for n in names for c in run_suite(n, sweep)]
