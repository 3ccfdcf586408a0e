"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; the lines are echoed in the terminal
summary (see ``pytest_terminal_summary`` in conftest.py).
"""

import math
import time

import numpy as np
import pytest

from pdmosc import cli, susy
from pdmosc import extensions as ext
from pdmosc import oscillator as osc
from pdmosc.oracle import deformed_residual, pdm_fd_eigenvalues, quad_integrate
from pdmosc.pct import GridFunction, ModelParams

from conftest import SQ3, rel_err

RESULTS = {}
SWEEP = [ModelParams(0.3, 0, 1.0), ModelParams(1 / SQ3, 1, 1.0), ModelParams(0.1, 2, 2.0)]
S = ext.ExtensionSpec


def record(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} ({detail})"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_01_spectrum_vs_oracle():
    worst, slowest = 0.0, 0.0
    for p in SWEEP:
        t0 = time.perf_counter()
        ev = pdm_fd_eigenvalues(p, lambda r: osc.potential(p, r), 6)
        slowest = max(slowest, time.perf_counter() - t0)
        worst = max(worst, rel_err(ev, [osc.energy(p, n) for n in range(6)]))
    record(1, "closed-form spectrum vs FD oracle", worst <= 1e-6 and slowest <= 10.0,
           f"max rel err {worst:.2e}, slowest set {slowest:.2f} s")


def test_criterion_02_reference_values():
    p, spec = ModelParams(1 / SQ3, 1, 1.0), S("I", 1)
    target = np.array([19.0, 55.0, 107.0]) / (2 * SQ3)
    closed = np.array([ext.extended_energy(spec, p, n) for n in range(3)])
    g = ext.gamma_shift(spec, p)
    oracle = pdm_fd_eigenvalues(p, lambda r: ext.extended_potential(spec, p, r) + g, 3) - g
    e_closed, e_oracle = rel_err(closed, target), rel_err(oracle, target)
    record(2, "type I m=1 energies 19, 55, 107 over 2 sqrt 3", e_closed <= 1e-15 and e_oracle <= 1e-6,
           f"closed form {e_closed:.1e}, oracle {e_oracle:.2e}")


def test_criterion_03_constant_mass_limit():
    L, w = 1, 1.0
    alphas = (0.2, 0.1, 0.05)
    radii = np.array([0.5, 1.0, 2.0])
    ratios, stalled = [], []
    for n in range(3):
        errs = [abs(osc.energy(ModelParams(a, L, w), n) - osc.limit_energy(L, w, n)) for a in alphas]
        ratios += [errs[0] / errs[1], errs[1] / errs[2]]
        dpsi = np.array([np.abs(osc.wavefunction(ModelParams(a, L, w), n, radii)
                                - osc.limit_wavefunction(L, w, n, radii)) for a in alphas])
        stalled += [f"n={n} r={x:g}" for k, x in enumerate(radii)
                    if not dpsi[0, k] > dpsi[1, k] > dpsi[2, k]]
    linear = all(abs(q / 2.0 - 1.0) <= 0.2 for q in ratios)
    record(3, "alpha -> 0 limits", linear and not stalled,
           f"halving ratios {min(ratios):.3f}..{max(ratios):.3f}, "
           f"non-monotone wavefunction errors at: {', '.join(stalled) or 'none'}")


def _overlap(f, g):
    return quad_integrate(lambda r: f(r) * g(r), (0.0, math.inf), 1e-12)


def test_criterion_04_orthonormality():
    worst_plain = 0.0
    for p in SWEEP:
        for m in range(7):
            for n in range(m, 7):
                g = _overlap(lambda r: osc.wavefunction(p, m, r), lambda r: osc.wavefunction(p, n, r))
                worst_plain = max(worst_plain, abs(g - (m == n)))
    worst_ext = 0.0
    cases = [(S("I", 1), ModelParams(1 / SQ3, 1, 1.0)), (S("I", 2), ModelParams(0.2, 1, 1.0)),
             (S("II", 1), ModelParams(0.1, 1, 1.0)), (S("II", 2), ModelParams(0.1, 2, 1.0))]
    for spec, p in cases:
        for m in range(5):
            for n in range(m, 5):
                g = _overlap(lambda r: ext.extended_wavefunction(spec, p, m, r),
                             lambda r: ext.extended_wavefunction(spec, p, n, r))
                worst_ext = max(worst_ext, abs(g - (m == n)))
    record(4, "orthonormality", worst_plain <= 1e-8 and worst_ext <= 1e-7,
           f"unextended {worst_plain:.1e}, extended {worst_ext:.1e}")


def test_criterion_05_susy_algebra():
    worst_sum = worst_ann = worst_var = 0.0
    for p in SWEEP:
        eps = np.cumsum([lv.eps_i for lv in susy.hierarchy(p, 10)])
        worst_sum = max(worst_sum, rel_err(eps, [osc.energy(p, n) for n in range(11)]))
        r = np.linspace(0.02, 12.0, 6001)
        psi0 = GridFunction(r, osc.wavefunction(p, 0, r))
        worst_ann = max(worst_ann, susy.apply_A_minus(p, psi0).norm() / psi0.norm())
        rr = np.linspace(0.1, 10.0, 1000)
        up = p.with_(L=p.L + 1, omega=susy.partner_omega(p))
        worst_var = max(worst_var, float(np.var(susy.partner_potential(p, rr) - osc.potential(up, rr))))
    record(5, "deformed SUSY algebra", worst_sum <= 1e-12 and worst_ann < 1e-6 and worst_var < 1e-18,
           f"eps-sum {worst_sum:.1e}, A- psi_0 {worst_ann:.1e}, shift variance {worst_var:.1e}")


def _draws(kind, m, count=5, seed=11):
    rng = np.random.default_rng(seed + 10 * m + (kind == "II"))
    out = []
    while len(out) < count:
        p = ModelParams(float(rng.uniform(0.02, 0.6)), int(rng.integers(0, 6)), float(rng.uniform(0.5, 3.0)))
        if not ext.extension_violations(S(kind, m), p):
            out.append(p)
    return out


def test_criterion_06_q0_and_shape_invariance():
    worst_q = worst_si = 0.0
    rr = np.linspace(0.05, 10.0, 500)
    for kind in ("I", "II"):
        for m in (1, 2, 3):
            spec = S(kind, m)
            for p in _draws(kind, m):
                c = (1 + p.kappa - m) if kind == "I" else (m - p.L - 1.5)
                ref = ext.p_poly(kind, m, p.L + 1, p.kappa + 1) * c
                worst_q = max(worst_q, rel_err(ext.eop_polynomial(spec, p, 0).coeffs, ref.coeffs))
                up, R = ext.shape_invariance_partner(spec, p)
                lhs = (ext.extended_potential(spec, p, rr)
                       + 2 * (1 + p.alpha * rr**2) * ext.extended_superpotential_prime(spec, p, rr))
                worst_si = max(worst_si, float(np.max(np.abs(lhs - ext.extended_potential(spec, up, rr) - R))))
    record(6, "Q_0 proportionality and extended shape invariance", worst_q <= 1e-10 and worst_si <= 1e-7,
           f"Q_0 {worst_q:.1e}, shape invariance {worst_si:.1e}")


def test_criterion_07_type_III_extra_state():
    spec, p = S("III", 2), ModelParams(0.3, 3, 1.0)
    g = ext.gamma_shift(spec, p)
    ev = pdm_fd_eigenvalues(p, lambda r: ext.extended_potential(spec, p, r) + g, 5) - g
    tower = np.array([ext.extended_energy(spec, p, n) for n in range(4)])
    below = int(np.count_nonzero(ev < tower[0] * (1 - 1e-5)))
    extra = ext.extended_energy(spec, p, -spec.m - 1)
    e_extra = abs(ev[0] - extra) / abs(extra)
    e_tower = rel_err(ev[1:], tower)
    record(7, "type III adds exactly one level", below == 1 and e_extra <= 1e-5 and e_tower <= 1e-5,
           f"{below} level(s) below tower, extra-level rel err {e_extra:.1e}, tower {e_tower:.1e}")


def _eop_offdiag(spec, p, nmax=5):
    a, b = ext.eop_weight_exponents(p)
    pd = ext.denominator_poly(spec, p)
    levels = [n for n in ext.extended_levels(spec, nmax)]
    Q = {n: ext.eop_polynomial(spec, p, n) for n in levels}
    diag = {n: quad_integrate(lambda t, q=Q[n]: (q(t) / pd(t)) ** 2, (-1, 1), 0.0, rtol=1e-12, alg=(b, a))
            for n in levels}
    worst = 0.0
    for i in levels:
        for j in levels:
            if i < j:
                scale = math.sqrt(diag[i] * diag[j])
                g = quad_integrate(lambda t: Q[i](t) * Q[j](t) / pd(t) ** 2, (-1, 1), 1e-12 * scale, alg=(b, a))
                worst = max(worst, abs(g) / scale)
    return worst


def test_criterion_08_eop_orthogonality():
    cases = [(S("I", 1), ModelParams(1 / SQ3, 1, 1.0)), (S("I", 2), ModelParams(0.2, 1, 1.0)),
             (S("II", 1), ModelParams(0.1, 1, 1.0)), (S("II", 2), ModelParams(0.1, 2, 1.0)),
             (S("III", 2), ModelParams(0.3, 3, 1.0))]
    worst = {spec.kind: 0.0 for spec, _ in cases}
    for spec, p in cases:
        worst[spec.kind] = max(worst[spec.kind], _eop_offdiag(spec, p))
    record(8, "exceptional polynomial orthogonality", max(worst.values()) <= 1e-8,
           ", ".join(f"type {k} {v:.1e}" for k, v in worst.items()))


def test_criterion_09_operator_residuals():
    r = np.linspace(0.02, 14.0, 7001)
    worst, weakest_control = 0.0, math.inf

    def probe(p, V, psi_values, E):
        nonlocal worst, weakest_control
        psi = GridFunction(r, psi_values)
        worst = max(worst, deformed_residual(p, V, psi, E))
        weakest_control = min(weakest_control, deformed_residual(p, V, psi, E + 0.01))

    for p in SWEEP:
        for n in range(6):
            probe(p, lambda x: osc.potential(p, x), osc.wavefunction(p, n, r), osc.energy(p, n))
    cases = [(S("I", 1), ModelParams(1 / SQ3, 1, 1.0)), (S("I", 2), ModelParams(0.2, 1, 1.0)),
             (S("II", 1), ModelParams(0.1, 1, 1.0)), (S("II", 2), ModelParams(0.1, 2, 1.0)),
             (S("III", 2), ModelParams(0.3, 3, 1.0))]
    for spec, p in cases:
        for n in ext.extended_levels(spec, 3):
            probe(p, lambda x: ext.extended_potential(spec, p, x), ext.extended_wavefunction(spec, p, n, r),
                  ext.extended_energy(spec, p, n))
    record(9, "operator residuals with negative control", worst < 1e-5 and weakest_control > 1e-3,
           f"max residual {worst:.1e}, min perturbed residual {weakest_control:.1e}")


def _read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[1].split(",")
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[2:]])
    return {h: data[:, k] for k, h in enumerate(header)}, lines[0]


def test_criterion_10_figure_datasets(tmp_path):
    assert cli.main(["figures", "--out", str(tmp_path)]) == 0
    problems = []

    f1, _ = _read_csv(tmp_path / "fig1.csv")
    for n in range(4):
        E = f1[f"E_{n}"]
        if E[0] != 2 * n + 2.5:
            problems.append(f"fig1 intercept E_{n}")
        if not np.all(np.diff(E) > 0):
            problems.append(f"fig1 monotonicity E_{n}")
    if not np.all(np.diff(np.column_stack([f1[f"E_{n}"] for n in range(4)]), axis=1) > 0):
        problems.append("fig1 level ordering")

    f2, _ = _read_csv(tmp_path / "fig2.csv")
    r = f2["r"]
    for name, col in f2.items():
        if name == "r":
            continue
        if abs(np.trapezoid(col**2, r) - 1.0) > 1e-3:
            problems.append(f"fig2 norm {name}")
        if osc.count_nodes(col) != 0 or col[len(col) // 4] <= 0:
            problems.append(f"fig2 nodes {name}")

    f3, head3 = _read_csv(tmp_path / "fig3.csv")
    r = f3["r"]
    closed0 = 2 / r**2 + r**2 / 4 + 4 * (r * r - 3) / (r * r + 3) ** 2
    if rel_err(f3["V_ext[alpha=0]"], closed0) > 1e-12:
        problems.append("fig3 alpha=0 curve")
    a, D = 1 / SQ3, 2 / SQ3
    closed = (2 / r**2 + r**2 / 4
              + 4 * (D - 3 * a) * (1 + a * r * r) * (D * r * r - 3) / (D * r * r + 3) ** 2)
    if rel_err(f3["V_ext[alpha=1/sqrt(3)]"], closed) > 1e-10:
        problems.append("fig3 deformed curve")

    f4, head4 = _read_csv(tmp_path / "fig4.csv")
    for n, num in enumerate((19, 55, 107)):
        if f"E_{n}={num / (2 * SQ3)!r}" not in head4:
            problems.append(f"fig4 header E_{n}")
    r = f4["r"]
    for n in range(3):
        col = f4[f"psi_ext_{n}"]
        if osc.count_nodes(col) != n:
            problems.append(f"fig4 nodes psi_ext_{n}")
        if abs(np.trapezoid(col**2, r) - 1.0) > 1e-3:
            problems.append(f"fig4 norm psi_ext_{n}")
    record(10, "figure datasets", not problems, "; ".join(problems) or "intercepts, monotonicity, norms, nodes ok")
