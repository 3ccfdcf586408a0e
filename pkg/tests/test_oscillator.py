import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdmosc import oscillator as osc
from pdmosc.oracle import deformed_residual, quad_integrate
from pdmosc.pct import GridFunction, ModelParams, u_of_r

from conftest import SQ3, rel_err


def test_pt1_potential_values():
    assert osc.pt1_potential(2.0, 1.5, math.pi / 4) == pytest.approx(5.5)
    assert osc.pt1_potential(1.0, 1.0, 0.3) == 0.0
    u = np.array([0.2, 0.7, 1.1])
    np.testing.assert_allclose(osc.pt1_potential(2.0, 1.5, u), osc.pt1_potential(1.5, 2.0, math.pi / 2 - u))


def test_pt1_energy():
    assert osc.pt1_energy(2.0, 1.5, 0) == 12.25
    for n in range(5):
        gap = osc.pt1_energy(2.0, 1.5, n + 1) - osc.pt1_energy(2.0, 1.5, n)
        assert gap == pytest.approx(4 * (3.5 + 2 * n) + 4)


def test_pt1_wavefunction_norm_and_nodes():
    norm = quad_integrate(lambda u: osc.pt1_wavefunction(2.0, 1.5, 0, u) ** 2, (0.0, math.pi / 2), 1e-12)
    assert norm == pytest.approx(1.0, abs=1e-9)
    u = np.linspace(1e-3, math.pi / 2 - 1e-3, 2001)
    assert osc.count_nodes(osc.pt1_wavefunction(2.0, 1.5, 0, u)) == 0
    assert osc.count_nodes(osc.pt1_wavefunction(2.0, 1.5, 1, u)) == 1
    with pytest.raises(ValueError):
        osc.pt1_wavefunction(0.5, 1.5, 0, 0.3)


def test_potential_values():
    assert osc.potential(ModelParams(0.0, 0, 2.0), 1.0) == 1.0
    assert osc.potential(ModelParams(0.0, 1, 1.0), 1.0) == 2.25
    p = ModelParams(0.0, 2, 1.5)
    r_min = (4 * 2 * 3 / 1.5**2) ** 0.25
    assert osc.potential(p, r_min) < min(osc.potential(p, r_min * 0.99), osc.potential(p, r_min * 1.01))
    with pytest.raises(ValueError):
        osc.potential(p, 0.0)


def test_reference_energies(ref_params):
    expected = np.array([19, 55, 107]) / (2 * SQ3)
    got = [osc.energy(ref_params, n) for n in range(3)]
    assert rel_err(got, expected) < 1e-14


@pytest.mark.parametrize("L,omega", [(0, 1.0), (1, 1.0), (3, 2.5)])
def test_constant_mass_spectrum(L, omega):
    p = ModelParams(0.0, L, omega)
    for n in range(6):
        assert osc.energy(p, n) == pytest.approx((2 * n + L + 1.5) * omega, rel=1e-15)
        assert osc.limit_energy(L, omega, n) == osc.energy(p, n)


def test_spectrum_identity(params):
    for n in range(10):
        pt = params.alpha * osc.pt1_energy(params.A, params.B, n) + params.c_pct
        assert osc.energy(params, n) == pytest.approx(pt, rel=1e-12)
    assert params.alpha * (params.A + params.B) ** 2 + params.c_pct == pytest.approx(osc.energy(params, 0), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(a=st.floats(1e-3, 3.0), L=st.integers(0, 6), w=st.floats(0.1, 5.0), n=st.integers(1, 30))
def test_spectrum_gaps_match_hierarchy(a, L, w, n):
    p = ModelParams(a, L, w)
    gap = osc.energy(p, n) - osc.energy(p, n - 1)
    assert gap == pytest.approx(a * (4 * L + 8 * n + 2) + 2 * p.Delta, rel=1e-10)
    assert gap > 0


def test_spectrum_table(params):
    table = osc.spectrum(params, 4)
    assert table.levels == [0, 1, 2, 3, 4]
    assert table.source == "closed_form"
    with pytest.raises(ValueError):
        osc.spectrum(params, 65)
    with pytest.raises(ValueError):
        osc.SpectrumTable(((0, 2.0), (1, 1.0)), "closed_form", params)


def test_n_validation(params):
    for bad in (-1, 1.5, 65):
        with pytest.raises(ValueError):
            osc.energy(params, bad)


def _overlap(p, m, n):
    s = math.sqrt(p.alpha)

    def integrand(u):
        r = math.tan(u) / s
        return osc.wavefunction(p, m, r) * osc.wavefunction(p, n, r) / (s * math.cos(u) ** 2)

    return quad_integrate(integrand, (0.0, math.pi / 2), 1e-12)


def test_orthonormality(params):
    worst = max(abs(_overlap(params, m, n) - (m == n)) for m in range(7) for n in range(m, 7))
    assert worst < 1e-8


def test_ground_state_norm_on_r_axis(ref_params):
    norm = quad_integrate(lambda r: osc.wavefunction(ref_params, 0, r) ** 2, (0.0, math.inf), 1e-12)
    assert norm == pytest.approx(1.0, abs=1e-8)


def test_node_counts(params):
    r = np.geomspace(1e-3, 1e3, 10_000)
    for n in range(7):
        assert osc.count_nodes(osc.wavefunction(params, n, r)) == n


def test_pct_wavefunction_map(params):
    r = np.array([0.05, 0.3, 1.0, 2.5, 9.0])
    scale = params.alpha**0.25 / np.sqrt(1 + params.alpha * r * r)
    for n in range(5):
        phi = osc.pt1_wavefunction(params.A, params.B, n, u_of_r(params, r))
        np.testing.assert_allclose(scale * phi, osc.wavefunction(params, n, r), rtol=0, atol=1e-10)


def test_eigen_residuals(params):
    r = np.linspace(0.02, 14.0, 7001)
    for n in range(4):
        psi = GridFunction(r, osc.wavefunction(params, n, r))
        assert deformed_residual(params, lambda x: osc.potential(params, x), psi, osc.energy(params, n)) < 1e-5


def test_decay_at_grid_edge(params):
    r = np.geomspace(1e-3, 1e4, 20_001)
    for n in range(3):
        psi = np.abs(osc.wavefunction(params, n, r))
        assert psi[-1] < 1e-6 * psi.max()


def test_large_kappa_normalization_is_finite():
    # small alpha pushes Gamma arguments high; log-space evaluation must survive
    p = ModelParams(1e-4, 2, 3.0)
    assert math.isfinite(osc.wavefunction_norm(p, 10))
    assert osc.wavefunction(p, 0, 1.0) == pytest.approx(osc.limit_wavefunction(2, 3.0, 0, 1.0), rel=1e-3)


def test_limit_wavefunction_norm_and_shape():
    for L, w, n in [(0, 1.0, 0), (1, 2.0, 3), (2, 0.5, 5)]:
        norm = quad_integrate(lambda r: osc.limit_wavefunction(L, w, n, r) ** 2, (0.0, math.inf), 1e-12)
        assert norm == pytest.approx(1.0, abs=1e-10)
    r = np.linspace(0.1, 5, 7)
    ratio = osc.limit_wavefunction(0, 1.0, 0, r) / (r * np.exp(-r * r / 4))
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-13)


def test_limit_wavefunction_convergence():
    errs = [abs(osc.wavefunction(ModelParams(a, 1, 1.0), 0, 1.0) - osc.limit_wavefunction(1, 1.0, 0, 1.0))
            for a in (0.2, 0.1, 0.05)]
    assert errs[0] > errs[1] > errs[2]


def test_figure_one_shape():
    alphas = np.linspace(1e-3, 1.0, 200)
    for n in range(4):
        e = np.array([osc.energy(ModelParams(a, 1, 1.0), n) for a in alphas])
        assert np.all(np.diff(e) > 0)
        assert osc.energy(ModelParams(0.0, 1, 1.0), n) == 2 * n + 2.5


def test_wavefunction_rejects_limit():
    with pytest.raises(ValueError):
        osc.wavefunction(ModelParams(0.0, 1, 1.0), 0, 1.0)
