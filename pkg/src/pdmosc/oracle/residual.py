"""Residuals of the deformed radial Hamiltonian applied to sampled functions."""

from __future__ import annotations

import math

import numpy as np

from ..gridops import derivative
from ..pct import GridFunction, ModelParams

__all__ = ["MIN_RESIDUAL_POINTS", "apply_hamiltonian", "deformed_residual"]

MIN_RESIDUAL_POINTS = 9


def apply_hamiltonian(params: ModelParams, V, psi: GridFunction) -> GridFunction:
    """(pi_r^2 + V) psi with pi_r^2 = -sqrt(f) d/dr f d/dr sqrt(f); four nodes lost per side."""
    if len(psi) < MIN_RESIDUAL_POINTS:
        raise ValueError(f"grid too coarse: need >= {MIN_RESIDUAL_POINTS} points, got {len(psi)}")
    a = params.alpha
    r = psi.grid
    sqf = np.sqrt(1.0 + a * r * r)
    g = GridFunction(r, sqf * psi.values, psi.space)
    dg = derivative(g)
    h = GridFunction(dg.grid, (1.0 + a * dg.grid**2) * dg.values, psi.space)
    dh = derivative(h)
    inner = dh.grid
    kinetic = -np.sqrt(1.0 + a * inner**2) * dh.values
    psi_in = psi.restrict(inner).values
    Vv = np.asarray(V(inner), dtype=float) if callable(V) else np.asarray(V, dtype=float)[4:-4]
    return GridFunction(inner, kinetic + Vv * psi_in, psi.space)


def deformed_residual(params: ModelParams, V, psi: GridFunction, E: float) -> float:
    """||(pi_r^2 + V - E) psi|| / ||psi|| over the interior of a uniform radial grid."""
    psi.spacing  # raises on non-uniform grids
    Hpsi = apply_hamiltonian(params, V, psi)
    inner = psi.restrict(Hpsi.grid)
    res = Hpsi.values - E * inner.values
    num = float(np.trapezoid(res**2, inner.grid))
    den = float(np.trapezoid(inner.values**2, inner.grid))
    if den == 0.0:
        raise ValueError("psi vanishes on the grid interior")
    return math.sqrt(num / den)
