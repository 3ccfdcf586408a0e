"""Deformed supersymmetry of the PDM oscillator.

A^{+-} = -+ sqrt(f) d/dr sqrt(f) + W factorize H_0 = A+ A- + E_0.  The
partner potential is the same oscillator at (L+1, omega') up to a constant,
and iterating gives a hierarchy whose level spacings sum to the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gridops import derivative
from .oscillator import energy, potential
from .pct import GridFunction, ModelParams, deforming_f, deforming_f_prime

__all__ = [
    "HierarchyLevel",
    "MAX_DEPTH",
    "superpotential",
    "superpotential_prime",
    "apply_A_minus",
    "apply_A_plus",
    "partner_omega",
    "partner_potential",
    "partner_potential_closed",
    "hierarchy_omega",
    "hierarchy",
    "hierarchy_potential",
]

MAX_DEPTH = 32


def _require_deformed(params: ModelParams) -> None:
    if not params.deformed:
        raise ValueError("deformed SUSY needs alpha > 0")


def _radial(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    return r


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def superpotential(params: ModelParams, r):
    """W(r) = -(L+1) f/r + alpha (L + 3/2 + Delta/(2 alpha)) r."""
    _require_deformed(params)
    r = _radial(r)
    L, a = params.L, params.alpha
    return _scalar(-(L + 1) * (1.0 + a * r * r) / r + (a * (L + 1.5) + 0.5 * params.Delta) * r)


def superpotential_prime(params: ModelParams, r):
    _require_deformed(params)
    r = _radial(r)
    L, a = params.L, params.alpha
    return _scalar((L + 1) / (r * r) - (L + 1) * a + a * (L + 1.5) + 0.5 * params.Delta)


def apply_A_minus(params: ModelParams, psi: GridFunction) -> GridFunction:
    """(sqrt(f) d/dr sqrt(f) + W) psi = f psi' + (f'/2) psi + W psi; two nodes lost per side."""
    return _apply_A(params, psi, +1.0)


def apply_A_plus(params: ModelParams, psi: GridFunction) -> GridFunction:
    """(-sqrt(f) d/dr sqrt(f) + W) psi."""
    return _apply_A(params, psi, -1.0)


def _apply_A(params: ModelParams, psi: GridFunction, sign: float) -> GridFunction:
    _require_deformed(params)
    dpsi = derivative(psi)
    r = dpsi.grid
    inner = psi.restrict(r).values
    f, fp = deforming_f(params, r), deforming_f_prime(params, r)
    vals = sign * (f * dpsi.values + 0.5 * fp * inner) + superpotential(params, r) * inner
    return GridFunction(r, vals, psi.space)


def partner_omega(params: ModelParams) -> float:
    a, w = params.alpha, params.omega
    return math.sqrt(w * w + 4 * a * a + 4 * a * params.Delta)


def partner_potential(params: ModelParams, r):
    """V_1 = V_0 + 2 f W'."""
    _require_deformed(params)
    r = _radial(r)
    return _scalar(potential(params, r) + 2.0 * deforming_f(params, r) * superpotential_prime(params, r))


def partner_potential_closed(params: ModelParams, r):
    """V_1 = V(r; L+1, omega') + alpha (2L + 3 + Delta/alpha)."""
    _require_deformed(params)
    up = params.with_(L=params.L + 1, omega=partner_omega(params))
    a = params.alpha
    return _scalar(potential(up, r) + a * (2 * params.L + 3) + params.Delta)


@dataclass(frozen=True)
class HierarchyLevel:
    i: int
    L_i: int
    omega_i: float
    eps_i: float
    shift_i: float

    def params(self, alpha: float) -> ModelParams:
        return ModelParams(alpha, self.L_i, self.omega_i)


def hierarchy_omega(params: ModelParams, i: int) -> float:
    a, w = params.alpha, params.omega
    return math.sqrt(w * w + 4 * i * a * params.Delta + 4 * i * i * a * a)


def hierarchy(params: ModelParams, depth: int) -> list[HierarchyLevel]:
    _require_deformed(params)
    if depth < 0 or depth > MAX_DEPTH:
        raise ValueError(f"hierarchy depth must lie in [0, {MAX_DEPTH}], got {depth}")
    a, L, D = params.alpha, params.L, params.Delta
    out = []
    for i in range(depth + 1):
        eps = energy(params, 0) if i == 0 else a * (4 * L + 8 * i + 2) + 2 * D
        shift = i * a * (2 * L + 2 * i + 1) + i * D
        out.append(HierarchyLevel(i, L + i, hierarchy_omega(params, i), eps, shift))
    return out


def hierarchy_potential(params: ModelParams, i: int, r):
    """V_i = V(r; L+i, omega^(i)) + i alpha (2L + 2i + 1 + Delta/alpha)."""
    lvl = hierarchy(params, i)[-1]
    return _scalar(potential(lvl.params(params.alpha), r) + lvl.shift_i)
