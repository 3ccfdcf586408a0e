"""Closed-form spectrum and eigenfunctions of the PDM radial oscillator.

The deformed problem maps onto PT I; its constant-mass limit (alpha -> 0) is
the ordinary radial oscillator with Laguerre eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .pct import ModelParams, t_of_r
from .specfun import MAX_DEGREE, jacobi_eval, laguerre_poly, log_gamma

__all__ = [
    "SpectrumTable",
    "pt1_potential",
    "pt1_energy",
    "pt1_norm",
    "pt1_wavefunction",
    "potential",
    "energy",
    "limit_energy",
    "spectrum",
    "wavefunction_norm",
    "wavefunction",
    "ground_state_unnormalized",
    "limit_wavefunction",
    "count_nodes",
]

N_CAP = MAX_DEGREE


@dataclass(frozen=True)
class SpectrumTable:
    entries: tuple[tuple[int, float], ...]
    source: str
    params: ModelParams
    extension: Optional[object] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.source not in ("closed_form", "oracle"):
            raise ValueError(f"unknown spectrum source {self.source!r}")
        energies = [e for _, e in self.entries]
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise ValueError("spectrum energies must be strictly increasing")

    @property
    def levels(self) -> list[int]:
        return [n for n, _ in self.entries]

    @property
    def energies(self) -> list[float]:
        return [e for _, e in self.entries]


def _check_n(n: int) -> None:
    if int(n) != n or n < 0:
        raise ValueError(f"quantum number must be a nonnegative integer, got {n!r}")
    if n > N_CAP:
        raise ValueError(f"quantum number {n} exceeds cap {N_CAP}")


def pt1_potential(A: float, B: float, u):
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0) or np.any(u >= math.pi / 2):
        raise ValueError("u must lie strictly inside (0, pi/2)")
    out = A * (A - 1.0) / np.sin(u) ** 2 + B * (B - 1.0) / np.cos(u) ** 2
    return float(out) if out.ndim == 0 else out


def pt1_energy(A: float, B: float, n: int) -> float:
    _check_n(n)
    return (A + B + 2.0 * n) ** 2


def pt1_norm(A: float, B: float, n: int) -> float:
    log_n2 = (math.log(2.0 * (A + B + 2 * n)) + log_gamma(n + 1.0) + log_gamma(A + B + n)
              - log_gamma(A + n + 0.5) - log_gamma(B + n + 0.5))
    return math.exp(0.5 * log_n2)


def pt1_wavefunction(A: float, B: float, n: int, u):
    """Normalized PT I bound state on (0, pi/2)."""
    _check_n(n)
    if not (A > 0.5 and B > 0.5):
        raise ValueError("PT I bound states need A, B > 1/2")
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0) or np.any(u >= math.pi / 2):
        raise ValueError("u must lie strictly inside (0, pi/2)")
    P = jacobi_eval(n, A - 0.5, B - 0.5, np.cos(2.0 * u))
    out = pt1_norm(A, B, n) * np.sin(u) ** A * np.cos(u) ** B * P
    return float(out) if out.ndim == 0 else out


def potential(params: ModelParams, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    L = params.L
    out = L * (L + 1) / r**2 + 0.25 * params.omega**2 * r**2
    return float(out) if out.ndim == 0 else out


def energy(params: ModelParams, n) -> float:
    """E_n for the deformed oscillator; alpha = 0 gives (2n + L + 3/2) omega."""
    _check_n(n)
    a, L, D = params.alpha, params.L, params.Delta
    return a * (2 * L + 2.5) + (L + 1.5) * D + 4.0 * (a * (L + 1.5) + 0.5 * D) * n + 4.0 * a * n * n


def limit_energy(L: int, omega: float, n: int) -> float:
    _check_n(n)
    return (2.0 * n + L + 1.5) * omega


def spectrum(params: ModelParams, n_max: int) -> SpectrumTable:
    _check_n(n_max)
    rows = tuple((n, energy(params, n)) for n in range(n_max + 1))
    return SpectrumTable(rows, "closed_form", params)


def wavefunction_norm(params: ModelParams, n: int) -> float:
    if not params.deformed:
        raise ValueError("use limit_wavefunction for alpha = 0")
    L, k = params.L, params.kappa
    log_n2 = (math.log(2.0) + (L + 1.5) * math.log(params.alpha) + log_gamma(n + 1.0)
              + math.log(2 * n + L + 1.5 + k) + log_gamma(n + L + 1.5 + k)
              - log_gamma(n + L + 1.5) - log_gamma(n + 1.0 + k))
    return math.exp(0.5 * log_n2)


def _envelope(params: ModelParams, r: np.ndarray, f_power: float) -> np.ndarray:
    # r^{L+1} f^{f_power}, evaluated through log1p to survive huge exponents
    return r ** (params.L + 1) * np.exp(f_power * np.log1p(params.alpha * r * r))


def ground_state_unnormalized(params: ModelParams, r):
    r = np.asarray(r, dtype=float)
    return _envelope(params, r, -0.5 * (params.L + 2.5 + params.kappa))


def wavefunction(params: ModelParams, n: int, r):
    """Normalized psi_n on (0, inf) for alpha > 0."""
    _check_n(n)
    if not params.deformed:
        raise ValueError("use limit_wavefunction for alpha = 0")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    P = jacobi_eval(n, params.L + 0.5, params.kappa, t_of_r(params, r))
    out = wavefunction_norm(params, n) * ground_state_unnormalized(params, r) * P
    return float(out) if np.ndim(out) == 0 else out


def limit_wavefunction(L: int, omega: float, n: int, r):
    """Normalized constant-mass radial oscillator eigenfunction."""
    _check_n(n)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    log_norm = (0.5 * (L + 1.5) * math.log(omega / 2.0)
                + 0.5 * (math.log(2.0) + log_gamma(n + 1.0) - log_gamma(n + L + 1.5)))
    rho = 0.5 * omega * r * r
    out = math.exp(log_norm) * r ** (L + 1) * np.exp(-0.5 * rho) * laguerre_poly(n, L + 0.5)(rho)
    return float(out) if out.ndim == 0 else out


def count_nodes(values) -> int:
    """Sign changes in a sampled function, ignoring exact zeros."""
    v = np.asarray(values, dtype=float)
    s = np.sign(v[v != 0.0])
    return int(np.count_nonzero(s[1:] != s[:-1]))
