"""Point canonical transformation between the PDM oscillator and PT I.

The radial variable r in (0, inf) maps to u = arctan(sqrt(alpha) r) in
(0, pi/2) and to t = cos 2u = (1 - alpha r^2)/(1 + alpha r^2) in (-1, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "GridFunction",
    "u_of_r",
    "r_of_u",
    "t_of_r",
    "deforming_f",
    "deforming_f_prime",
    "pt1_parameters",
    "mass",
    "von_roos_effective_potential",
]


@dataclass(frozen=True)
class ModelParams:
    """Deformation and oscillator parameters (alpha, L, omega).

    ``alpha == 0`` is the constant-mass limit; the PT I quantities
    ``B`` and ``c`` are undefined there and raise.
    """

    alpha: float
    L: int
    omega: float

    def __post_init__(self):
        if isinstance(self.L, bool) or int(self.L) != self.L or self.L < 0:
            raise ValueError(f"L must be a nonnegative integer, got {self.L!r}")
        object.__setattr__(self, "L", int(self.L))
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be >= 0, got {self.alpha!r}")

    @property
    def deformed(self) -> bool:
        return self.alpha > 0

    @property
    def Delta(self) -> float:
        return math.hypot(self.omega, self.alpha)

    @property
    def A(self) -> float:
        return self.L + 1.0

    @property
    def kappa(self) -> float:
        """Delta / (2 alpha), the recurring Jacobi parameter."""
        self._require_deformed("Delta/(2 alpha)")
        return self.Delta / (2.0 * self.alpha)

    @property
    def B(self) -> float:
        self._require_deformed("B")
        return 0.5 * (1.0 + self.Delta / self.alpha)

    @property
    def a_pct(self) -> float:
        return math.sqrt(self.alpha)

    @property
    def b_pct(self) -> float:
        return 0.0

    @property
    def c_pct(self) -> float:
        self._require_deformed("c")
        return -self.alpha * self.L * (self.L + 1) - self.omega**2 / (4.0 * self.alpha)

    def with_(self, **changes) -> ModelParams:
        values = {"alpha": self.alpha, "L": self.L, "omega": self.omega}
        values.update(changes)
        return ModelParams(**values)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "L": self.L, "omega": self.omega}

    def _require_deformed(self, what: str) -> None:
        if self.alpha <= 0:
            raise ValueError(f"{what} is undefined for alpha = 0 (constant-mass limit)")


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on a strictly increasing grid."""

    grid: np.ndarray
    values: np.ndarray
    space: str = "radial"

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if grid.size >= 2 and not np.all(np.diff(grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function samples must be finite")
        if self.space not in ("radial", "angular"):
            raise ValueError(f"unknown space tag {self.space!r}")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, fn, grid, space: str = "radial") -> GridFunction:
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.array([fn(x) for x in grid], dtype=float), space)

    def __len__(self):
        return self.grid.size

    @property
    def spacing(self) -> float:
        """Uniform step, raising if the grid is not uniform."""
        h = np.diff(self.grid)
        if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
            raise ValueError("grid is not uniform")
        return float(h[0])

    def restrict(self, grid: np.ndarray) -> GridFunction:
        """Sub-sample on ``grid``, which must be a contiguous run of our nodes."""
        grid = np.asarray(grid, dtype=float)
        i0 = int(np.searchsorted(self.grid, grid[0] - 1e-12 * max(1.0, abs(grid[0]))))
        sl = slice(i0, i0 + grid.size)
        if sl.stop > self.grid.size or not np.allclose(self.grid[sl], grid, rtol=1e-12, atol=0.0):
            raise ValueError("grid is not a contiguous sub-grid")
        return GridFunction(self.grid[sl], self.values[sl], self.space)

    def _common(self, other: GridFunction) -> tuple[GridFunction, GridFunction]:
        lo = max(self.grid[0], other.grid[0])
        hi = min(self.grid[-1], other.grid[-1])
        tol = 1e-12 * max(1.0, abs(hi))
        mask = (self.grid >= lo - tol) & (self.grid <= hi + tol)
        grid = self.grid[mask]
        return self.restrict(grid), other.restrict(grid)

    def __add__(self, other):
        if isinstance(other, GridFunction):
            a, b = self._common(other)
            return GridFunction(a.grid, a.values + b.values, self.space)
        return GridFunction(self.grid, self.values + other, self.space)

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            a, b = self._common(other)
            return GridFunction(a.grid, a.values - b.values, self.space)
        return GridFunction(self.grid, self.values - other, self.space)

    def __mul__(self, scalar):
        return GridFunction(self.grid, self.values * scalar, self.space)

    __rmul__ = __mul__

    def norm(self) -> float:
        """Discrete L2 norm (trapezoidal rule on the grid)."""
        return math.sqrt(float(np.trapezoid(self.values**2, self.grid)))


def _require_alpha(params: ModelParams) -> None:
    if params.alpha <= 0:
        raise ValueError("the angular map needs alpha > 0")


def u_of_r(params: ModelParams, r):
    _require_alpha(params)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    out = np.arctan(math.sqrt(params.alpha) * r)
    return float(out) if out.ndim == 0 else out


def r_of_u(params: ModelParams, u):
    _require_alpha(params)
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0) or np.any(u >= math.pi / 2):
        raise ValueError("u must lie in (0, pi/2)")
    out = np.tan(u) / math.sqrt(params.alpha)
    return float(out) if out.ndim == 0 else out


def t_of_r(params: ModelParams, r):
    """t = (1 - alpha r^2)/(1 + alpha r^2); the constant-mass limit uses rho instead."""
    _require_alpha(params)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    ar2 = params.alpha * r * r
    out = (1.0 - ar2) / (1.0 + ar2)
    return float(out) if out.ndim == 0 else out


def deforming_f(params: ModelParams, r):
    r = np.asarray(r, dtype=float)
    out = 1.0 + params.alpha * r * r
    return float(out) if out.ndim == 0 else out


def deforming_f_prime(params: ModelParams, r):
    r = np.asarray(r, dtype=float)
    out = 2.0 * params.alpha * r
    return float(out) if out.ndim == 0 else out


def pt1_parameters(params: ModelParams) -> tuple[float, float, float]:
    """PT I image (A, B, c) with E = alpha * eps + c."""
    _require_alpha(params)
    return params.A, params.B, params.c_pct


def mass(params: ModelParams, r):
    """m(r) and its first two r-derivatives for m = (1 + alpha r^2)^-2."""
    a = params.alpha
    f = 1.0 + a * r * r
    m = f**-2
    m1 = -4.0 * a * r * f**-3
    m2 = -4.0 * a * f**-3 + 24.0 * a * a * r * r * f**-4
    return m, m1, m2


def von_roos_effective_potential(xi: float, zeta: float, params: ModelParams, r: float,
                                 V_at_r: float) -> float:
    """Potential that turns a von Roos ordering (xi, eta, zeta) into the symmetric one.

    eta is fixed by xi + eta + zeta = -1.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    m, m1, m2 = mass(params, r)
    return (V_at_r + 0.5 * (xi + zeta + 0.5) * m2 / m**2
            - (xi * zeta + xi + zeta + 7.0 / 16.0) * m1**2 / m**3)
