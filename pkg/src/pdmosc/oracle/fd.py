"""Finite-difference eigensolver for -d^2/dx^2 + U(x) with Dirichlet walls.

The three-point Laplacian gives a symmetric tridiagonal matrix whose lowest
eigenvalues are found by multisection on Sturm-sequence counts; two grids
(N and 2N intervals) are combined by one Richardson step to cancel the h^2
error term.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import solve_banded

from ..pct import GridFunction, ModelParams, r_of_u

from . import _sturm_py

try:
    from . import _sturm as _sturm_c
except ImportError:  # extension not built
    _sturm_c = None

KERNELS = {"python": _sturm_py.sturm_counts}
if _sturm_c is not None:
    KERNELS["compiled"] = _sturm_c.sturm_counts
BACKEND = "python" if os.environ.get("PDMOSC_PURE_PYTHON") or _sturm_c is None else "compiled"

__all__ = [
    "BACKEND",
    "KERNELS",
    "DEFAULT_POINTS",
    "OracleError",
    "FdProblem",
    "tridiagonal",
    "tridiagonal_eigenvalues",
    "fd_eigenvalues",
    "fd_eigenpair",
    "radial_problem",
    "pdm_fd_eigenvalues",
]

DEFAULT_POINTS = 4096
MIN_POINTS = 64


class OracleError(ValueError):
    """The finite-difference problem is ill-posed (bad grid, non-finite potential)."""


@dataclass(frozen=True)
class FdProblem:
    """-phi'' + U phi = eps phi on (lo, hi), phi(lo) = phi(hi) = 0.

    ``points`` is the number of grid intervals; the interior has points-1 nodes.
    """

    potential: Callable
    interval: tuple[float, float]
    points: int = DEFAULT_POINTS
    boundary: str = "dirichlet"

    def __post_init__(self):
        lo, hi = self.interval
        if not lo < hi:
            raise OracleError(f"empty interval {self.interval}")
        if self.points < MIN_POINTS:
            raise OracleError(f"need at least {MIN_POINTS} grid intervals, got {self.points}")
        if self.boundary != "dirichlet":
            raise OracleError(f"only Dirichlet walls are supported, got {self.boundary!r}")

    def refined(self, factor: int = 2) -> FdProblem:
        return FdProblem(self.potential, self.interval, self.points * factor, self.boundary)

    @property
    def step(self) -> float:
        lo, hi = self.interval
        return (hi - lo) / self.points

    def nodes(self) -> np.ndarray:
        lo, _ = self.interval
        return lo + self.step * np.arange(1, self.points)


def tridiagonal(problem: FdProblem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(nodes, diagonal, off-diagonal) of the discretized operator."""
    x = problem.nodes()
    U = np.asarray(problem.potential(x), dtype=float)
    if U.shape != x.shape:
        U = np.array([problem.potential(v) for v in x], dtype=float)
    if not np.all(np.isfinite(U)):
        bad = x[~np.isfinite(U)][0]
        raise OracleError(f"potential is not finite at node x={bad!r}")
    h2 = problem.step**2
    diag = 2.0 / h2 + U
    off = np.full(x.size - 1, -1.0 / h2)
    return x, diag, off


def tridiagonal_eigenvalues(diag, off, k: int, sections: int | None = None,
                            rtol: float = 4e-16, backend: str | None = None) -> np.ndarray:
    """Lowest k eigenvalues of a symmetric tridiagonal matrix.

    Each eigenvalue is bracketed by Gershgorin bounds and narrowed by
    evaluating Sturm counts at ``sections`` interior points per pass.
    ``backend`` picks a kernel from KERNELS (default: the one chosen at import).
    """
    backend = backend or BACKEND
    if backend not in KERNELS:
        raise OracleError(f"unknown or unavailable Sturm backend {backend!r}; have {sorted(KERNELS)}")
    counter = KERNELS[backend]
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    off2 = np.ascontiguousarray(off * off)
    n = diag.size
    if not 1 <= k <= n:
        raise OracleError(f"cannot extract {k} eigenvalues from a {n}x{n} matrix")
    if sections is None:
        sections = 1 if backend == "compiled" else 31
    radius = np.zeros(n)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    glo = float(np.min(diag - radius))
    ghi = float(np.max(diag + radius))
    span = ghi - glo
    lo = np.full(k, glo - 1e-12 * abs(span))
    hi = np.full(k, ghi + 1e-12 * abs(span))
    target = np.arange(1, k + 1)  # eigenvalue j (0-based) is where the count reaches j+1
    frac = np.arange(1, sections + 1) / (sections + 1)
    for _ in range(400):
        width = hi - lo
        scale = np.maximum(np.abs(lo), np.abs(hi))
        active = width > rtol * scale + 1e-300
        if not np.any(active):
            break
        idx = np.flatnonzero(active)
        shifts = lo[idx, None] + width[idx, None] * frac[None, :]
        counts = counter(diag, off2, np.ascontiguousarray(shifts.ravel())).reshape(shifts.shape)
        for row, j in enumerate(idx):
            below = counts[row] < target[j]
            # last shift with count < target is a new lower bound, first with >= is the upper
            n_below = int(np.count_nonzero(below))
            if n_below:
                lo[j] = shifts[row, n_below - 1]
            if n_below < sections:
                hi[j] = shifts[row, n_below]
    return 0.5 * (lo + hi)


def _solve(problem: FdProblem, k: int) -> np.ndarray:
    _, diag, off = tridiagonal(problem)
    return tridiagonal_eigenvalues(diag, off, k)


def fd_eigenvalues(problem: FdProblem, k: int, richardson: bool = True) -> np.ndarray:
    """Lowest k eigenvalues; with ``richardson`` the N and 2N results are extrapolated."""
    if k < 1 or k > problem.points // 4:
        raise OracleError(f"k must lie in [1, N/4] = [1, {problem.points // 4}], got {k}")
    coarse = _solve(problem, k)
    if not richardson:
        return coarse
    fine = _solve(problem.refined(2), k)
    return (4.0 * fine - coarse) / 3.0


def fd_eigenpair(problem: FdProblem, j: int) -> tuple[float, GridFunction]:
    """Eigenvalue j (0-based, no extrapolation) and its unit-norm eigenvector by inverse iteration."""
    x, diag, off = tridiagonal(problem)
    lam = float(tridiagonal_eigenvalues(diag, off, j + 1)[j])
    n = diag.size
    shift = lam - 1e-9 * max(1.0, abs(lam))
    ab = np.zeros((3, n))
    ab[0, 1:] = off
    ab[1] = diag - shift
    ab[2, :-1] = off
    v = np.ones(n) / math.sqrt(n)
    for _ in range(3):
        v = solve_banded((1, 1), ab, v)
        v /= np.linalg.norm(v)
    v /= math.sqrt(problem.step)
    if v[np.argmax(np.abs(v[: max(1, n // 8)]))] < 0:
        v = -v
    return lam, GridFunction(x, v, "angular")


def radial_problem(params: ModelParams, V: Callable, points: int = DEFAULT_POINTS) -> FdProblem:
    """Angular-space image of pi_r^2 + V(r): U(u) = (V(r(u)) - c)/alpha on (0, pi/2).

    The energies of the radial problem are alpha * eps + c.
    """
    if not params.deformed:
        raise OracleError("the angular map needs alpha > 0")
    a, c = params.alpha, params.c_pct

    def U(u):
        return (np.asarray(V(r_of_u(params, u)), dtype=float) - c) / a

    return FdProblem(U, (0.0, math.pi / 2), points)


def pdm_fd_eigenvalues(params: ModelParams, V: Callable, k: int, points: int = DEFAULT_POINTS,
                       richardson: bool = True) -> np.ndarray:
    """Lowest k eigenvalues of the deformed radial Hamiltonian pi_r^2 + V(r)."""
    eps = fd_eigenvalues(radial_problem(params, V, points), k, richardson)
    return params.alpha * eps + params.c_pct
