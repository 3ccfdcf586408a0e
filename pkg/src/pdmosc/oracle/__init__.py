"""Independent numerical checks: FD eigenvalues, operator residuals, quadrature."""

from .fd import (
    BACKEND,
    KERNELS,
    DEFAULT_POINTS,
    FdProblem,
    OracleError,
    fd_eigenpair,
    fd_eigenvalues,
    pdm_fd_eigenvalues,
    radial_problem,
    tridiagonal_eigenvalues,
)
from .quadrature import QuadratureError, quad_integrate
from .residual import apply_hamiltonian, deformed_residual

__all__ = [
    "BACKEND",
    "KERNELS",
    "DEFAULT_POINTS",
    "FdProblem",
    "OracleError",
    "QuadratureError",
    "apply_hamiltonian",
    "deformed_residual",
    "fd_eigenpair",
    "fd_eigenvalues",
    "pdm_fd_eigenvalues",
    "quad_integrate",
    "radial_problem",
    "tridiagonal_eigenvalues",
]
