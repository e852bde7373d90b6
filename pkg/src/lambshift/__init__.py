"""Tavis-Cummings spectra through the (j,k) subspace decomposition."""

from .degeneracy import degeneracy, j_star_exact, states_with_k_excitations, strong_support
from .errors import (
    ConfigError,
    ConvergenceError,
    CostGuardError,
    CouplingIndexError,
    DomainError,
    EmptySubspaceError,
    LambShiftError,
)
from .stats import aggregated_moment, pf_bounds, rwa_check, slope_fit, variance_scan
from .subspace import (
    CouplingMatrix,
    PhysicalParams,
    SubspaceIndex,
    basis_dim,
    build_coupling_matrix,
    coupling_element,
    k0,
)
from .tridiag import determinant, eigenvalues, eigenvector

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "CostGuardError",
    "CouplingIndexError",
    "CouplingMatrix",
    "DomainError",
    "EmptySubspaceError",
    "LambShiftError",
    "PhysicalParams",
    "SubspaceIndex",
    "aggregated_moment",
    "basis_dim",
    "build_coupling_matrix",
    "coupling_element",
    "degeneracy",
    "determinant",
    "eigenvalues",
    "eigenvector",
    "j_star_exact",
    "k0",
    "pf_bounds",
    "rwa_check",
    "slope_fit",
    "states_with_k_excitations",
    "strong_support",
    "variance_scan",
]
