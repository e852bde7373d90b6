"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class LambShiftError(Exception):
    """Base class for every error raised by lambshift."""


class DomainError(LambShiftError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class EmptySubspaceError(DomainError):
    """A (j,k) block holds no states (k < k0(j))."""


class CouplingIndexError(DomainError, IndexError):
    """A coupling-matrix element was requested outside 1..dim-1."""


class CostGuardError(DomainError):
    """A brute-force computation was refused because it would be too large."""


class ConfigError(DomainError):
    """A CLI flag combination is invalid for the selected command."""


class ConvergenceError(LambShiftError, ArithmeticError):
    """An iterative solver did not reach its residual target."""
