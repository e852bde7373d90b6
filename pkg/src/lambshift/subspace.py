"""Index arithmetic of the (j,k) decomposition and the Lamb-shift coupling matrices.

Total angular momentum is carried as the integer ``twice_j`` (2j) everywhere so
that half-integer values never touch floating point. Inside one (j,k) block the
basis is ordered from the lowest spin projection upward; element ``alpha``
couples basis states ``alpha`` and ``alpha + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import CouplingIndexError, DomainError, EmptySubspaceError


@dataclass(frozen=True, slots=True)
class SubspaceIndex:
    """One (N, j, k) block of the direct sum."""

    n_spins: int
    twice_j: int
    k: int

    def __post_init__(self) -> None:
        for name in ("n_spins", "twice_j", "k"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n_spins < 1:
            raise DomainError(f"n_spins must be positive, got {self.n_spins}")
        if not 0 <= self.twice_j <= self.n_spins:
            raise DomainError(
                f"twice_j={self.twice_j} outside [0, {self.n_spins}] for N={self.n_spins}"
            )
        if (self.n_spins - self.twice_j) % 2:
            raise DomainError(
                f"twice_j={self.twice_j} has the wrong parity for N={self.n_spins}"
            )
        if self.k < 0:
            raise DomainError(f"k must be non-negative, got {self.k}")

    @property
    def j(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def k0(self) -> int:
        return (self.n_spins - self.twice_j) // 2

    @property
    def k_prime(self) -> int:
        """Excitations above the j ladder's ground state (negative when empty)."""
        return self.k - self.k0

    @property
    def is_empty(self) -> bool:
        return self.k < self.k0

    def with_k(self, k: int) -> "SubspaceIndex":
        return replace(self, k=k)

    def __str__(self) -> str:
        j = self.j
        label = str(j.numerator) if j.denominator == 1 else f"{j.numerator}/2"
        return f"N={self.n_spins}, j={label}, k={self.k}"


@dataclass(frozen=True)
class PhysicalParams:
    """Shared cavity/spin frequency and single-spin coupling (same units)."""

    omega0: float
    g0: float

    def __post_init__(self) -> None:
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if not (self.g0 > 0 and math.isfinite(self.g0)):
            raise DomainError(f"g0 must be positive, got {self.g0}")

    @classmethod
    def from_ratio(cls, omega_over_g: float) -> "PhysicalParams":
        """Energies in units of omega0, so g0 = 1 / (omega0/g0)."""

        if not omega_over_g > 0:
            raise DomainError(f"omega_over_g must be positive, got {omega_over_g}")
        return cls(omega0=1.0, g0=1.0 / omega_over_g)

    @property
    def omega_over_g(self) -> float:
        return self.omega0 / self.g0

    def effective_coupling(self, n_spins: int) -> float:
        """Collectively enhanced coupling g0 * sqrt(N)."""
        return self.g0 * math.sqrt(n_spins)


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Hollow symmetric tridiagonal L(j,k), stored as its off-diagonal."""

    index: SubspaceIndex
    off_diag: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.off_diag) + 1

    def squared_elements(self) -> list[int]:
        """Exact integer l_alpha^2 for alpha = 1..dim-1."""
        return [_squared_element(self.index, alpha) for alpha in range(1, self.dim)]

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.dim, self.dim))
        if self.dim > 1:
            rows = np.arange(self.dim - 1)
            dense[rows, rows + 1] = self.off_diag
            dense[rows + 1, rows] = self.off_diag
        return dense


def allowed_twice_j(n_spins: int) -> range:
    """Valid 2j values for N spins, ascending."""

    if n_spins < 1:
        raise DomainError(f"n_spins must be positive, got {n_spins}")
    return range(n_spins % 2, n_spins + 1, 2)


def k0(index: SubspaceIndex) -> int:
    """Excitations held by the ground state of the j ladder, N/2 - j."""
    return index.k0


def basis_dim(index: SubspaceIndex) -> int:
    if index.is_empty:
        return 0
    return min(index.twice_j + 1, index.k_prime + 1)


def _squared_element(index: SubspaceIndex, alpha: int) -> int:
    # 2*alpha*j - alpha*(alpha-1) == alpha*(2j - alpha + 1)
    return alpha * (index.twice_j - alpha + 1) * (index.k_prime - alpha + 1)


def coupling_element(index: SubspaceIndex, alpha: int) -> float:
    dim = basis_dim(index)
    if not 1 <= alpha <= dim - 1:
        raise CouplingIndexError(
            f"alpha={alpha} outside 1..{dim - 1} for subspace {index}"
        )
    return math.sqrt(_squared_element(index, alpha))


def build_coupling_matrix(index: SubspaceIndex) -> CouplingMatrix:
    dim = basis_dim(index)
    if dim == 0:
        raise EmptySubspaceError(f"subspace {index} is empty (k < k0 = {index.k0})")

    # python ints: l_alpha^2 leaves int64 once k' nears 1e18 / dim^2
    squares = [_squared_element(index, alpha) for alpha in range(1, dim)]
    off_diag = np.sqrt(np.array(squares, dtype=np.float64))
    off_diag.setflags(write=False)
    return CouplingMatrix(index=index, off_diag=off_diag)


def iter_subspaces(n_spins: int, k: int) -> Iterator[SubspaceIndex]:
    """Non-empty (j,k) blocks at fixed k, ascending j."""

    for twice_j in allowed_twice_j(n_spins):
        index = SubspaceIndex(n_spins, twice_j, k)
        if not index.is_empty:
            yield index
