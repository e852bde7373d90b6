"""Reference spectra: closed forms for N = 1, 2, 3 and dense diagonalisation.

Both are independent of the tridiagonal machinery. The dense path builds the
interaction on the whole k-excitation manifold in the Zeeman basis
(``|spin bits>|photons>``), so agreement with the subspace spectra checks the
direct-sum decomposition itself.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import eigh

from .degeneracy import degeneracy
from .errors import CostGuardError, DomainError
from .subspace import build_coupling_matrix, iter_subspaces
from .tridiag import eigenvalues

_logger = logging.getLogger(__name__)

DENSE_LIMIT = 12
ORACLE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class OracleBlock:
    twice_j: int
    multiplicity: int
    eigenvalues: tuple[float, ...]


@dataclass(frozen=True)
class OracleSpectrum:
    n_spins: int
    k: int
    blocks: tuple[OracleBlock, ...]

    def block(self, twice_j: int) -> OracleBlock:
        for block in self.blocks:
            if block.twice_j == twice_j:
                return block
        raise KeyError(twice_j)

    def multiset(self) -> np.ndarray:
        """All eigenvalues with multiplicity, ascending."""
        values = [
            value
            for block in self.blocks
            for _ in range(block.multiplicity)
            for value in block.eigenvalues
        ]
        return np.sort(np.asarray(values, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class DenseOracleResult:
    n_spins: int
    k: int
    eigenvalues: np.ndarray = field(repr=False)
    subspace_eigenvalues: np.ndarray = field(repr=False)
    max_deviation: float
    matches: bool


@dataclass(frozen=True)
class OracleCheckRow:
    k: int
    source: str
    states: int
    max_deviation: float
    matches: bool


def _check_k(k: int) -> None:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")


def _pm(value: float) -> tuple[float, float]:
    return (-value, value)


def oracle_n1(k: int) -> OracleSpectrum:
    """Jaynes-Cummings ladder: E = k*omega0 +- g0 sqrt(k)."""

    _check_k(k)
    values = (0.0,) if k == 0 else _pm(math.sqrt(k))
    return OracleSpectrum(1, k, (OracleBlock(1, 1, values),))


def oracle_n2(k: int) -> OracleSpectrum:
    _check_k(k)
    if k == 0:
        return OracleSpectrum(2, k, (OracleBlock(2, 1, (0.0,)),))
    if k == 1:
        triplet = _pm(math.sqrt(2.0))
    else:
        outer = math.sqrt(2.0) * math.sqrt(2 * k - 1)
        triplet = (-outer, 0.0, outer)
    return OracleSpectrum(
        2, k, (OracleBlock(0, 1, (0.0,)), OracleBlock(2, 1, triplet))
    )


def oracle_n3(k: int) -> OracleSpectrum:
    _check_k(k)
    if k == 0:
        return OracleSpectrum(3, k, (OracleBlock(3, 1, (0.0,)),))
    if k == 1:
        quartet: tuple[float, ...] = _pm(math.sqrt(3.0))
        doublet: tuple[float, ...] = (0.0,)
    elif k == 2:
        root = math.sqrt(10.0)
        quartet = (-root, 0.0, root)
        doublet = (-1.0, 1.0)
    else:
        discriminant = math.sqrt(16 * k * k - 32 * k + 25)
        inner = math.sqrt(5 * k - 5 - discriminant)
        outer = math.sqrt(5 * k - 5 + discriminant)
        quartet = (-outer, -inner, inner, outer)
        doublet = _pm(math.sqrt(k - 1))
    return OracleSpectrum(
        3, k, (OracleBlock(1, 2, doublet), OracleBlock(3, 1, quartet))
    )


def oracle_spectrum(n_spins: int, k: int) -> OracleSpectrum:
    closed_forms = {1: oracle_n1, 2: oracle_n2, 3: oracle_n3}
    if n_spins not in closed_forms:
        raise DomainError(f"no closed-form spectrum for N={n_spins}")
    return closed_forms[n_spins](k)


def subspace_union(n_spins: int, k: int) -> np.ndarray:
    """Spectra of every non-empty L(j,k), each repeated d_j times, ascending."""

    parts = [
        np.tile(
            eigenvalues(build_coupling_matrix(index)).eigenvalues,
            degeneracy(n_spins, index.twice_j),
        )
        for index in iter_subspaces(n_spins, k)
    ]
    return np.sort(np.concatenate(parts))


def manifold_matrix(n_spins: int, k: int) -> np.ndarray:
    """sum_i (a sigma+_i + a^dagger sigma-_i) on the states with k excitations, in units of g0."""

    _check_k(k)
    if n_spins > DENSE_LIMIT:
        raise CostGuardError(
            f"dense oracle refused for N={n_spins} (limit {DENSE_LIMIT})"
        )
    codes = np.arange(2**n_spins, dtype=np.int64)
    excited = np.zeros_like(codes)
    for spin in range(n_spins):
        excited += (codes >> spin) & 1

    states = codes[excited <= k]
    position = np.full(len(codes), -1, dtype=np.int64)
    position[states] = np.arange(len(states))

    matrix = np.zeros((len(states), len(states)))
    for spin in range(n_spins):
        bit = 1 << spin
        source = states[(states & bit) == 0]
        target = source | bit
        # the target stays in the manifold only if the source holds a photon
        source, target = source[position[target] >= 0], target[position[target] >= 0]
        amplitude = np.sqrt((k - excited[source]).astype(np.float64))
        matrix[position[target], position[source]] += amplitude
        matrix[position[source], position[target]] += amplitude
    return matrix


def dense_oracle(
    n_spins: int, k: int, *, tolerance: float = ORACLE_TOLERANCE
) -> DenseOracleResult:
    matrix = manifold_matrix(n_spins, k)
    _logger.debug("dense oracle N=%d k=%d on %d states", n_spins, k, len(matrix))
    dense = eigh(matrix, eigvals_only=True)
    union = subspace_union(n_spins, k)
    if len(dense) != len(union):
        raise ArithmeticError(
            f"manifold holds {len(dense)} states but subspaces hold {len(union)}"
        )
    deviation = float(np.max(np.abs(dense - union)))
    scale = max(1.0, float(np.max(np.abs(dense))))
    return DenseOracleResult(
        n_spins=n_spins,
        k=k,
        eigenvalues=dense,
        subspace_eigenvalues=union,
        max_deviation=deviation,
        matches=deviation <= tolerance * scale,
    )


def check_oracles(
    n_spins: int, k_values: Sequence[int], *, tolerance: float = ORACLE_TOLERANCE
) -> list[OracleCheckRow]:
    """Compare the subspace spectra against a reference for each k.

    Closed forms are used for N <= 3 and dense diagonalisation up to N = 12.
    """

    if n_spins > DENSE_LIMIT:
        raise CostGuardError(
            f"no reference spectrum available for N={n_spins} (limit {DENSE_LIMIT})"
        )
    rows = []
    for k in k_values:
        if n_spins <= 3:
            reference = oracle_spectrum(n_spins, k).multiset()
            union = subspace_union(n_spins, k)
            deviation = float(np.max(np.abs(reference - union)))
            scale = max(1.0, float(np.max(np.abs(reference))))
            rows.append(
                OracleCheckRow(
                    k, "closed_form", len(union), deviation, deviation <= tolerance * scale
                )
            )
        else:
            result = dense_oracle(n_spins, k, tolerance=tolerance)
            rows.append(
                OracleCheckRow(
                    k, "dense", len(result.eigenvalues), result.max_deviation, result.matches
                )
            )
    return rows
