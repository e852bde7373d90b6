"""Spectra of hollow symmetric tridiagonal (Jacobi) matrices.

The spectrum of a hollow Jacobi matrix with positive off-diagonal is simple and
symmetric about zero. Only the non-negative half is computed by Sturm-sequence
bisection; the rest is obtained by mirroring, with an exact zero in the middle
for odd dimensions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import overload

import numpy as np
from numpy.typing import ArrayLike
from scipy import sparse
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal, solve_banded

from .errors import ConvergenceError
from .subspace import CouplingMatrix, SubspaceIndex

_logger = logging.getLogger(__name__)

BISECTION_RTOL = 1e-13
PAIRING_TOLERANCE = 1e-9
RESIDUAL_RTOL = 1e-10
INVERSE_ITERATION_CAP = 5


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """Ascending eigenvalues of one L(j,k), in units of g0."""

    index: SubspaceIndex
    eigenvalues: np.ndarray = field(repr=False)
    pairing_tolerance: float = PAIRING_TOLERANCE

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])

    def pairing_error(self) -> float:
        return float(np.max(np.abs(self.eigenvalues + self.eigenvalues[::-1])))

    def min_gap(self) -> float:
        """Smallest distance between neighbouring eigenvalues (inf for dim 1)."""
        if self.dim < 2:
            return math.inf
        return float(np.min(np.diff(self.eigenvalues)))


@dataclass(frozen=True, eq=False)
class EigenPair:
    eigenvalue: float
    vector: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Determinant:
    """det L as (sign, log|det|); sign 0 marks an exactly singular matrix."""

    sign: int
    log_abs: float

    @property
    def value(self) -> float | None:
        """The determinant as a float, or None when it overflows a double."""

        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return None

    def __float__(self) -> float:
        value = self.value
        if value is None:
            raise OverflowError(
                f"determinant magnitude exp({self.log_abs:.6g}) overflows a double"
            )
        return value


def row_sums(m: CouplingMatrix) -> np.ndarray:
    if m.dim == 1:
        return np.zeros(1)
    off = m.off_diag
    return np.concatenate(([off[0]], off[:-1] + off[1:], [off[-1]]))


def spectral_radius_bound(m: CouplingMatrix) -> float:
    """Largest row sum, a Perron-Frobenius upper bound on max |lambda|."""
    return float(np.max(row_sums(m)))


def _bisect(m: CouplingMatrix, first: int, last: int) -> np.ndarray:
    tol = BISECTION_RTOL * spectral_radius_bound(m)
    _logger.debug("bisection %s indices %d..%d tol=%g", m.index, first, last, tol)
    values = eigvalsh_tridiagonal(
        np.zeros(m.dim),
        np.asarray(m.off_diag),
        select="i",
        select_range=(first, last),
        lapack_driver="stebz",
        tol=tol,
    )
    return np.sort(values)


def eigenvalues(m: CouplingMatrix) -> SpectrumSet:
    n = m.dim
    half = n // 2
    positive = _bisect(m, n - half, n - 1) if half else np.empty(0)
    middle = np.zeros(n % 2)
    values = np.concatenate((-positive[::-1], middle, positive))
    values.setflags(write=False)
    return SpectrumSet(index=m.index, eigenvalues=values)


def largest_eigenvalue(m: CouplingMatrix) -> float:
    if m.dim == 1:
        return 0.0
    return float(_bisect(m, m.dim - 1, m.dim - 1)[0])


@overload
def sturm_count(m: CouplingMatrix, x: float) -> int: ...
@overload
def sturm_count(m: CouplingMatrix, x: np.ndarray) -> np.ndarray: ...
def sturm_count(m: CouplingMatrix, x: ArrayLike) -> int | np.ndarray:
    """Number of eigenvalues below x, from the pivots of an LDL^T of L - xI."""

    shifts = np.atleast_1d(np.asarray(x, dtype=np.float64))
    squares = np.square(m.off_diag)
    pivmin = np.finfo(np.float64).tiny * max(1.0, float(np.max(squares, initial=0.0)))

    pivot = -shifts
    pivot = np.where(np.abs(pivot) < pivmin, -pivmin, pivot)
    count = (pivot < 0).astype(np.int64)
    for square in squares:
        pivot = -shifts - square / pivot
        pivot = np.where(np.abs(pivot) < pivmin, -pivmin, pivot)
        count += pivot < 0

    if np.ndim(x) == 0:
        return int(count[0])
    return count


def char_poly_eval(m: CouplingMatrix, x: float) -> float:
    """det(L - xI) by the three-term recurrence."""

    previous, current = 1.0, -x
    for square in np.square(m.off_diag):
        previous, current = current, -x * current - square * previous
    return float(current)


def determinant(m: CouplingMatrix) -> Determinant:
    if m.dim % 2:
        return Determinant(sign=0, log_abs=-math.inf)
    # (-1)^(dim/2) * l_1^2 * l_3^2 * ... * l_{dim-1}^2
    sign = -1 if (m.dim // 2) % 2 else 1
    log_abs = 2.0 * math.fsum(np.log(m.off_diag[0::2]))
    return Determinant(sign=sign, log_abs=log_abs)


def determinant_recurrence(m: CouplingMatrix) -> float:
    return char_poly_eval(m, 0.0)


def trace_power(m: CouplingMatrix, t: int) -> float:
    """Tr(L^t) by repeated sparse products, without eigenvalues."""

    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    if m.dim == 1:
        return 1.0 if t == 0 else 0.0
    lamb = sparse.diags([m.off_diag, m.off_diag], [-1, 1], format="csr")
    power = sparse.identity(m.dim, format="csr")
    for _ in range(t):
        power = power @ lamb
    return float(power.diagonal().sum())


def _residual(m: CouplingMatrix, lam: float, vector: np.ndarray) -> float:
    product = -lam * vector
    product[:-1] += m.off_diag * vector[1:]
    product[1:] += m.off_diag * vector[:-1]
    return float(np.max(np.abs(product)))


def _null_vector(m: CouplingMatrix) -> np.ndarray:
    # Row i reads l_i v_{i-1} + l_{i+1} v_{i+1} = 0, so odd positions vanish.
    vector = np.zeros(m.dim)
    vector[0] = 1.0
    off = m.off_diag
    for i in range(1, m.dim - 1, 2):
        vector[i + 1] = -off[i - 1] * vector[i - 1] / off[i]
        if abs(vector[i + 1]) > 1e150:
            vector /= abs(vector[i + 1])
    return vector / np.linalg.norm(vector)


def _solve_shifted(banded: np.ndarray, lam: float, rhs: np.ndarray) -> np.ndarray:
    nudge = 64 * np.finfo(np.float64).eps * max(1.0, abs(lam))
    for shift in (lam, lam + nudge):
        banded[1, :] = -shift
        try:
            solved = solve_banded((1, 1), banded, rhs)
        except LinAlgError:
            _logger.debug("singular shift %r, nudging by %g", shift, nudge)
            continue
        if np.all(np.isfinite(solved)):
            return solved
    raise ConvergenceError(f"shift {lam!r} leaves L - lambda I unsolvable")


def _inverse_iteration(m: CouplingMatrix, lam: float, tol: float) -> np.ndarray:
    n = m.dim
    banded = np.zeros((3, n))
    banded[0, 1:] = m.off_diag
    banded[2, :-1] = m.off_diag
    vector = np.full(n, 1.0 / math.sqrt(n))

    residual = math.inf
    for iteration in range(1, INVERSE_ITERATION_CAP + 1):
        solved = _solve_shifted(banded, lam, vector)
        vector = solved / np.linalg.norm(solved)
        residual = _residual(m, lam, vector)
        if residual <= tol:
            _logger.debug("inverse iteration converged in %d pass(es)", iteration)
            return vector
    raise ConvergenceError(
        f"inverse iteration for lambda={lam!r} on {m.index} stalled at "
        f"residual {residual:.3g} > {tol:.3g}"
    )


def _fix_sign(vector: np.ndarray) -> np.ndarray:
    leading = np.flatnonzero(np.abs(vector) > 1e-12 * np.max(np.abs(vector)))[0]
    if vector[leading] < 0:
        vector = -vector
    vector.setflags(write=False)
    return vector


def eigenvector(m: CouplingMatrix, lam: float) -> EigenPair:
    """Unit eigenvector for an eigenvalue of L known to pairing tolerance."""

    lam = float(lam)
    n = m.dim
    bracket = PAIRING_TOLERANCE * max(1.0, spectral_radius_bound(m))
    if n == 1:
        if abs(lam) > bracket:
            raise ConvergenceError(f"{m.index} has only the eigenvalue 0, got {lam!r}")
        return EigenPair(eigenvalue=lam, vector=_fix_sign(np.ones(1)))

    if n % 2 and lam == 0.0:
        vector = _null_vector(m)
    else:
        below, above = sturm_count(m, np.array([lam - bracket, lam + bracket]))
        if above == below:
            raise ConvergenceError(
                f"no eigenvalue of {m.index} within {bracket:.3g} of {lam!r}"
            )
        tol = RESIDUAL_RTOL * max(1.0, abs(lam)) * float(np.max(m.off_diag))
        vector = _inverse_iteration(m, lam, tol)
    return EigenPair(eigenvalue=lam, vector=_fix_sign(vector))
