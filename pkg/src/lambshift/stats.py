"""Moments, bounds and RWA diagnostics of the Lamb-shift spectra.

Per-subspace statistics act on a single L(j,k). Aggregated statistics weight
every subspace at fixed k by its degeneracy d_j and normalise by D_k, the
number of states holding k excitations.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping

import numpy as np
from scipy.stats import linregress

from .degeneracy import (
    EXACT_LIMIT,
    degeneracy,
    j_star_asymptotic,
    log_binomials,
    log_degeneracies,
    log_states_with_k_excitations,
    states_with_k_excitations,
    strong_support,
)
from .errors import DomainError
from .parallel import ordered_map
from .subspace import (
    PhysicalParams,
    SubspaceIndex,
    allowed_twice_j,
    basis_dim,
    build_coupling_matrix,
    iter_subspaces,
)
from .tridiag import eigenvalues, largest_eigenvalue, row_sums, trace_power

_logger = logging.getLogger(__name__)

MAX_MOMENT_ORDER = 12
DEFAULT_RWA_THRESHOLD = 0.1
FAST_SCAN_MASS = 0.999999
REGIME_RATIO = 10


@dataclass(frozen=True)
class AggregateScope:
    """All j subspaces of N spins at fixed k."""

    n_spins: int
    k: int


@dataclass(frozen=True)
class MomentReport:
    scope: SubspaceIndex | AggregateScope
    moments: Mapping[int, float]
    state_count: int


class Regime(str, enum.Enum):
    GENERAL = "general"
    LARGE_K = "large_k"
    LARGE_J = "large_j"


@dataclass(frozen=True)
class BoundsReport:
    """Row-sum (Perron-Frobenius) bracket and asymptotic bounds on max Lambda(j,k)."""

    index: SubspaceIndex
    pf_lower: float
    pf_upper: float
    general_bound: float
    large_k_bound: float
    large_j_bound: float
    toeplitz_bound: float
    regime: Regime
    asymptotic_upper: float


@dataclass(frozen=True)
class RwaReport:
    n_spins: int
    k: int
    params: PhysicalParams
    max_lamb: float
    max_shift: float
    ratio: float
    threshold: float
    valid: bool
    twice_j_at_max: int
    naive_ratio: float


@dataclass(frozen=True)
class SlopeFit:
    n_spins: int
    k_range: tuple[int, int]
    slope: float
    intercept: float
    r_squared: float
    truncated: bool = field(default=False)


def _check_order(t: int) -> None:
    if isinstance(t, bool) or not isinstance(t, int) or not 1 <= t <= MAX_MOMENT_ORDER:
        raise DomainError(f"moment order must lie in 1..{MAX_MOMENT_ORDER}, got {t!r}")


def _trace_square_exact(twice_j: int, k_prime: int) -> int:
    # Tr L^2 = 2 sum_alpha alpha (2j+1-alpha)(k'+1-alpha), alpha = 1..dim-1
    n = min(twice_j, k_prime)
    if n <= 0:
        return 0
    s1 = n * (n + 1) // 2
    s2 = n * (n + 1) * (2 * n + 1) // 6
    s3 = s1 * s1
    return 2 * (
        s3 - (twice_j + k_prime + 2) * s2 + (twice_j + 1) * (k_prime + 1) * s1
    )


def _trace_square_grid(twice_j: np.ndarray, k_prime: np.ndarray) -> np.ndarray:
    """Exact int64 Tr L^2 over a (k, j) grid; empty subspaces give 0."""

    n = np.clip(np.minimum(twice_j, k_prime), 0, None)
    s1 = n * (n + 1) // 2
    s2 = n * (n + 1) * (2 * n + 1) // 6
    s3 = s1 * s1
    return 2 * (s3 - (twice_j + k_prime + 2) * s2 + (twice_j + 1) * (k_prime + 1) * s1)


def trace_square(index: SubspaceIndex) -> int:
    """Exact Tr L(j,k)^2 = 2 sum l_alpha^2."""

    if basis_dim(index) == 0:
        build_coupling_matrix(index)  # raises EmptySubspaceError
    return _trace_square_exact(index.twice_j, index.k_prime)


def subspace_moment(
    index: SubspaceIndex, t: int, *, method: Literal["spectrum", "trace"] = "spectrum"
) -> float:
    """<Lambda(j,k)^t> = Tr(L^t) / dim."""

    _check_order(t)
    matrix = build_coupling_matrix(index)
    if t % 2:
        return 0.0
    if method == "trace":
        if t == 2:
            return _trace_square_exact(index.twice_j, index.k_prime) / matrix.dim
        return trace_power(matrix, t) / matrix.dim
    if method != "spectrum":
        raise DomainError(f"unknown moment method {method!r}")
    values = eigenvalues(matrix).eigenvalues
    return math.fsum(values**t) / matrix.dim


def subspace_moment_report(index: SubspaceIndex, t: int) -> MomentReport:
    return MomentReport(
        scope=index,
        moments={t: subspace_moment(index, t)},
        state_count=basis_dim(index),
    )


def subspace_variance_closed_form(index: SubspaceIndex) -> float:
    """Var(Lambda(j,k)) as a polynomial in |B|, j and k', evaluated exactly."""

    dim = basis_dim(index)
    if dim == 0:
        build_coupling_matrix(index)
    b = Fraction(dim)
    j = index.j
    kp = index.k_prime
    variance = (
        b**3 / 2
        - b**2 * (2 * kp + 4 * j + 7) / 3
        + b * (2 * j * kp + 2 * kp + 4 * j + Fraction(7, 2))
        - (6 * j * kp + 8 * j + 4 * kp + 5) / 3
    )
    return float(variance)


def pf_bounds(index: SubspaceIndex) -> BoundsReport:
    dim = basis_dim(index)
    if dim < 2:
        if dim == 0:
            build_coupling_matrix(index)
        return BoundsReport(index, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, Regime.GENERAL, 0.0)

    matrix = build_coupling_matrix(index)
    off = matrix.off_diag
    j = index.twice_j / 2.0
    kp = float(index.k_prime)

    general = 2.0 / math.sqrt(3.0) * math.sqrt((2 * j + kp) * j * kp)
    root_k = math.sqrt(kp)
    large_k = 2.0 * (j * root_k - j**2 / (2 * root_k) + j**4 / (8 * kp**2.5))
    root_j = math.sqrt(j)
    large_j = 2.0 * (
        kp * root_j / math.sqrt(2.0)
        - kp**2 / (8 * math.sqrt(2.0) * root_j)
        + kp**4 / (512 * j**2.5)
    )
    toeplitz = 2.0 * float(np.max(off)) * math.cos(math.pi / (dim + 1))

    if index.k_prime > REGIME_RATIO * index.twice_j:
        regime, asymptotic = Regime.LARGE_K, large_k
    elif index.twice_j > REGIME_RATIO * index.k_prime:
        regime, asymptotic = Regime.LARGE_J, large_j
    else:
        regime, asymptotic = Regime.GENERAL, general

    return BoundsReport(
        index=index,
        pf_lower=float(min(off[0], off[-1])),
        pf_upper=float(np.max(row_sums(matrix))),
        general_bound=general,
        large_k_bound=large_k,
        large_j_bound=large_j,
        toeplitz_bound=toeplitz,
        regime=regime,
        asymptotic_upper=asymptotic,
    )


def max_lamb_shift(
    n_spins: int, k: int, *, executor: Executor | None = None
) -> tuple[float, int]:
    """max over j of the top eigenvalue of L(j,k), and the 2j attaining it."""

    indices = list(iter_subspaces(n_spins, k))
    tops = ordered_map(
        lambda index: largest_eigenvalue(build_coupling_matrix(index)),
        indices,
        executor,
    )
    best = max(range(len(tops)), key=lambda slot: (tops[slot], -slot))
    return tops[best], indices[best].twice_j


def rwa_check(
    n_spins: int,
    k: int,
    params: PhysicalParams,
    threshold: float = DEFAULT_RWA_THRESHOLD,
    *,
    executor: Executor | None = None,
) -> RwaReport:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if not threshold > 0:
        raise DomainError(f"threshold must be positive, got {threshold}")

    max_lamb, twice_j = max_lamb_shift(n_spins, k, executor=executor)
    max_shift = params.g0 * max_lamb
    ratio = max_shift / params.omega0
    return RwaReport(
        n_spins=n_spins,
        k=k,
        params=params,
        max_lamb=max_lamb,
        max_shift=max_shift,
        ratio=ratio,
        threshold=threshold,
        valid=ratio < threshold,
        twice_j_at_max=twice_j,
        naive_ratio=params.effective_coupling(n_spins) / params.omega0,
    )


def rwa_breakdown_k(
    n_spins: int,
    params: PhysicalParams,
    threshold: float = DEFAULT_RWA_THRESHOLD,
    *,
    k_limit: int,
) -> int | None:
    """Smallest k <= k_limit at which the RWA condition fails, else None."""

    for k in range(k_limit + 1):
        if not rwa_check(n_spins, k, params, threshold).valid:
            return k
    return None


def aggregated_moment(
    n_spins: int, k: int, t: int, *, executor: Executor | None = None
) -> MomentReport:
    """(1/D_k) sum_j d_j Tr L(j,k)^t."""

    _check_order(t)
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    scope = AggregateScope(n_spins, k)
    count = states_with_k_excitations(n_spins, k)
    if t % 2:
        return MomentReport(scope, {t: 0.0}, count)

    if t == 2:
        weights = _exact_weights(n_spins)
        return MomentReport(scope, {t: _exact_variance(n_spins, k, weights)}, count)

    indices = list(iter_subspaces(n_spins, k))
    log_count = log_states_with_k_excitations(n_spins, k)
    log_d = log_degeneracies(n_spins)

    def power_sum(index: SubspaceIndex) -> float:
        return math.fsum(eigenvalues(build_coupling_matrix(index)).eigenvalues ** t)

    sums = ordered_map(power_sum, indices, executor)
    moment = math.fsum(
        math.exp(log_d[index.twice_j // 2] - log_count) * value
        for index, value in zip(indices, sums)
    )
    return MomentReport(scope, {t: moment}, count)


def _exact_weights(n_spins: int) -> dict[int, int]:
    return {twice_j: degeneracy(n_spins, twice_j) for twice_j in allowed_twice_j(n_spins)}


def _exact_variance(n_spins: int, k: int, weights: Mapping[int, int]) -> float:
    """(1/D_k) sum_j d_j Tr L(j,k)^2 in integers, rounded once."""

    total = sum(
        d_j * _trace_square_exact(twice_j, k - (n_spins - twice_j) // 2)
        for twice_j, d_j in weights.items()
    )
    return float(Fraction(total, states_with_k_excitations(n_spins, k)))


def _variance_grid(
    n_spins: int, ks: np.ndarray, twice_j_max: int
) -> np.ndarray:
    twice_j = np.arange(n_spins % 2, twice_j_max + 1, 2, dtype=np.int64)
    log_d = log_degeneracies(n_spins)[: len(twice_j)]
    log_counts = np.logaddexp.accumulate(log_binomials(n_spins))
    log_dk = log_counts[np.minimum(ks, n_spins)]

    k_prime = ks[:, None] - (n_spins - twice_j[None, :]) // 2
    traces = _trace_square_grid(twice_j[None, :], k_prime).astype(np.float64)
    weights = np.exp(log_d[None, :] - log_dk[:, None])
    return np.sum(weights * traces, axis=1)


def variance_scan(
    n_spins: int,
    k_max: int,
    *,
    k_min: int = 0,
    fast: bool = False,
    support_mass: float = FAST_SCAN_MASS,
) -> list[tuple[int, float]]:
    """Aggregated variance <Lambda(k)^2> for k = k_min..k_max.

    ``fast`` keeps only the j-window carrying ``support_mass`` of all spin
    states, which for large N drops every j beyond a few sqrt(N).
    Full scans up to EXACT_LIMIT spins are summed in integers and rounded once
    per k; the others are weighted in the log domain.
    """

    if n_spins < 1:
        raise DomainError(f"n_spins must be positive, got {n_spins}")
    if k_min < 0 or k_max < k_min:
        raise DomainError(f"invalid k range [{k_min}, {k_max}]")

    twice_j_max = n_spins
    if fast:
        twice_j_max = strong_support(n_spins, support_mass).twice_j_max
    _logger.debug(
        "variance scan N=%d k=%d..%d over 2j<=%d", n_spins, k_min, k_max, twice_j_max
    )

    if not fast and n_spins <= EXACT_LIMIT:
        weights = _exact_weights(n_spins)
        return [
            (k, _exact_variance(n_spins, k, weights)) for k in range(k_min, k_max + 1)
        ]

    ks = np.arange(k_min, k_max + 1, dtype=np.int64)
    variances = _variance_grid(n_spins, ks, twice_j_max)
    return [(int(k), float(v)) for k, v in zip(ks, variances)]


def slope_fit(
    n_spins: int,
    k_lo: int | None = None,
    k_hi: int | None = None,
    *,
    fast: bool = False,
    support_mass: float = FAST_SCAN_MASS,
) -> SlopeFit:
    """Least-squares line through the aggregated variance on [k_lo, k_hi]."""

    k_lo = n_spins if k_lo is None else k_lo
    k_hi = 3 * n_spins if k_hi is None else k_hi
    if k_lo < 0:
        raise DomainError(f"k_lo must be non-negative, got {k_lo}")
    if k_hi <= k_lo + 10:
        raise DomainError(f"k range [{k_lo}, {k_hi}] is too short for a fit")
    if k_lo < n_spins:
        _logger.warning(
            "fitting from k=%d below N=%d, where linearity is not guaranteed",
            k_lo,
            n_spins,
        )

    scan = variance_scan(
        n_spins, k_hi, k_min=k_lo, fast=fast, support_mass=support_mass
    )
    ks, variances = zip(*scan)
    fit = linregress(ks, variances)
    return SlopeFit(
        n_spins=n_spins,
        k_range=(k_lo, k_hi),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=min(1.0, max(0.0, float(fit.rvalue) ** 2)),
        truncated=fast,
    )


def linear_regime_slope(n_spins: int) -> Fraction:
    """d/dk of the aggregated variance once k >= N, (4/3) sum_j d_j j(j+1)(2j+1) / 2^N."""

    # j(j+1)(2j+1) = 2j(2j+1)(2j+2) / 4
    total = sum(
        degeneracy(n_spins, twice_j) * twice_j * (twice_j + 1) * (twice_j + 2)
        for twice_j in allowed_twice_j(n_spins)
    )
    return Fraction(total, 3 * 2**n_spins)


def linear_onset(n_spins: int) -> float:
    """k = N/2 + j*, after which the bulk of the subspaces vary linearly in k."""
    return n_spins / 2.0 + j_star_asymptotic(n_spins)
