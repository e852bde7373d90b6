"""Degeneracy-weighted density of states with Gaussian broadening."""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .degeneracy import EXACT_LIMIT, degeneracy, log_degeneracies
from .errors import DomainError
from .parallel import ordered_map
from .stats import max_lamb_shift
from .subspace import PhysicalParams, build_coupling_matrix, iter_subspaces
from .tridiag import eigenvalues

_logger = logging.getLogger(__name__)

DEFAULT_SIGMA = 1e-3
DEFAULT_BINS = 1000
MIN_BINS = 10
TAIL_WIDTHS = 8


@dataclass(frozen=True, eq=False)
class ClusterLevels:
    """Dressed energies k*omega0 + lambda*g0 of one excitation cluster, weighted by d_j."""

    k: int
    energies: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def lowest(self) -> float:
        return float(np.min(self.energies))

    @property
    def highest(self) -> float:
        return float(np.max(self.energies))


@dataclass(frozen=True, eq=False)
class DOSHistogram:
    n_spins: int
    params: PhysicalParams
    k_max: int
    bin_edges: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    broadening_sigma: float

    @property
    def bin_centers(self) -> np.ndarray:
        return (self.bin_edges[:-1] + self.bin_edges[1:]) / 2.0

    def total_weight(self) -> float:
        return math.fsum(self.weights)


def _weight(n_spins: int, twice_j: int, log_d: np.ndarray) -> float:
    if n_spins <= EXACT_LIMIT:
        return float(degeneracy(n_spins, twice_j))
    return float(np.exp(log_d[twice_j // 2]))


def cluster_levels(n_spins: int, k: int, params: PhysicalParams) -> ClusterLevels:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    log_d = log_degeneracies(n_spins)
    energies: list[np.ndarray] = []
    weights: list[np.ndarray] = []
    for index in iter_subspaces(n_spins, k):
        spectrum = eigenvalues(build_coupling_matrix(index)).eigenvalues
        energies.append(k * params.omega0 + params.g0 * spectrum)
        weights.append(np.full(len(spectrum), _weight(n_spins, index.twice_j, log_d)))
    return ClusterLevels(k=k, energies=np.concatenate(energies), weights=np.concatenate(weights))


def _deposit(
    hist: np.ndarray, edges: np.ndarray, energies: np.ndarray, weights: np.ndarray, sigma: float
) -> None:
    bins = len(hist)
    lo, width = edges[0], edges[1] - edges[0]
    reach = TAIL_WIDTHS * sigma
    # kernel truncated at +-8 sigma and renormalised so every level deposits exactly its weight
    norm = ndtr(TAIL_WIDTHS) - ndtr(-TAIL_WIDTHS)

    span = int(math.ceil(2 * reach / width)) + 3
    first = np.floor((energies - reach - lo) / width).astype(np.int64) - 1
    first = np.clip(first, 0, bins - 1)
    cols = first[:, None] + np.arange(span)[None, :]
    inside = cols < bins
    cols = np.minimum(cols, bins - 1)

    centre = energies[:, None]
    left = np.maximum(edges[cols], centre - reach)
    right = np.maximum(np.minimum(edges[cols + 1], centre + reach), left)
    mass = (ndtr((right - centre) / sigma) - ndtr((left - centre) / sigma)) / norm
    mass = np.where(inside, mass, 0.0)
    np.add.at(hist, cols, mass * weights[:, None])


def build_dos(
    n_spins: int,
    k_max: int,
    params: PhysicalParams,
    bins: int = DEFAULT_BINS,
    sigma: float | None = None,
    *,
    executor: Executor | None = None,
) -> DOSHistogram:
    """n(E) over clusters k = 0..k_max, deposited with a normalised Gaussian of width sigma."""

    if k_max < 0:
        raise DomainError(f"k_max must be non-negative, got {k_max}")
    if bins < MIN_BINS:
        raise DomainError(f"bins must be at least {MIN_BINS}, got {bins}")
    sigma = DEFAULT_SIGMA * params.omega0 if sigma is None else sigma
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError(f"sigma must be positive, got {sigma}")

    clusters = ordered_map(
        lambda k: cluster_levels(n_spins, k, params), range(k_max + 1), executor
    )
    energies = np.concatenate([cluster.energies for cluster in clusters])
    weights = np.concatenate([cluster.weights for cluster in clusters])

    lo = float(np.min(energies)) - TAIL_WIDTHS * sigma
    hi = float(np.max(energies)) + TAIL_WIDTHS * sigma
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise DomainError(f"empty energy range [{lo}, {hi}]")

    edges = np.linspace(lo, hi, bins + 1)
    hist = np.zeros(bins)
    _logger.debug(
        "depositing %d levels into %d bins over [%g, %g]", len(energies), bins, lo, hi
    )
    _deposit(hist, edges, energies, weights, sigma)

    edges.setflags(write=False)
    hist.setflags(write=False)
    return DOSHistogram(
        n_spins=n_spins,
        params=params,
        k_max=k_max,
        bin_edges=edges,
        weights=hist,
        broadening_sigma=sigma,
    )


def cluster_gaps(
    n_spins: int,
    k_max: int,
    params: PhysicalParams,
    *,
    executor: Executor | None = None,
) -> list[tuple[int, float]]:
    """Distance from the top of cluster k to the bottom of cluster k+1; negative means overlap."""

    if k_max < 1:
        raise DomainError(f"k_max must be at least 1, got {k_max}")
    tops = [
        max_lamb_shift(n_spins, k, executor=executor)[0] for k in range(k_max + 1)
    ]
    omega0, g0 = params.omega0, params.g0
    return [
        (k, (k + 1) * omega0 - g0 * tops[k + 1] - (k * omega0 + g0 * tops[k]))
        for k in range(k_max)
    ]
