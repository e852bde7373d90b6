"""Degeneracy combinatorics of the collective angular momentum subspaces.

``d_j`` counts the copies of the spin-j irreducible block inside (C^2)^N.
Exact integers are used wherever they are needed for identities; the log-gamma
path covers scans at N in the thousands.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

import numpy as np
from scipy.optimize import brentq
from scipy.special import digamma, gammaln, logsumexp

from .errors import DomainError
from .subspace import allowed_twice_j

_logger = logging.getLogger(__name__)

EXACT_LIMIT = 256


def _check_twice_j(n_spins: int, twice_j: int) -> None:
    if n_spins < 1:
        raise DomainError(f"n_spins must be positive, got {n_spins}")
    if not 0 <= twice_j <= n_spins or (n_spins - twice_j) % 2:
        raise DomainError(f"twice_j={twice_j} is not allowed for N={n_spins}")


def degeneracy(n_spins: int, twice_j: int) -> int:
    """Exact d_j = N! (2j+1) / ((N/2 - j)! (N/2 + j + 1)!)."""

    _check_twice_j(n_spins, twice_j)
    upper = (n_spins + twice_j) // 2
    return math.comb(n_spins, upper) * (twice_j + 1) // (upper + 1)


def log_degeneracy(n_spins: int, twice_j: int) -> float:
    _check_twice_j(n_spins, twice_j)
    return float(log_degeneracies(n_spins)[twice_j // 2])


def log_degeneracies(n_spins: int) -> np.ndarray:
    """log d_j for every allowed 2j, aligned with ``allowed_twice_j(n_spins)``."""

    twice_j = np.asarray(allowed_twice_j(n_spins), dtype=np.float64)
    return (
        gammaln(n_spins + 1.0)
        + np.log(twice_j + 1.0)
        - gammaln((n_spins - twice_j) / 2.0 + 1.0)
        - gammaln((n_spins + twice_j) / 2.0 + 2.0)
    )


def states_with_k_excitations(n_spins: int, k: int) -> int:
    """D_k, the number of spin-cavity states holding exactly k excitations."""

    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    return sum(math.comb(n_spins, m) for m in range(min(k, n_spins) + 1))


def log_binomials(n_spins: int) -> np.ndarray:
    m = np.arange(n_spins + 1, dtype=np.float64)
    return gammaln(n_spins + 1.0) - gammaln(m + 1.0) - gammaln(n_spins - m + 1.0)


def log_states_with_k_excitations(n_spins: int, k: int) -> float:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    return float(logsumexp(log_binomials(n_spins)[: min(k, n_spins) + 1]))


@dataclass(frozen=True)
class DegeneracyEntry:
    exact_count: int | None
    log_count: float


@dataclass(frozen=True)
class DegeneracyTable:
    """d_j for every allowed j at fixed N, keyed by 2j."""

    n_spins: int
    entries: Mapping[int, DegeneracyEntry]

    def weighted_total(self) -> int | None:
        """Sum of (2j+1) d_j; 2**N when the table is exact, None otherwise."""

        if any(entry.exact_count is None for entry in self.entries.values()):
            return None
        return sum(
            (twice_j + 1) * entry.exact_count
            for twice_j, entry in self.entries.items()
        )

    def fraction(self, twice_j: int) -> float:
        """d_j / 2^N."""
        entry = self.entries[twice_j]
        return math.exp(entry.log_count - self.n_spins * math.log(2.0))


def degeneracy_table(n_spins: int) -> DegeneracyTable:
    logs = log_degeneracies(n_spins)
    exact = n_spins <= EXACT_LIMIT
    entries = {
        twice_j: DegeneracyEntry(
            exact_count=degeneracy(n_spins, twice_j) if exact else None,
            log_count=float(log_count),
        )
        for twice_j, log_count in zip(allowed_twice_j(n_spins), logs)
    }
    table = DegeneracyTable(n_spins=n_spins, entries=MappingProxyType(entries))
    if exact and table.weighted_total() != 2**n_spins:
        raise ArithmeticError(f"degeneracy identity failed for N={n_spins}")
    return table


def j_star_exact(n_spins: int) -> int:
    """2j of the maximally degenerate subspace; ties go to the smaller j."""

    if n_spins < 1:
        raise DomainError(f"n_spins must be positive, got {n_spins}")
    twice_j = n_spins % 2
    while twice_j + 2 <= n_spins and _next_is_larger(n_spins, twice_j):
        twice_j += 2
    return twice_j


def _next_is_larger(n_spins: int, twice_j: int) -> bool:
    # d_{j+1} / d_j = (2j+3)(N/2-j) / ((2j+1)(N/2+j+2))
    return (twice_j + 3) * (n_spins - twice_j) > (twice_j + 1) * (
        n_spins + twice_j + 4
    )


def j_star_asymptotic(n_spins: int) -> float:
    if n_spins < 1:
        raise DomainError(f"n_spins must be positive, got {n_spins}")
    root = math.sqrt(n_spins)
    return root / 2.0 - 0.5 + 1.0 / (6.0 * root)


def j_star_continuous(n_spins: int) -> float:
    """Critical point of d_j continued to real j through the gamma function."""

    if n_spins < 1:
        raise DomainError(f"n_spins must be positive, got {n_spins}")
    half = n_spins / 2.0

    def stationarity(j: float) -> float:
        # H_x = digamma(x + 1) + euler_gamma; the constant cancels in the difference
        harmonic_gap = digamma(half - j + 1.0) - digamma(half + j + 1.0)
        return 0.5 * (2 * j + 1) * (n_spins + 2 * j + 2) * harmonic_gap + n_spins + 1

    return float(brentq(stationarity, 0.0, half))


def adjacent_ratio(n_spins: int, twice_j: int) -> float:
    """d_j / d_{j+1}, evaluated in the log domain."""

    _check_twice_j(n_spins, twice_j)
    if twice_j + 2 > n_spins:
        raise DomainError(f"j+1 does not exist for N={n_spins}, twice_j={twice_j}")
    logs = log_degeneracies(n_spins)
    slot = twice_j // 2
    return math.exp(logs[slot] - logs[slot + 1])


@dataclass(frozen=True)
class SupportWindow:
    """Smallest j-window from j_min carrying at least ``mass`` of all 2^N states."""

    n_spins: int
    mass: float
    twice_j_max: int
    captured: float


def strong_support(n_spins: int, mass: float) -> SupportWindow:
    if not 0.0 < mass <= 1.0:
        raise DomainError(f"mass must lie in (0, 1], got {mass}")
    if mass >= 1.0:
        return SupportWindow(n_spins, mass, twice_j_max=n_spins, captured=1.0)

    twice_js = list(allowed_twice_j(n_spins))
    if n_spins <= EXACT_LIMIT:
        target = Fraction(mass) * 2**n_spins
        cumulative = 0
        for twice_j in twice_js:
            cumulative += (twice_j + 1) * degeneracy(n_spins, twice_j)
            if cumulative >= target:
                return SupportWindow(
                    n_spins, mass, twice_j, captured=cumulative / 2**n_spins
                )
        raise ArithmeticError(f"cumulative mass never reached {mass} for N={n_spins}")

    fractions = np.exp(
        np.log(np.asarray(twice_js, dtype=np.float64) + 1.0)
        + log_degeneracies(n_spins)
        - n_spins * math.log(2.0)
    )
    cumulative = np.cumsum(fractions)
    slot = int(np.searchsorted(cumulative, mass, side="left"))
    slot = min(slot, len(twice_js) - 1)
    _logger.debug(
        "support window N=%d mass=%g -> 2j<=%d", n_spins, mass, twice_js[slot]
    )
    return SupportWindow(
        n_spins, mass, twice_js[slot], captured=float(cumulative[slot])
    )


def max_degeneracy_fraction(n_spins: int) -> float:
    """max_j d_j / 2^N."""

    twice_j = j_star_exact(n_spins)
    return math.exp(log_degeneracy(n_spins, twice_j) - n_spins * math.log(2.0))
