"""One handler per subcommand, mapping a validated RunConfig to a CommandOutput."""

from __future__ import annotations

from concurrent.futures import Executor
from typing import Callable

from ..config import Command, RunConfig
from ..degeneracy import (
    degeneracy_table,
    j_star_asymptotic,
    j_star_continuous,
    j_star_exact,
    max_degeneracy_fraction,
    strong_support,
)
from ..dos import DEFAULT_BINS, build_dos, cluster_gaps
from ..export import CommandOutput
from ..oracle import check_oracles
from ..stats import (
    DEFAULT_RWA_THRESHOLD,
    FAST_SCAN_MASS,
    aggregated_moment,
    linear_regime_slope,
    pf_bounds,
    rwa_check,
    slope_fit,
    subspace_moment_report,
    variance_scan,
)
from ..subspace import PhysicalParams, SubspaceIndex, build_coupling_matrix
from ..tridiag import eigenvalues, largest_eigenvalue

Handler = Callable[[RunConfig, "Executor | None"], CommandOutput]


def spectrum(config: RunConfig, executor: Executor | None) -> CommandOutput:
    index = SubspaceIndex(config.n, config.twice_j, config.k)
    values = [float(value) for value in eigenvalues(build_coupling_matrix(index)).eigenvalues]
    return CommandOutput(
        document={"n": config.n, "twice_j": config.twice_j, "k": config.k, "eigenvalues": values},
        columns=("eigenvalue",),
        rows=[(value,) for value in values],
    )


def degeneracy(config: RunConfig, executor: Executor | None) -> CommandOutput:
    table = degeneracy_table(config.n)
    entries = [
        {
            "twice_j": twice_j,
            "degeneracy": entry.exact_count,
            "log_degeneracy": entry.log_count,
            "fraction": table.fraction(twice_j),
        }
        for twice_j, entry in table.entries.items()
    ]
    document: dict[str, object] = {"n": config.n, "entries": entries}
    if config.support_mass is not None:
        window = strong_support(config.n, config.support_mass)
        document["support"] = {
            "mass": window.mass,
            "twice_j_max": window.twice_j_max,
            "captured": window.captured,
        }
    return CommandOutput(
        document=document,
        columns=("twice_j", "degeneracy", "log_degeneracy", "fraction"),
        rows=[tuple(entry.values()) for entry in entries],
    )


def jstar(config: RunConfig, executor: Executor | None) -> CommandOutput:
    document = {
        "n": config.n,
        "twice_j_star": j_star_exact(config.n),
        "j_star_asymptotic": j_star_asymptotic(config.n),
        "j_star_continuous": j_star_continuous(config.n),
        "max_degeneracy_fraction": max_degeneracy_fraction(config.n),
    }
    return CommandOutput(
        document=document,
        columns=tuple(document),
        rows=[tuple(document.values())],
    )


def variance(config: RunConfig, executor: Executor | None) -> CommandOutput:
    k_min = config.k_min or 0
    rows = variance_scan(
        config.n,
        config.k_max,
        k_min=k_min,
        fast=config.fast,
        support_mass=config.support_mass or FAST_SCAN_MASS,
    )
    return CommandOutput(
        document={
            "n": config.n,
            "k_min": k_min,
            "k_max": config.k_max,
            "fast": config.fast,
            "rows": [{"k": k, "variance": value} for k, value in rows],
        },
        columns=("k", "variance"),
        rows=rows,
    )


def slope(config: RunConfig, executor: Executor | None) -> CommandOutput:
    fit = slope_fit(
        config.n,
        config.k_min,
        config.k_max,
        fast=config.fast,
        support_mass=config.support_mass or FAST_SCAN_MASS,
    )
    document = {
        "n": fit.n_spins,
        "k_lo": fit.k_range[0],
        "k_hi": fit.k_range[1],
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "exact_slope": float(linear_regime_slope(config.n)),
    }
    return CommandOutput(
        document=document, columns=tuple(document), rows=[tuple(document.values())]
    )


def dos(config: RunConfig, executor: Executor | None) -> CommandOutput:
    params = PhysicalParams.from_ratio(config.omega_over_g)
    histogram = build_dos(
        config.n,
        config.k_max,
        params,
        bins=config.bins or DEFAULT_BINS,
        sigma=config.sigma,
        executor=executor,
    )
    rows = [
        (float(center), float(weight))
        for center, weight in zip(histogram.bin_centers, histogram.weights)
    ]
    return CommandOutput(
        document={
            "n": config.n,
            "k_max": config.k_max,
            "omega_over_g": config.omega_over_g,
            "sigma": histogram.broadening_sigma,
            "bins": [{"center": center, "weight": weight} for center, weight in rows],
        },
        columns=("bin_center", "weight"),
        rows=rows,
    )


def bounds(config: RunConfig, executor: Executor | None) -> CommandOutput:
    index = SubspaceIndex(config.n, config.twice_j, config.k)
    report = pf_bounds(index)
    document = {
        "n": config.n,
        "twice_j": config.twice_j,
        "k": config.k,
        "max_eigenvalue": largest_eigenvalue(build_coupling_matrix(index)),
        "pf_lower": report.pf_lower,
        "pf_upper": report.pf_upper,
        "general_bound": report.general_bound,
        "large_k_bound": report.large_k_bound,
        "large_j_bound": report.large_j_bound,
        "toeplitz_bound": report.toeplitz_bound,
        "regime": report.regime.value,
        "asymptotic_upper": report.asymptotic_upper,
    }
    return CommandOutput(
        document=document, columns=tuple(document), rows=[tuple(document.values())]
    )


def rwa(config: RunConfig, executor: Executor | None) -> CommandOutput:
    params = PhysicalParams.from_ratio(config.omega_over_g)
    threshold = DEFAULT_RWA_THRESHOLD if config.threshold is None else config.threshold
    report = rwa_check(config.n, config.k, params, threshold, executor=executor)
    document = {
        "n": report.n_spins,
        "k": report.k,
        "omega_over_g": config.omega_over_g,
        "threshold": report.threshold,
        "max_lamb": report.max_lamb,
        "max_shift": report.max_shift,
        "ratio": report.ratio,
        "valid": report.valid,
        "twice_j_at_max": report.twice_j_at_max,
        "naive_ratio": report.naive_ratio,
    }
    return CommandOutput(
        document=document, columns=tuple(document), rows=[tuple(document.values())]
    )


def oracle(config: RunConfig, executor: Executor | None) -> CommandOutput:
    k_values = range(config.k_min or 0, config.k_max + 1)
    checks = check_oracles(config.n, k_values)
    rows = [
        (row.k, row.source, row.states, row.max_deviation, row.matches) for row in checks
    ]
    columns = ("k", "source", "states", "max_deviation", "matches")
    mismatched = [row.k for row in checks if not row.matches]
    return CommandOutput(
        document={
            "n": config.n,
            "all_match": all(row.matches for row in checks),
            "rows": [dict(zip(columns, row)) for row in rows],
        },
        columns=columns,
        rows=rows,
        failure=f"reference mismatch at k={mismatched}" if mismatched else None,
    )


def gaps(config: RunConfig, executor: Executor | None) -> CommandOutput:
    params = PhysicalParams.from_ratio(config.omega_over_g)
    rows = cluster_gaps(config.n, config.k_max, params, executor=executor)
    return CommandOutput(
        document={
            "n": config.n,
            "k_max": config.k_max,
            "omega_over_g": config.omega_over_g,
            "rows": [{"k": k, "gap": gap} for k, gap in rows],
        },
        columns=("k", "gap"),
        rows=rows,
    )


def moment(config: RunConfig, executor: Executor | None) -> CommandOutput:
    if config.twice_j is None:
        report = aggregated_moment(config.n, config.k, config.order, executor=executor)
    else:
        index = SubspaceIndex(config.n, config.twice_j, config.k)
        report = subspace_moment_report(index, config.order)
    document = {
        "n": config.n,
        "k": config.k,
        "twice_j": config.twice_j,
        "order": config.order,
        "moment": report.moments[config.order],
        "state_count": report.state_count,
    }
    return CommandOutput(
        document=document, columns=tuple(document), rows=[tuple(document.values())]
    )


HANDLERS: dict[Command, Handler] = {
    Command.SPECTRUM: spectrum,
    Command.DEGENERACY: degeneracy,
    Command.JSTAR: jstar,
    Command.VARIANCE_SCAN: variance,
    Command.SLOPE: slope,
    Command.DOS: dos,
    Command.BOUNDS: bounds,
    Command.RWA_CHECK: rwa,
    Command.ORACLE_CHECK: oracle,
    Command.GAPS: gaps,
    Command.MOMENT: moment,
}
