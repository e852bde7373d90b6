# Typer reads these annotations at registration; keep them as real objects.
from typing import Annotated, Optional

import typer

from ..config import Command, RunConfig
from ..dos import DEFAULT_BINS
from ..stats import DEFAULT_RWA_THRESHOLD
from .app import LambShiftApp

app = LambShiftApp(
    name="lambshift",
    help="Collective Lamb shifts of the Tavis-Cummings model by (j,k) subspace.",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)

N = Annotated[int, typer.Option("--n", help="Number of spins N.")]
K = Annotated[int, typer.Option("--k", help="Total excitation number k.")]
KMax = Annotated[int, typer.Option("--k-max", help="Largest k of the scan.")]
TwiceJ = Annotated[int, typer.Option("--twice-j", help="Twice the total angular momentum, 2j.")]
OmegaOverG = Annotated[
    float, typer.Option("--omega-over-g", help="Ratio omega0/g0 of cavity frequency to coupling.")
]
SupportMass = Annotated[
    Optional[float],
    typer.Option("--support-mass", help="State mass kept by the truncated j window."),
]
Fast = Annotated[
    bool, typer.Option("--fast", help="Restrict the j sum to the strong-support window.")
]


@app.command(help="Eigenvalues of L(j,k) in units of g0, ascending.")
def spectrum(n: N, twice_j: TwiceJ, k: K) -> RunConfig:
    return RunConfig(Command.SPECTRUM, n=n, twice_j=twice_j, k=k)


@app.command(help="Multiplicity d_j of every total angular momentum j.")
def degeneracy(n: N, support_mass: SupportMass = None) -> RunConfig:
    return RunConfig(Command.DEGENERACY, n=n, support_mass=support_mass)


@app.command(help="The maximally degenerate j and its asymptotic estimate.")
def jstar(n: N) -> RunConfig:
    return RunConfig(Command.JSTAR, n=n)


@app.command(help="Degeneracy-averaged Lamb-shift variance for each k.")
def variance_scan(
    n: N,
    k_max: KMax,
    k_min: Annotated[int, typer.Option("--k-min", help="Smallest k of the scan.")] = 0,
    fast: Fast = False,
    support_mass: SupportMass = None,
) -> RunConfig:
    return RunConfig(
        Command.VARIANCE_SCAN,
        n=n,
        k_min=k_min,
        k_max=k_max,
        fast=fast,
        support_mass=support_mass,
    )


@app.command(help="Least-squares slope of the averaged variance in k (default k in [N, 3N]).")
def slope(
    n: N,
    k_min: Annotated[Optional[int], typer.Option("--k-min", help="Fit start (default N).")] = None,
    k_max: Annotated[Optional[int], typer.Option("--k-max", help="Fit end (default 3N).")] = None,
    fast: Fast = False,
    support_mass: SupportMass = None,
) -> RunConfig:
    return RunConfig(
        Command.SLOPE,
        n=n,
        k_min=k_min,
        k_max=k_max,
        fast=fast,
        support_mass=support_mass,
    )


@app.command(help="Broadened density of states over clusters k = 0..k_max (energies in omega0).")
def dos(
    n: N,
    k_max: KMax,
    omega_over_g: OmegaOverG,
    bins: Annotated[int, typer.Option("--bins", help="Histogram bins.")] = DEFAULT_BINS,
    sigma: Annotated[
        Optional[float], typer.Option("--sigma", help="Gaussian width in omega0 (default 1e-3).")
    ] = None,
) -> RunConfig:
    return RunConfig(
        Command.DOS,
        n=n,
        k_max=k_max,
        omega_over_g=omega_over_g,
        bins=bins,
        sigma=sigma,
    )


@app.command(help="Row-sum and asymptotic bounds on the largest eigenvalue of L(j,k).")
def bounds(n: N, twice_j: TwiceJ, k: K) -> RunConfig:
    return RunConfig(Command.BOUNDS, n=n, twice_j=twice_j, k=k)


@app.command(help="Whether g0 * max Lambda(k) stays well below omega0.")
def rwa_check(
    n: N,
    k: K,
    omega_over_g: OmegaOverG,
    threshold: Annotated[
        float, typer.Option("--threshold", help="Largest allowed g0*maxLambda/omega0.")
    ] = DEFAULT_RWA_THRESHOLD,
) -> RunConfig:
    return RunConfig(
        Command.RWA_CHECK, n=n, k=k, omega_over_g=omega_over_g, threshold=threshold
    )


@app.command(help="Compare subspace spectra with closed forms (N <= 3) or dense diagonalisation.")
def oracle_check(
    n: N,
    k_max: KMax,
    k_min: Annotated[int, typer.Option("--k-min", help="First k to check.")] = 0,
) -> RunConfig:
    return RunConfig(Command.ORACLE_CHECK, n=n, k_min=k_min, k_max=k_max)


@app.command(help="Gap between neighbouring excitation clusters; negative means overlap.")
def gaps(n: N, k_max: KMax, omega_over_g: OmegaOverG) -> RunConfig:
    return RunConfig(Command.GAPS, n=n, k_max=k_max, omega_over_g=omega_over_g)


@app.command(help="Moment <Lambda^t> of one subspace, or averaged over j without --twice-j.")
def moment(
    n: N,
    k: K,
    order: Annotated[int, typer.Option("--order", help="Moment order t (1..12).")] = 2,
    twice_j: Annotated[Optional[int], typer.Option("--twice-j", help="Restrict to one j.")] = None,
) -> RunConfig:
    return RunConfig(Command.MOMENT, n=n, k=k, order=order, twice_j=twice_j)


def main() -> None:
    app()
