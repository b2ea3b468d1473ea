"""Right tails of products of independent Poisson variables."""

from ._core import (
    NoConvergence,
    brute_force_tail,
    coarse_log_tail,
    exact_tail,
    expansion_log_tail,
    heuristic_two_term_m,
    lambert_w0,
    laplace_tail,
    log_factorial,
    log_poisson_pmf,
    log_poisson_sf,
    mc_tail,
    region_bounds,
    run_cli,
    solve_saddle,
    truncation_gap,
)

__all__ = [
    "NoConvergence",
    "brute_force_tail",
    "coarse_log_tail",
    "exact_tail",
    "expansion_log_tail",
    "heuristic_two_term_m",
    "lambert_w0",
    "laplace_tail",
    "log_factorial",
    "log_poisson_pmf",
    "log_poisson_sf",
    "mc_tail",
    "region_bounds",
    "run_cli",
    "solve_saddle",
    "truncation_gap",
]
