"""Multiobjective Frank-Wolfe solver: descent over norm balls and polytopes.

Thin wrapper around the C++ core.  The main entry points are
``quadratic_objective`` + ``norm_ball``/``l1_ball``/``polytope`` to describe a
problem, ``run`` to solve it, and ``run_preset`` for the packaged benchmarks.
"""

from ._core import (
    FeasibleSet,
    IterateRecord,
    MinMaxResult,
    Objective,
    RunHistory,
    cli_main,
    contains,
    euclidean_diameter,
    evaluate,
    grid_oracle_minmax,
    l1_ball,
    lmo,
    norm_ball,
    objective_gradients,
    polytope,
    preset,
    preset_names,
    quadratic_objective,
    run,
    run_preset,
    smoothness_constant,
    solve_minmax,
    strong_convexity_constant,
    theta_tilde,
)

__version__ = "0.1.0"

__all__ = [
    "FeasibleSet",
    "IterateRecord",
    "MinMaxResult",
    "Objective",
    "RunHistory",
    "cli_main",
    "contains",
    "euclidean_diameter",
    "evaluate",
    "grid_oracle_minmax",
    "l1_ball",
    "lmo",
    "norm_ball",
    "objective_gradients",
    "polytope",
    "preset",
    "preset_names",
    "quadratic_objective",
    "run",
    "run_preset",
    "smoothness_constant",
    "solve_minmax",
    "strong_convexity_constant",
    "theta_tilde",
]
