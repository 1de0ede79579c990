"""Power-law random 2-SAT: configuration-model generator, exact solver, span search."""

from _plsat import (  # noqa: F401
    DistSpec,
    Formula,
    FormulaStats,
    decide,
    generate,
    parse_dimacs,
    riemann_zeta,
    solve_beta0,
    threshold_side,
    tspan_search,
)

__all__ = [
    "DistSpec",
    "Formula",
    "FormulaStats",
    "decide",
    "generate",
    "parse_dimacs",
    "riemann_zeta",
    "solve_beta0",
    "threshold_side",
    "tspan_search",
]
