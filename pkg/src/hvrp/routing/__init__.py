"""CVRP solving: savings + local search heuristic and an exact oracle."""

from hvrp.routing.assignment import route_assignment
from hvrp.routing.exact import MAX_EXACT_CUSTOMERS, solve_exact, subset_costs
from hvrp.routing.heuristic import batch_size_for, solve_heuristic, time_limit_for
from hvrp.routing.solution import (
    CvrpReport,
    CvrpResult,
    cvrp_report,
    evaluate_solution,
    make_result,
)

__all__ = [
    "MAX_EXACT_CUSTOMERS",
    "CvrpReport",
    "CvrpResult",
    "batch_size_for",
    "cvrp_report",
    "evaluate_solution",
    "make_result",
    "route_assignment",
    "solve_exact",
    "solve_heuristic",
    "subset_costs",
    "time_limit_for",
]
