"""Feasibility checks for complete multi-depot solutions."""

import math

import numpy as np

from hvrp.core.exceptions import FeasibilityError
from hvrp.instances.types import ClrpInstance, MdvrpInstance, RoutingSolution

_COST_TOLERANCE = 1e-9


def tour_length(points: np.ndarray, depot: np.ndarray, customers: list[int]) -> float:
    """Closed-tour Euclidean length depot -> customers -> depot."""
    if not customers:
        return 0.0
    path = np.vstack([depot[None, :], points[customers], depot[None, :]])
    return float(np.linalg.norm(np.diff(path, axis=0), axis=1).sum())


def routing_solution_cost(instance: MdvrpInstance, solution: RoutingSolution) -> float:
    """Recompute the routing cost of a solution from coordinates."""
    return sum(
        tour_length(instance.coords, instance.depots[depot], list(route.customers))
        for depot, routes in enumerate(solution.routes)
        for route in routes
    )


def opening_cost(instance: ClrpInstance, solution: RoutingSolution) -> float:
    """Depot opening costs of the serving depots plus route costs."""
    serving = [depot for depot, routes in enumerate(solution.routes) if routes]
    return float(
        instance.opening_costs[serving].sum()
        + instance.route_cost * solution.n_routes
    )


def check_solution(instance: MdvrpInstance, solution: RoutingSolution) -> float:
    """Validate a solution and return its recomputed total cost.

    Checks, in order: one route list per depot, valid customer indices, no
    customer visited twice, route loads within Q and equal to their demand,
    fleet sizes, coverage of every customer, CLRP depot capacities, and that
    every reported route cost matches its recomputed tour length.

    Args:
        instance: MDVRP or CLRP instance
        solution: Solution to check

    Returns:
        Recomputed total cost (routing plus opening costs for CLRP)

    Raises:
        FeasibilityError: On the first violated constraint
    """
    if len(solution.routes) != instance.n_depots:
        raise FeasibilityError(
            f"solution has {len(solution.routes)} depots, instance has "
            f"{instance.n_depots}",
            constraint="depot",
        )
    seen = np.zeros(instance.n_customers, dtype=bool)
    loads = np.zeros(instance.n_depots)
    total = 0.0
    for depot, routes in enumerate(solution.routes):
        limit = instance.fleet_limit(depot)
        if limit is not None and len(routes) > limit:
            raise FeasibilityError(
                f"depot {depot} uses {len(routes)} vehicles, limit is {limit}",
                constraint="fleet",
            )
        for route in routes:
            customers = list(route.customers)
            for customer in customers:
                if not 0 <= customer < instance.n_customers:
                    raise FeasibilityError(
                        f"customer {customer} does not exist", constraint="index"
                    )
                if seen[customer]:
                    raise FeasibilityError(
                        f"customer {customer} is visited twice",
                        constraint="duplicate",
                    )
                seen[customer] = True
            load = int(instance.demands[customers].sum())
            if load > instance.capacity:
                raise FeasibilityError(
                    f"route load {load} at depot {depot} exceeds capacity "
                    f"{instance.capacity}",
                    constraint="capacity",
                )
            if load != route.load:
                raise FeasibilityError(
                    f"route reports load {route.load}, recomputed {load}",
                    constraint="capacity",
                )
            cost = tour_length(instance.coords, instance.depots[depot], customers)
            if not math.isclose(cost, route.cost, rel_tol=_COST_TOLERANCE, abs_tol=1e-9):
                raise FeasibilityError(
                    f"route reports cost {route.cost}, recomputed {cost}",
                    constraint="cost",
                )
            loads[depot] += load
            total += cost

    if not seen.all():
        missing = np.flatnonzero(~seen)
        raise FeasibilityError(
            f"{missing.size} customers are not served (first: {int(missing[0])})",
            constraint="coverage",
        )

    if isinstance(instance, ClrpInstance):
        over = np.flatnonzero(loads > instance.depot_capacities)
        if over.size:
            raise FeasibilityError(
                f"depot {int(over[0])} load {loads[over[0]]:.0f} exceeds its "
                f"capacity {instance.depot_capacities[over[0]]:.0f}",
                constraint="depot_capacity",
            )
        total += opening_cost(instance, solution)
    return total
