"""Route every depot of a multi-depot assignment."""

import numpy as np

from hvrp.config.schema import SolverConfig
from hvrp.instances.decompose import decompose
from hvrp.instances.types import MdvrpInstance, Route, RoutingSolution
from hvrp.routing.heuristic import solve_heuristic


def route_assignment(
    instance: MdvrpInstance,
    assignment: np.ndarray,
    config: SolverConfig | None = None,
) -> RoutingSolution:
    """Solve the CVRP of every depot of an assignment.

    Args:
        instance: MDVRP or CLRP instance
        assignment: Depot index per customer
        config: Solver settings shared by all subproblems

    Returns:
        Routes per depot, empty for depots without customers

    Raises:
        InfeasibleError: If a depot's fleet cannot serve its customers
    """
    routes: list[tuple[Route, ...]] = [() for _ in range(instance.n_depots)]
    for sub in decompose(instance, assignment):
        result = solve_heuristic(sub, config)
        routes[sub.depot_id] = result.routes
    return RoutingSolution(routes=tuple(routes))
