"""Savings + local search CVRP heuristic."""

import logging
import math
import time

import numpy as np

from hvrp.config.schema import SizeBucket, SolverConfig, bucket_for
from hvrp.core.exceptions import InfeasibleError
from hvrp.instances.types import CvrpInstance
from hvrp.routing.local_search import LocalSearch, reduce_routes, ruin_and_recreate
from hvrp.routing.savings import savings_tours
from hvrp.routing.solution import CvrpResult, make_result, tour_cost

logger = logging.getLogger(__name__)


def time_limit_for(size: float, buckets: list[SizeBucket]) -> float:
    """Routing time limit for an approximate subproblem size N/D."""
    return bucket_for(size, buckets).time_limit


def batch_size_for(size: float, buckets: list[SizeBucket]) -> int:
    """Predictor batch limit for an approximate subproblem size N/D."""
    return bucket_for(size, buckets).batch_size


def _total(d: list[list[float]], tours: list[list[int]]) -> float:
    return math.fsum(tour_cost(d, tour) for tour in tours)


def solve_heuristic(
    instance: CvrpInstance, config: SolverConfig | None = None
) -> CvrpResult:
    """Solve a CVRP with savings construction and iterated local search.

    The first iteration builds classic savings tours (lambda = 1). Later
    iterations perturb the incumbent by ruin-and-recreate; after
    ``restart_after`` consecutive non-improving iterations the search restarts
    from savings tours with lambda drawn from ``savings_lambda``. Every
    iteration ends with local search and, under a fleet limit, route
    elimination.

    With ``stop_mode="iterations"`` exactly ``max_iterations`` iterations run
    and the result depends only on the instance and ``rng_seed``; with
    ``stop_mode="time"`` iterations continue until ``time_limit`` seconds pass.

    Args:
        instance: The CVRP
        config: Solver settings (defaults when None)

    Returns:
        Best solution found

    Raises:
        InfeasibleError: If the fleet limit cannot carry the demand or no
            solution within the fleet limit was found
    """
    config = config or SolverConfig()
    start = time.perf_counter()
    limit = instance.fleet_limit
    if limit is not None and instance.min_vehicles > limit:
        raise InfeasibleError(
            f"demand {instance.total_demand} needs at least "
            f"{instance.min_vehicles} vehicles of capacity {instance.capacity}, "
            f"fleet limit is {limit}",
            bound="fleet_limit",
        )

    rng = np.random.default_rng(config.rng_seed)
    demands = instance.node_demands
    q = [int(v) for v in demands]
    search = LocalSearch(
        instance.distances,
        demands,
        instance.capacity,
        limit,
        config.local_search_ops,
        rng,
    )
    d = search.d

    best: list[list[int]] | None = None
    best_cost = math.inf
    current: list[list[int]] | None = None
    current_cost = math.inf
    stalled = 0
    iteration = 0
    while True:
        if current is None or stalled >= config.restart_after:
            shape = 1.0 if iteration == 0 else float(rng.uniform(*config.savings_lambda))
            tours = savings_tours(instance.distances, demands, instance.capacity, shape)
            current, current_cost, stalled = None, math.inf, 0
        else:
            tours = ruin_and_recreate(d, q, instance.capacity, current, limit, rng)

        if limit is not None and len(tours) > limit:
            reduced = reduce_routes(d, q, instance.capacity, tours, limit)
            tours = reduced if reduced is not None else tours
        tours = search.run(tours)
        if limit is not None and len(tours) > limit:
            reduced = reduce_routes(d, q, instance.capacity, tours, limit)
            if reduced is not None:
                tours = search.run(reduced)

        if limit is None or len(tours) <= limit:
            cost = _total(d, tours)
            if cost < current_cost - 1e-9:
                current, current_cost = tours, cost
                stalled = 0
            else:
                stalled += 1
            if cost < best_cost - 1e-9:
                best, best_cost = tours, cost
        else:
            stalled += 1

        iteration += 1
        if config.stop_mode == "iterations":
            if iteration >= config.max_iterations:
                break
        elif time.perf_counter() - start >= config.time_limit:
            break

    if best is None:
        raise InfeasibleError(
            f"no solution with at most {limit} routes was found",
            bound="fleet_limit",
        )
    elapsed = time.perf_counter() - start
    logger.debug(
        "Solved %s: n=%d cost=%.3f routes=%d iterations=%d",
        instance.name or "cvrp",
        instance.n_customers,
        best_cost,
        len(best),
        iteration,
    )
    return make_result(instance, best, elapsed)
