"""Routing the best candidates and the end-to-end MDVRP solve."""

import dataclasses
import logging
import time
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field

from hvrp.config.schema import DEFAULT_BUCKETS, GaConfig, SizeBucket, SolverConfig
from hvrp.core.exceptions import InfeasibleError
from hvrp.estimators.base import CostEstimator
from hvrp.ga.evolve import Candidates, evolve
from hvrp.ga.operators import nearest_depot_assignment
from hvrp.ga.problem import AssignmentProblem
from hvrp.instances.types import MdvrpInstance, Route, RoutingSolution
from hvrp.routing import route_assignment, time_limit_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FinalSolution:
    """The cheapest routed candidate."""

    assignment: np.ndarray
    predicted_cost: float
    solution: RoutingSolution
    routed: int

    @property
    def total_cost(self) -> float:
        """Routing plus opening costs."""
        return self.solution.total_cost


def finalize(
    problem: AssignmentProblem,
    candidates: Candidates,
    config: GaConfig | None = None,
    solver_config: SolverConfig | None = None,
    buckets: list[SizeBucket] | None = None,
) -> FinalSolution:
    """Route the top candidates and keep the cheapest actual solution.

    The first ``top_k`` candidates are routed, plus the nearest-depot
    assignment when ``inject_nda`` is set and it respects the depot limits.
    Every subproblem gets the time limit of the N/D size bucket. The limit
    bounds routing only under ``stop_mode="time"``; in iterations mode each
    subproblem runs ``max_iterations`` iterations whatever its bucket. Candidates
    with load above a depot limit, or whose routing exceeds a fleet limit, are
    skipped.

    Args:
        problem: Search space the candidates came from
        candidates: Ranked candidates
        config: GA settings (top_k, inject_nda)
        solver_config: CVRP solver settings
        buckets: Size buckets for the time limit

    Returns:
        Cheapest routed candidate

    Raises:
        InfeasibleError: If no candidate could be routed feasibly
    """
    config = config or GaConfig()
    instance = problem.instance
    size = instance.n_customers / instance.n_depots
    solver = (solver_config or SolverConfig()).model_copy(
        update={"time_limit": time_limit_for(size, buckets or DEFAULT_BUCKETS)}
    )

    pool = [
        (candidates.genes[i], float(candidates.costs[i]), float(candidates.overloads[i]))
        for i in range(min(config.top_k, len(candidates)))
    ]
    if config.inject_nda:
        nda = nearest_depot_assignment(instance)
        overload = float(problem.overloads(nda[None, :])[0])
        if overload == 0 and not any(np.array_equal(nda, genes) for genes, _, _ in pool):
            pool.append((nda, float(problem.estimated_costs(nda[None, :])[0]), overload))

    best: FinalSolution | None = None
    for rank, (genes, predicted, overload) in enumerate(pool):
        if overload > 0:
            logger.debug("Candidate %d skipped: load above depot limits", rank)
            continue
        try:
            solution = route_assignment(instance, genes, solver)
        except InfeasibleError as e:
            logger.debug("Candidate %d infeasible at routing: %s", rank, e)
            continue
        solution = dataclasses.replace(solution, opening_cost=problem.extra_cost(solution))
        logger.debug(
            "Candidate %d: predicted=%.4f actual=%.4f",
            rank,
            predicted,
            solution.total_cost,
        )
        if best is None or solution.total_cost < best.total_cost:
            best = FinalSolution(genes, predicted, solution, routed=0)
    if best is None:
        raise InfeasibleError(
            f"none of the {len(pool)} candidates could be routed within the "
            "depot and fleet limits",
            bound="fleet_limit",
        )
    return dataclasses.replace(best, routed=len(pool))


class RouteRecord(BaseModel):
    """One vehicle route of a solution."""

    depot: int
    customers: list[int]
    load: int
    cost: float


class SolveResult(BaseModel):
    """Solution of an MDVRP run.

    Timings are kept out of the serialized form so equal runs produce equal
    JSON.
    """

    instance: str
    n_customers: int
    n_depots: int
    seed: int
    assignment: list[int]
    routes: list[RouteRecord]
    predicted_cost: float
    routing_cost: float
    total_cost: float
    n_routes: int
    generations: int
    candidates_routed: int
    gancp_time: float = Field(default=0.0, exclude=True)
    routing_time: float = Field(default=0.0, exclude=True)

    def to_solution(self) -> RoutingSolution:
        """Rebuild the per-depot routes."""
        per_depot: list[list[Route]] = [[] for _ in range(self.n_depots)]
        for record in self.routes:
            per_depot[record.depot].append(
                Route(tuple(record.customers), record.load, record.cost)
            )
        return RoutingSolution(
            routes=tuple(tuple(routes) for routes in per_depot),
            opening_cost=self.total_cost - self.routing_cost,
        )


def route_records(solution: RoutingSolution) -> list[RouteRecord]:
    """Flatten per-depot routes into records."""
    return [
        RouteRecord(
            depot=depot,
            customers=list(route.customers),
            load=route.load,
            cost=route.cost,
        )
        for depot, routes in enumerate(solution.routes)
        for route in routes
    ]


def run_pipeline(
    problem: AssignmentProblem,
    config: GaConfig,
    solver_config: SolverConfig | None,
    buckets: list[SizeBucket] | None,
) -> tuple[Candidates, FinalSolution, float, float]:
    """Evolve then finalize, timing both stages."""
    start = time.perf_counter()
    candidates = evolve(problem, config)
    gancp_time = time.perf_counter() - start
    final = finalize(problem, candidates, config, solver_config, buckets)
    return candidates, final, gancp_time, time.perf_counter() - start - gancp_time


def solve_mdvrp(
    instance: MdvrpInstance,
    estimator: CostEstimator,
    config: GaConfig | None = None,
    solver_config: SolverConfig | None = None,
    buckets: list[SizeBucket] | None = None,
) -> SolveResult:
    """Solve an MDVRP: evolve assignments on predicted costs, then route.

    Args:
        instance: The MDVRP
        estimator: Routing-cost predictor for subproblems
        config: GA settings
        solver_config: CVRP solver settings for the final routing
        buckets: Size buckets for routing time limits

    Returns:
        Routed solution with predicted and actual costs

    Raises:
        InfeasibleError: If no candidate could be routed feasibly
    """
    config = config or GaConfig()
    problem = AssignmentProblem(instance, estimator)
    candidates, final, gancp_time, routing_time = run_pipeline(
        problem, config, solver_config, buckets
    )
    logger.info(
        "Solved %s: predicted=%.3f actual=%.3f generations=%d",
        instance.name or "mdvrp",
        final.predicted_cost,
        final.total_cost,
        candidates.generations,
    )
    return SolveResult(
        instance=instance.name,
        n_customers=instance.n_customers,
        n_depots=instance.n_depots,
        seed=config.rng_seed,
        assignment=[int(g) for g in final.assignment],
        routes=route_records(final.solution),
        predicted_cost=final.predicted_cost,
        routing_cost=final.solution.routing_cost,
        total_cost=final.total_cost,
        n_routes=final.solution.n_routes,
        generations=candidates.generations,
        candidates_routed=final.routed,
        gancp_time=gancp_time,
        routing_time=routing_time,
    )
