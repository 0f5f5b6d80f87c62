"""End-to-end location-routing solve."""

import logging

from hvrp.clrp.problem import ClrpProblem
from hvrp.config.schema import ClrpConfig, GaConfig, SizeBucket, SolverConfig
from hvrp.estimators.base import CostEstimator
from hvrp.ga.solve import SolveResult, route_records, run_pipeline, solve_mdvrp
from hvrp.instances.types import ClrpInstance

logger = logging.getLogger(__name__)


class ClrpSolveResult(SolveResult):
    """Solution of a CLRP run with its location layer."""

    open_depots: list[int]
    opening_cost: float


def clrp_ga_config(config: GaConfig, clrp_config: ClrpConfig) -> GaConfig:
    """GA settings with the CLRP weights and targeted-mutation share."""
    return config.model_copy(
        update={
            "w1": clrp_config.w1,
            "w2": clrp_config.w2,
            "w3": clrp_config.w3,
            "targeted_fraction": clrp_config.targeted_fraction,
        }
    )


def _location_free(
    instance: ClrpInstance,
    estimator: CostEstimator,
    config: GaConfig,
    solver_config: SolverConfig | None,
    buckets: list[SizeBucket] | None,
) -> ClrpSolveResult:
    result = solve_mdvrp(instance.as_mdvrp(), estimator, config, solver_config, buckets)
    used = sorted({record.depot for record in result.routes})
    return ClrpSolveResult(
        **result.model_dump(),
        gancp_time=result.gancp_time,
        routing_time=result.routing_time,
        open_depots=used,
        opening_cost=0.0,
    )


def clrp_solve(
    instance: ClrpInstance,
    estimator: CostEstimator,
    config: GaConfig | None = None,
    clrp_config: ClrpConfig | None = None,
    solver_config: SolverConfig | None = None,
    buckets: list[SizeBucket] | None = None,
) -> ClrpSolveResult:
    """Solve a CLRP with the assignment GA and CLRP fitness, then route.

    Instances where opening depots and routes is free and no depot capacity
    binds are solved as the MDVRP they reduce to, with the GA settings
    unchanged.

    Args:
        instance: The CLRP
        estimator: Routing-cost predictor for subproblems
        config: GA settings
        clrp_config: CLRP weights and mutation settings
        solver_config: CVRP solver settings for the final routing
        buckets: Size buckets for routing time limits

    Returns:
        Routed solution; total cost is routing plus opening costs

    Raises:
        InfeasibleError: If the depots cannot carry the demand or no candidate
            could be routed feasibly
    """
    config = config or GaConfig()
    if instance.is_location_free:
        logger.debug("%s has no location costs, solving as MDVRP", instance.name)
        return _location_free(instance, estimator, config, solver_config, buckets)

    clrp_config = clrp_config or ClrpConfig()
    problem = ClrpProblem(instance, estimator, clrp_config.random_mutations)
    candidates, final, gancp_time, routing_time = run_pipeline(
        problem, clrp_ga_config(config, clrp_config), solver_config, buckets
    )
    solution = final.solution
    opened = [depot for depot, routes in enumerate(solution.routes) if routes]
    logger.info(
        "Solved %s: open=%s routes=%d total=%.3f",
        instance.name or "clrp",
        opened,
        solution.n_routes,
        solution.total_cost,
    )
    return ClrpSolveResult(
        instance=instance.name,
        n_customers=instance.n_customers,
        n_depots=instance.n_depots,
        seed=config.rng_seed,
        assignment=[int(g) for g in final.assignment],
        routes=route_records(solution),
        predicted_cost=final.predicted_cost,
        routing_cost=solution.routing_cost,
        total_cost=solution.total_cost,
        n_routes=solution.n_routes,
        generations=candidates.generations,
        candidates_routed=final.routed,
        gancp_time=gancp_time,
        routing_time=routing_time,
        open_depots=opened,
        opening_cost=solution.opening_cost,
    )
