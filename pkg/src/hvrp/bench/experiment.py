"""Experiment drivers: solve every instance of a suite and collect report rows."""

import logging
from collections.abc import Callable
from pathlib import Path

import numpy as np

from hvrp.bench.baselines import BaselineResult, kmeans10, nda_assign, route_nda
from hvrp.bench.report import ReportRow, aggregate, optional_gap
from hvrp.bench.suites import SuiteInstance, perturb_instance, suite_instances
from hvrp.clrp.solve import clrp_solve
from hvrp.config.schema import Config, SolverConfig
from hvrp.core.exceptions import InfeasibleError
from hvrp.datagen.labeling import spawn_seeds
from hvrp.estimators.base import CostEstimator
from hvrp.ga.population import load_excess
from hvrp.ga.solve import SolveResult, solve_mdvrp
from hvrp.instances.types import ClrpInstance, MdvrpInstance

logger = logging.getLogger(__name__)


def run_seed(root: int, index: int, repeat: int) -> int:
    """Seed of one run, derived from the suite seed, instance index and repeat."""
    return int(np.random.SeedSequence([root, index, repeat]).generate_state(1)[0])


def _solve(
    item: SuiteInstance, estimator: CostEstimator, seed: int, config: Config
) -> SolveResult:
    ga = config.ga.model_copy(update={"rng_seed": seed})
    if isinstance(item.instance, ClrpInstance):
        return clrp_solve(
            item.instance, estimator, ga, config.clrp, config.solver, config.buckets
        )
    return solve_mdvrp(item.instance, estimator, ga, config.solver, config.buckets)


def _kmeans(
    instance: MdvrpInstance, seed: int, config: Config
) -> BaselineResult | None:
    try:
        return kmeans10(instance, seed, config.solver, config.bench.kmeans_restarts)
    except InfeasibleError as e:
        logger.warning("K-Means baseline infeasible on %s: %s", instance.name, e)
        return None


def run_experiment(
    suite: str,
    repeats: int,
    estimator: CostEstimator,
    config: Config | None = None,
    directory: str | Path | None = None,
    include_kmeans: bool = True,
    on_run: Callable[[], None] | None = None,
    items: list[SuiteInstance] | None = None,
) -> list[ReportRow]:
    """Solve each suite instance ``repeats`` times and report against baselines.

    MDVRP instances are compared with the routed nearest-depot assignment
    (once per instance) and with K-Means-10 (once per repeat); CLRP instances
    are compared with their best-known cost only.

    Args:
        suite: Suite name
        repeats: Runs per instance
        estimator: Routing-cost predictor used by the GA
        config: Settings; ``bench.rng_seed`` roots every run seed
        directory: Instance directory for file suites
        include_kmeans: Whether to run the K-Means baseline
        on_run: Called after every finished run
        items: Instances already loaded by ``suite_instances``

    Returns:
        ``run`` rows followed by ``average`` and ``best`` rows per instance;
        empty for an empty suite

    Raises:
        UsageError: If the suite is unknown or needs a directory
        FileIOError: If instance files cannot be read
    """
    config = config or Config()
    if items is None:
        items = suite_instances(suite, config.bench, directory)
    logger.info("Suite %s: %d instances x %d repeats", suite, len(items), repeats)
    runs: list[ReportRow] = []
    for index, item in enumerate(items):
        instance = item.instance
        mdvrp = not isinstance(instance, ClrpInstance)
        nda = route_nda(instance, config.solver) if mdvrp else None
        if mdvrp and nda is None:
            logger.info("Nearest-depot assignment of %s is infeasible", instance.name)
        for repeat in range(repeats):
            seed = run_seed(config.bench.rng_seed, index, repeat)
            result = _solve(item, estimator, seed, config)
            kmeans = _kmeans(instance, seed, config) if mdvrp and include_kmeans else None
            runs.append(
                ReportRow(
                    kind="run",
                    suite=suite,
                    instance=instance.name or f"{suite}-{index}",
                    n_customers=instance.n_customers,
                    n_depots=instance.n_depots,
                    repeat=repeat,
                    seed=seed,
                    predicted_cost=result.predicted_cost,
                    cost=result.total_cost,
                    nda_cost=None if nda is None else nda.cost,
                    kmeans_cost=None if kmeans is None else kmeans.cost,
                    best_known=item.best_known,
                    g_n=optional_gap(result.total_cost, None if nda is None else nda.cost),
                    g_k=optional_gap(
                        result.total_cost, None if kmeans is None else kmeans.cost
                    ),
                    g_v=optional_gap(result.total_cost, item.best_known),
                    gancp_time=result.gancp_time,
                    finalize_time=result.routing_time,
                    kmeans_time=None if kmeans is None else kmeans.elapsed,
                )
            )
            logger.debug(
                "%s repeat %d: cost=%.3f", instance.name, repeat, result.total_cost
            )
            if on_run is not None:
                on_run()
    return runs + aggregate(runs)


def nda_infeasibility_rate(
    instance: MdvrpInstance,
    count: int,
    seed: int,
    solver_config: SolverConfig | None = None,
    route: bool = False,
) -> float:
    """Share of perturbed copies whose nearest-depot assignment is infeasible.

    Without ``route`` only the fleet capacity of each depot is checked; with it
    the assignment is also routed and a failed fleet-limited routing counts.

    Args:
        instance: The MDVRP to perturb
        count: Number of perturbed copies
        seed: Root seed of the perturbations
        solver_config: Routing settings when ``route`` is set
        route: Whether to route feasible-looking assignments

    Returns:
        Fraction in [0, 1]; 0 for ``count`` 0
    """
    if count == 0:
        return 0.0
    infeasible = 0
    for copy_seed in spawn_seeds(seed, count):
        copy = perturb_instance(instance, copy_seed)
        if route:
            infeasible += route_nda(copy, solver_config) is None
            continue
        genes = nda_assign(copy)
        infeasible += bool(
            load_excess(genes[None, :], copy.demands, copy.depot_capacity_limits)[0] > 0
        )
    return infeasible / count
