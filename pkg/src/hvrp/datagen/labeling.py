"""Label CVRP instances with the heuristic solver, optionally in a process pool."""

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from hvrp.config.schema import SolverConfig
from hvrp.instances.types import CvrpInstance
from hvrp.routing import solve_heuristic

logger = logging.getLogger(__name__)


def _label(job: tuple[CvrpInstance, SolverConfig]) -> float:
    instance, config = job
    return solve_heuristic(instance, config).cost


def label_instances(
    instances: Sequence[CvrpInstance],
    solver_config: SolverConfig | None = None,
    workers: int = 1,
) -> list[float]:
    """Routing cost of every instance, in order.

    Labels do not depend on ``workers``: every solve uses the same seeded
    solver settings.

    Args:
        instances: Instances to label
        solver_config: Solver settings
        workers: Worker processes; 1 labels in this process

    Returns:
        One cost per instance
    """
    config = solver_config or SolverConfig()
    jobs = [(instance, config) for instance in instances]
    if workers <= 1 or len(jobs) < 2:
        return [_label(job) for job in jobs]
    chunksize = max(1, len(jobs) // (workers * 4))
    logger.debug("Labeling %d instances on %d workers", len(jobs), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_label, jobs, chunksize=chunksize))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Independent child seeds of a root seed."""
    return [
        int(child.generate_state(1)[0])
        for child in np.random.SeedSequence(seed).spawn(count)
    ]
