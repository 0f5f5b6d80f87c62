"""Benchmark suites: generated protocols and instance directories."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, get_args

import numpy as np
import pandas as pd

from hvrp.config.schema import BenchConfig
from hvrp.core.exceptions import FileIOError, UsageError
from hvrp.datagen.labeling import spawn_seeds
from hvrp.instances.generators import generate_mdvrp
from hvrp.instances.io import AnyInstance, read_instance
from hvrp.instances.types import DemandModel, InstanceSpec, MdvrpInstance, Positioning

logger = logging.getLogger(__name__)

SuiteName = Literal[
    "T", "O", "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "cordeau", "barreto"
]

SUITES: tuple[str, ...] = get_args(SuiteName)

D_CLASSES: dict[str, tuple[Positioning, DemandModel]] = {
    "D1": ("C", "uniform"),
    "D2": ("RC", "uniform"),
    "D3": ("R", "unitary"),
    "D4": ("R", "quadrant"),
    "D5": ("C", "unitary"),
    "D6": ("C", "quadrant"),
    "D7": ("RC", "unitary"),
    "D8": ("RC", "quadrant"),
}

DEPOT_RANGE = (2, 10)
SUBPROBLEM_RANGE = (50, 500)
BKS_FILE = "bks.csv"


@dataclass(frozen=True, eq=False)
class SuiteInstance:
    """An instance of a suite with its best-known cost, if any."""

    instance: AnyInstance
    best_known: float | None = None


def in_range_depots(n: int, rng: np.random.Generator) -> int | None:
    """A depot count in [2, 10] keeping N/D within [50, 500], or None."""
    low = max(DEPOT_RANGE[0], math.ceil(n / SUBPROBLEM_RANGE[1]))
    high = min(DEPOT_RANGE[1], n // SUBPROBLEM_RANGE[0])
    if low > high:
        return None
    return int(rng.integers(low, high + 1))


def _sizes_in_range(seed: int, config: BenchConfig) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    for _ in range(100):
        n = int(rng.integers(config.customer_range[0], config.customer_range[1] + 1))
        depots = in_range_depots(n, rng)
        if depots is not None:
            return n, depots
    raise UsageError(
        f"customer range {config.customer_range} admits no depot count with "
        f"N/D in {SUBPROBLEM_RANGE}"
    )


def _sizes_out_of_range(seed: int, config: BenchConfig) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    large_possible = config.customer_range[1] > 2 * SUBPROBLEM_RANGE[1]
    if large_possible and rng.random() < 0.5:
        low = max(config.customer_range[0], 2 * SUBPROBLEM_RANGE[1] + 1)
        return int(rng.integers(low, config.customer_range[1] + 1)), 2
    depots = int(rng.integers(DEPOT_RANGE[0], DEPOT_RANGE[1] + 1))
    return int(rng.integers(2 * depots, SUBPROBLEM_RANGE[0] * depots)), depots


def generated_instance(suite: str, seed: int, config: BenchConfig) -> MdvrpInstance:
    """One instance of a generated suite.

    T and D1..D8 keep N/D within [50, 500]; O draws N/D outside it.

    Raises:
        UsageError: If the suite is not generated
    """
    if suite == "O":
        n, depots = _sizes_out_of_range(seed, config)
        positioning, demand = "R", "uniform"
    elif suite == "T" or suite in D_CLASSES:
        n, depots = _sizes_in_range(seed, config)
        positioning, demand = D_CLASSES.get(suite, ("R", "uniform"))
    else:
        raise UsageError(f"suite {suite} is read from files, not generated")
    spec = InstanceSpec(
        n_customers=(n, n),
        n_depots=(depots, depots),
        positioning=positioning,
        demand_model=demand,
        seed=seed,
    )
    instance = generate_mdvrp(spec)
    return MdvrpInstance(
        depots=instance.depots,
        coords=instance.coords,
        demands=instance.demands,
        capacity=instance.capacity,
        fleet_sizes=instance.fleet_sizes,
        name=f"{suite}-{instance.name}",
    )


def read_best_known(path: Path) -> dict[str, float]:
    """Best-known costs by instance name from a ``name,cost`` CSV.

    Raises:
        FileIOError: If the file cannot be parsed
    """
    try:
        frame = pd.read_csv(path, dtype={"name": str})
        return {str(n): float(c) for n, c in zip(frame["name"], frame["cost"], strict=True)}
    except (OSError, KeyError, ValueError) as e:
        raise FileIOError(f"Failed to read best-known costs {path}: {e}") from e


def directory_instances(
    directory: str | Path, kind: Literal["cordeau", "barreto"]
) -> list[SuiteInstance]:
    """Every instance file of a directory, sorted by name.

    Hidden files and ``bks.csv`` are skipped; names missing from ``bks.csv``
    get no best-known cost.

    Raises:
        FileIOError: If the directory does not exist
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileIOError(f"Benchmark directory not found: {directory}")
    bks_path = directory / BKS_FILE
    best_known = read_best_known(bks_path) if bks_path.exists() else {}
    items = []
    for path in sorted(directory.iterdir()):
        if not path.is_file() or path.name.startswith(".") or path.name == BKS_FILE:
            continue
        instance = read_instance(path, kind=kind)
        items.append(SuiteInstance(instance, best_known.get(instance.name or path.stem)))
    return items


def suite_instances(
    suite: str,
    config: BenchConfig | None = None,
    directory: str | Path | None = None,
) -> list[SuiteInstance]:
    """Instances of a suite.

    Generated suites draw ``instances_per_suite`` instances from seeds spawned
    from ``rng_seed``; file suites read ``directory``.

    Raises:
        UsageError: If the suite is unknown or a file suite has no directory
    """
    config = config or BenchConfig()
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite}; choose from {', '.join(SUITES)}")
    if suite in ("cordeau", "barreto"):
        if directory is None:
            raise UsageError(f"suite {suite} needs an instance directory")
        return directory_instances(directory, suite)  # type: ignore[arg-type]
    root = spawn_seeds(config.rng_seed, len(SUITES))[SUITES.index(suite)]
    return [
        SuiteInstance(generated_instance(suite, seed, config))
        for seed in spawn_seeds(root, config.instances_per_suite)
    ]


def perturb_instance(
    instance: MdvrpInstance,
    seed: int,
    coord_noise: float = 0.05,
    demand_noise: float = 0.2,
) -> MdvrpInstance:
    """Copy of an MDVRP with jittered customer positions and demands.

    Coordinates move by up to ``coord_noise`` of the bounding-box extent per
    axis; demands scale by a factor in ``1 +- demand_noise``, rounded and kept
    within [1, Q]. Demands are scaled down when the fleets could no longer
    carry them.
    """
    rng = np.random.default_rng(seed)
    extent = instance.coords.max(axis=0) - instance.coords.min(axis=0)
    coords = instance.coords + rng.uniform(-1, 1, size=instance.coords.shape) * (
        coord_noise * extent
    )
    factors = rng.uniform(1 - demand_noise, 1 + demand_noise, size=instance.n_customers)
    demands = np.clip(np.rint(instance.demands * factors), 1, instance.capacity)
    if instance.fleet_sizes is not None:
        fleet_capacity = int(instance.fleet_sizes.sum()) * instance.capacity
        if demands.sum() > fleet_capacity:
            demands = np.clip(
                np.floor(demands * fleet_capacity / demands.sum()), 1, instance.capacity
            )
    return MdvrpInstance(
        depots=instance.depots,
        coords=coords,
        demands=demands.astype(np.int64),
        capacity=instance.capacity,
        fleet_sizes=instance.fleet_sizes,
        name=f"{instance.name}~{seed}",
    )
