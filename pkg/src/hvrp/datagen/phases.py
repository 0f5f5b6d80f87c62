"""Training-data regimes for the cost predictor.

Phase 1 labels random CVRPs. Phase 2 labels depot subproblems of random MDVRPs
cut by the targeted assignment rules, some of them perturbed. Phase 3 alternates
GA runs with the current predictor, labeling of the best candidates'
subproblems, and retraining, in a fixed number of steps.
"""

import logging

import numpy as np

from hvrp.config.schema import (
    DatagenConfig,
    GaConfig,
    PredictorConfig,
    SizeBucket,
    SolverConfig,
    TrainConfig,
)
from hvrp.core.exceptions import UsageError
from hvrp.datagen.dataset import (
    Dataset,
    DatasetManifest,
    SampleKind,
    SampleRecord,
    StepSummary,
    kind_counts,
    make_record,
)
from hvrp.datagen.labeling import label_instances, spawn_seeds
from hvrp.ga.evolve import evolve
from hvrp.ga.operators import nearest_depot_assignment, neighbor_depot_assignment
from hvrp.ga.problem import AssignmentProblem
from hvrp.instances.decompose import subproblem
from hvrp.instances.generators import generate_cvrp, generate_mdvrp
from hvrp.instances.types import (
    CvrpInstance,
    DemandModel,
    InstanceSpec,
    MdvrpInstance,
    Positioning,
)
from hvrp.neural.estimator import NeuralEstimator
from hvrp.neural.model import PredictorModel, create_model
from hvrp.neural.training import train

logger = logging.getLogger(__name__)


def _labeled(
    instances: list[CvrpInstance],
    kinds: list[SampleKind],
    seeds: list[int],
    solver_config: SolverConfig,
    workers: int,
    start: int = 0,
    step: int | None = None,
) -> list[SampleRecord]:
    labels = label_instances(instances, solver_config, workers)
    return [
        make_record(start + i, instance, label, kind, seed, step)
        for i, (instance, label, kind, seed) in enumerate(
            zip(instances, labels, kinds, seeds, strict=True)
        )
    ]


def random_cvrp(
    seed: int,
    size_range: tuple[int, int],
    grid_size: int = 1000,
    positioning: Positioning = "R",
    demand_model: DemandModel = "uniform",
) -> CvrpInstance:
    """One random CVRP with N drawn from ``size_range``."""
    spec = InstanceSpec(
        n_customers=size_range,
        positioning=positioning,
        demand_model=demand_model,
        grid_size=grid_size,
        seed=seed,
    )
    return generate_cvrp(spec)


def random_mdvrp(seed: int, config: DatagenConfig) -> MdvrpInstance:
    """Random MDVRP whose N/D falls in the configured subproblem size range."""
    rng = np.random.default_rng(seed)
    low, high = config.depot_range
    n_depots = int(rng.integers(max(2, low), max(2, high) + 1))
    size = int(rng.integers(config.size_range[0], config.size_range[1] + 1))
    spec = InstanceSpec(
        n_customers=(size * n_depots, size * n_depots),
        n_depots=(n_depots, n_depots),
        grid_size=config.grid_size,
        seed=seed,
    )
    return generate_mdvrp(spec)


def perturb_assignment(
    genes: np.ndarray, n_depots: int, max_fraction: float, rng: np.random.Generator
) -> tuple[np.ndarray, int]:
    """Move between one customer and ``max_fraction`` of them to other depots.

    Returns:
        (perturbed copy, number of customers moved)
    """
    genes = np.array(genes, dtype=np.int64)
    limit = max(1, int(np.floor(max_fraction * len(genes))))
    count = int(rng.integers(1, limit + 1))
    positions = rng.choice(len(genes), size=count, replace=False)
    genes[positions] = (genes[positions] + rng.integers(1, n_depots, size=count)) % n_depots
    return genes, count


def _depot_subproblem(
    instance: MdvrpInstance, genes: np.ndarray, rng: np.random.Generator
) -> CvrpInstance:
    depot = int(rng.choice(np.unique(genes)))
    return subproblem(
        instance, depot, np.flatnonzero(genes == depot), with_fleet_limit=False
    )


def phase1(
    count: int,
    size_range: tuple[int, int],
    seed: int,
    solver_config: SolverConfig | None = None,
    config: DatagenConfig | None = None,
    workers: int = 1,
) -> Dataset:
    """Label ``count`` random-position CVRPs with N drawn from ``size_range``.

    Args:
        count: Number of instances
        size_range: Inclusive customer-count range
        seed: Root seed; instance seeds are spawned from it
        solver_config: Labeling solver settings
        config: Datagen settings (grid size)
        workers: Labeling processes

    Returns:
        Dataset of ``random`` records
    """
    solver_config = solver_config or SolverConfig()
    config = (config or DatagenConfig()).model_copy(update={"size_range": size_range})
    seeds = spawn_seeds(seed, count)
    instances = [random_cvrp(s, size_range, config.grid_size) for s in seeds]
    records = _labeled(instances, ["random"] * count, seeds, solver_config, workers)
    logger.info("Phase 1: labeled %d instances", count)
    return Dataset(
        manifest=DatasetManifest(
            phase="1",
            seed=seed,
            count=count,
            kinds=kind_counts(records),
            solver=solver_config,
            datagen=config,
        ),
        records=records,
    )


def phase2_instance(seed: int, config: DatagenConfig) -> tuple[CvrpInstance, SampleKind]:
    """Draw one phase-2 subproblem and its kind.

    With probability ``targeted_share`` a random MDVRP is split by the nearest
    depot or nearest neighbor's nearest depot rule, and with probability
    ``perturbed_share`` that assignment is perturbed first; one depot's
    subproblem is returned. Otherwise a phase-1 style random CVRP is returned.
    """
    rng = np.random.default_rng([seed, 2])
    if rng.random() >= config.targeted_share:
        return random_cvrp(seed, config.size_range, config.grid_size), "random"
    instance = random_mdvrp(seed, config)
    rule = nearest_depot_assignment if rng.random() < 0.5 else neighbor_depot_assignment
    genes = rule(instance)
    kind: SampleKind = "targeted"
    if rng.random() < config.perturbed_share:
        genes, _ = perturb_assignment(
            genes, instance.n_depots, config.perturb_max_fraction, rng
        )
        kind = "perturbed"
    return _depot_subproblem(instance, genes, rng), kind


def phase2(
    count: int,
    seed: int,
    solver_config: SolverConfig | None = None,
    config: DatagenConfig | None = None,
    workers: int = 1,
) -> Dataset:
    """Label ``count`` targeted-assignment subproblems and random CVRPs.

    Returns:
        Dataset of ``targeted``, ``perturbed`` and ``random`` records
    """
    solver_config = solver_config or SolverConfig()
    config = config or DatagenConfig()
    seeds = spawn_seeds(seed, count)
    drawn = [phase2_instance(s, config) for s in seeds]
    records = _labeled(
        [instance for instance, _ in drawn],
        [kind for _, kind in drawn],
        seeds,
        solver_config,
        workers,
    )
    logger.info("Phase 2: labeled %d instances %s", count, kind_counts(records))
    return Dataset(
        manifest=DatasetManifest(
            phase="2",
            seed=seed,
            count=count,
            kinds=kind_counts(records),
            solver=solver_config,
            datagen=config,
        ),
        records=records,
    )


def candidate_subproblems(
    instance: MdvrpInstance,
    model: PredictorModel,
    ga_config: GaConfig,
    top: int,
    buckets: list[SizeBucket] | None = None,
) -> list[CvrpInstance]:
    """Depot subproblems of the ``top`` best GA candidates, without repeats."""
    problem = AssignmentProblem(instance, NeuralEstimator(model, buckets))
    candidates = evolve(problem, ga_config)
    seen: set[tuple[int, bytes]] = set()
    subproblems = []
    for genes in candidates.genes[:top]:
        for depot in np.unique(genes):
            members = np.flatnonzero(genes == depot)
            key = (int(depot), members.tobytes())
            if key not in seen:
                seen.add(key)
                subproblems.append(
                    subproblem(instance, int(depot), members, with_fleet_limit=False)
                )
    return subproblems


def step_sizes(total: int, steps: int) -> list[int]:
    """Samples per bootstrap step; the last step takes the remainder."""
    base = total // steps
    return [base] * (steps - 1) + [total - base * (steps - 1)]


def phase3(
    total_count: int,
    seed: int,
    solver_config: SolverConfig | None = None,
    config: DatagenConfig | None = None,
    ga_config: GaConfig | None = None,
    predictor_config: PredictorConfig | None = None,
    train_config: TrainConfig | None = None,
    init: PredictorModel | None = None,
    buckets: list[SizeBucket] | None = None,
    workers: int = 1,
) -> tuple[Dataset, PredictorModel]:
    """Bootstrap training data with the GA in the loop.

    Each of ``phase3_steps`` steps runs the GA with the current predictor on
    fresh random MDVRPs, labels the subproblems of the ``phase3_top`` best
    candidates until the step's share of ``total_count`` is reached, and
    retrains on all samples so far, warm-starting from the previous weights.
    The first step uses ``init`` or a randomly initialized predictor.

    Returns:
        (dataset, predictor after the last step)

    Raises:
        UsageError: If there are fewer samples than bootstrap steps
    """
    solver_config = solver_config or SolverConfig()
    config = config or DatagenConfig()
    ga_config = ga_config or GaConfig()
    if total_count < config.phase3_steps:
        raise UsageError(
            f"phase 3 needs at least one sample per step, got {total_count} for "
            f"{config.phase3_steps} steps"
        )
    train_config = train_config or TrainConfig()
    model = init if init is not None else create_model(predictor_config, seed=seed)

    records: list[SampleRecord] = []
    summaries = []
    instance_seeds = iter(spawn_seeds(seed, 10 * total_count + 10))
    for step, size in enumerate(step_sizes(total_count, config.phase3_steps), start=1):
        instances: list[CvrpInstance] = []
        seeds: list[int] = []
        while len(instances) < size:
            instance_seed = next(instance_seeds)
            mdvrp = random_mdvrp(instance_seed, config)
            ga = ga_config.model_copy(update={"rng_seed": instance_seed})
            found = candidate_subproblems(mdvrp, model, ga, config.phase3_top, buckets)
            found = found[: size - len(instances)]
            instances.extend(found)
            seeds.extend([instance_seed] * len(found))
        records.extend(
            _labeled(
                instances,
                ["gancp"] * len(instances),
                seeds,
                solver_config,
                workers,
                start=len(records),
                step=step,
            )
        )
        model, history = train(
            [(r.to_instance(), r.label) for r in records],
            train_config,
            init=model,
            buckets=buckets,
        )
        best = next(
            (e for e in history.epochs if e.epoch == history.best_epoch), None
        )
        summaries.append(
            StepSummary(
                step=step,
                samples=len(instances),
                val_mape=None if best is None else best.val_mape,
            )
        )
        logger.info(
            "Phase 3 step %d/%d: %d samples, %d total",
            step,
            config.phase3_steps,
            len(instances),
            len(records),
        )

    manifest = DatasetManifest(
        phase="3",
        seed=seed,
        count=len(records),
        kinds=kind_counts(records),
        solver=solver_config,
        datagen=config,
        steps=summaries,
    )
    return Dataset(manifest=manifest, records=records), model


def phase_distribution(
    count: int,
    positioning: Positioning,
    demand_model: DemandModel,
    seed: int,
    solver_config: SolverConfig | None = None,
    config: DatagenConfig | None = None,
    workers: int = 1,
) -> Dataset:
    """Label CVRPs of one customer-position and demand class for fine-tuning.

    Returns:
        Dataset of ``distribution`` records
    """
    solver_config = solver_config or SolverConfig()
    config = config or DatagenConfig()
    seeds = spawn_seeds(seed, count)
    instances = [
        random_cvrp(s, config.size_range, config.grid_size, positioning, demand_model)
        for s in seeds
    ]
    records = _labeled(instances, ["distribution"] * count, seeds, solver_config, workers)
    logger.info(
        "Distribution %s/%s: labeled %d instances", positioning, demand_model, count
    )
    return Dataset(
        manifest=DatasetManifest(
            phase="distribution",
            seed=seed,
            count=count,
            kinds=kind_counts(records),
            solver=solver_config,
            datagen=config,
            positioning=positioning,
            demand_model=demand_model,
        ),
        records=records,
    )
