"""Training-data generation command."""

from typing import Annotated

import typer

from hvrp.commands.common import (
    ConfigOption,
    SeedOption,
    VerboseOption,
    WorkersOption,
    load_config,
)
from hvrp.core.decorators import handle_errors
from hvrp.core.exceptions import UsageError
from hvrp.datagen import (
    phase1,
    phase2,
    phase3,
    phase_distribution,
    save_dataset,
)
from hvrp.neural import load_checkpoint, save_checkpoint
from hvrp.utils.console import spinner, success

PHASES = ("1", "2", "3", "distribution")


@handle_errors
def datagen(
    phase: Annotated[
        str,
        typer.Option("--phase", "-p", help="Data regime: 1, 2, 3 or distribution"),
    ],
    out: Annotated[str, typer.Option("--out", "-o", help="Dataset directory to write")],
    count: Annotated[
        int | None,
        typer.Option("--count", "-n", min=1, help="Number of labeled instances"),
    ] = None,
    min_size: Annotated[
        int | None, typer.Option("--min-size", min=1, help="Smallest customer count")
    ] = None,
    max_size: Annotated[
        int | None, typer.Option("--max-size", min=1, help="Largest customer count")
    ] = None,
    positioning: Annotated[
        str,
        typer.Option("--positioning", help="Distribution phase: R, C or RC"),
    ] = "C",
    demand: Annotated[
        str,
        typer.Option("--demand", help="Distribution phase: unitary, uniform or quadrant"),
    ] = "uniform",
    init: Annotated[
        str,
        typer.Option("--init", help="Phase 3: checkpoint of the starting predictor"),
    ] = "",
    checkpoint_out: Annotated[
        str,
        typer.Option("--checkpoint-out", help="Phase 3: where to save the final predictor"),
    ] = "",
    seed: SeedOption = None,
    workers: WorkersOption = None,
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Generate and label a training dataset for the cost predictor."""
    config = load_config(config_path, verbose)
    if phase not in PHASES:
        raise UsageError(f"--phase must be one of {', '.join(PHASES)}")
    datagen_config = config.datagen
    if min_size is not None or max_size is not None:
        low = min_size or datagen_config.size_range[0]
        high = max_size or datagen_config.size_range[1]
        if low > high:
            raise UsageError("--min-size must not exceed --max-size")
        datagen_config = datagen_config.model_copy(update={"size_range": (low, high)})
    n = count or datagen_config.count
    root = config.solver.rng_seed if seed is None else seed
    n_workers = workers or config.runtime.workers

    with spinner(f"Generating phase {phase} data ({n} instances)"):
        if phase == "1":
            dataset = phase1(
                n, datagen_config.size_range, root, config.solver, datagen_config, n_workers
            )
        elif phase == "2":
            dataset = phase2(n, root, config.solver, datagen_config, n_workers)
        elif phase == "3":
            dataset, model = phase3(
                n,
                root,
                config.solver,
                datagen_config,
                config.ga,
                config.predictor,
                config.train,
                init=load_checkpoint(init) if init else None,
                buckets=config.buckets,
                workers=n_workers,
            )
            if checkpoint_out:
                save_checkpoint(model, checkpoint_out)
                success(f"Saved bootstrapped predictor to {checkpoint_out}")
        else:
            if positioning not in ("R", "C", "RC"):
                raise UsageError("--positioning must be one of R, C, RC")
            if demand not in ("unitary", "uniform", "quadrant"):
                raise UsageError("--demand must be one of unitary, uniform, quadrant")
            dataset = phase_distribution(
                n,
                positioning,  # type: ignore[arg-type]
                demand,  # type: ignore[arg-type]
                root,
                config.solver,
                datagen_config,
                n_workers,
            )
    save_dataset(dataset, out)
    success(f"Saved {len(dataset)} records to {out} ({dataset.manifest.kinds})")
