"""Benchmark experiment command."""

from typing import Annotated

import typer

from hvrp.bench import SUITES, run_experiment, suite_instances, write_report
from hvrp.bench.report import report_frame
from hvrp.commands.common import (
    CheckpointOption,
    ConfigOption,
    EstimatorOption,
    FitDataOption,
    SeedOption,
    VerboseOption,
    build_estimator,
    load_config,
)
from hvrp.core.decorators import handle_errors
from hvrp.core.exceptions import UsageError
from hvrp.core.output import BaseModelTableFormatter
from hvrp.utils.console import info, progress_bar, success


@handle_errors
def bench(
    suite: Annotated[
        str,
        typer.Option("--suite", help=f"Suite: {', '.join(SUITES)}"),
    ],
    repeats: Annotated[
        int, typer.Option("--repeats", "-r", min=1, help="Runs per instance")
    ] = 10,
    directory: Annotated[
        str,
        typer.Option(
            "--dir",
            help="Instance directory for the cordeau and barreto suites "
            "(may hold a bks.csv of best-known costs)",
        ),
    ] = "",
    instances: Annotated[
        int | None,
        typer.Option("--instances", min=0, help="Instances per generated suite"),
    ] = None,
    no_kmeans: Annotated[
        bool, typer.Option("--no-kmeans", help="Skip the K-Means baseline")
    ] = False,
    method: EstimatorOption = "nn",
    checkpoint: CheckpointOption = "",
    fit_data: FitDataOption = "",
    seed: SeedOption = None,
    out: Annotated[
        str, typer.Option("--out", "-o", help="Report CSV; the summary prints otherwise")
    ] = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Run a benchmark suite against the nearest-depot and K-Means baselines."""
    config = load_config(config_path, verbose)
    if suite not in SUITES:
        raise UsageError(f"--suite must be one of {', '.join(SUITES)}")
    update: dict[str, object] = {}
    if seed is not None:
        update["rng_seed"] = seed
    if instances is not None:
        update["instances_per_suite"] = instances
    config = config.model_copy(update={"bench": config.bench.model_copy(update=update)})
    estimator = build_estimator(method, checkpoint, fit_data, config)

    items = suite_instances(suite, config.bench, directory or None)
    with progress_bar(f"Suite {suite}") as progress:
        task = progress.add_task(f"Suite {suite}", total=len(items) * repeats)
        rows = run_experiment(
            suite,
            repeats,
            estimator,
            config,
            directory=directory or None,
            include_kmeans=not no_kmeans,
            on_run=lambda: progress.update(task, advance=1),
            items=items,
        )
    if not rows:
        info(f"Suite {suite} has no instances; nothing to report")
    if out:
        write_report(rows, out)
        success(f"Saved report ({len(rows)} rows) to {out}")
    elif rows:
        summary = report_frame(rows).to_dict(orient="records")
        BaseModelTableFormatter().render_table(summary, title=f"Suite {suite}")
