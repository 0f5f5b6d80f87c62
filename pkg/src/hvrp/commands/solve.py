"""MDVRP and CLRP solving commands."""

from typing import Annotated

import typer
from pydantic import BaseModel

from hvrp.clrp import clrp_solve
from hvrp.commands.common import (
    CheckpointOption,
    ConfigOption,
    EstimatorOption,
    FitDataOption,
    OutputOption,
    SeedOption,
    VerboseOption,
    build_estimator,
    emit,
    existing_path,
    load_config,
)
from hvrp.core.decorators import handle_errors
from hvrp.core.exceptions import UsageError
from hvrp.ga import SolveResult, solve_mdvrp
from hvrp.instances.io import read_instance
from hvrp.instances.types import ClrpInstance, MdvrpInstance
from hvrp.instances.validation import check_solution
from hvrp.utils.console import spinner, success
from hvrp.utils.file_io import read_json_model

MODES = ("auto", "mdvrp", "clrp")


def _multi_depot(path: str) -> MdvrpInstance:
    instance = read_instance(existing_path(path, "Instance"))
    if not isinstance(instance, MdvrpInstance):
        raise UsageError(f"{path} is a single-depot instance; use cvrp-solve")
    return instance


@handle_errors
def solve(
    path: Annotated[str, typer.Option("--in", "-i", help="MDVRP or CLRP instance file")],
    mode: Annotated[
        str,
        typer.Option(
            "--mode",
            help="auto picks clrp for location-routing instances, mdvrp otherwise",
        ),
    ] = "auto",
    method: EstimatorOption = "nn",
    checkpoint: CheckpointOption = "",
    fit_data: FitDataOption = "",
    seed: SeedOption = None,
    output: OutputOption = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Solve an instance: evolve depot assignments on predicted costs, then route."""
    config = load_config(config_path, verbose)
    if mode not in MODES:
        raise UsageError(f"--mode must be one of {', '.join(MODES)}")
    instance = _multi_depot(path)
    if mode == "clrp" and not isinstance(instance, ClrpInstance):
        raise UsageError(f"{path} has no depot capacities or opening costs")
    estimator = build_estimator(method, checkpoint, fit_data, config)
    ga_config = config.ga if seed is None else config.ga.model_copy(update={"rng_seed": seed})

    result: SolveResult
    with spinner(f"Solving {instance.name or path}"):
        if isinstance(instance, ClrpInstance) and mode != "mdvrp":
            result = clrp_solve(
                instance, estimator, ga_config, config.clrp, config.solver, config.buckets
            )
        else:
            if isinstance(instance, ClrpInstance):
                instance = instance.as_mdvrp()
            result = solve_mdvrp(
                instance, estimator, ga_config, config.solver, config.buckets
            )
    emit(result, output, config, "Solution")


class CheckReport(BaseModel):
    """Outcome of an independent solution check."""

    instance: str
    reported_cost: float
    recomputed_cost: float
    n_routes: int


@handle_errors
def check(
    path: Annotated[str, typer.Option("--in", "-i", help="MDVRP or CLRP instance file")],
    solution_path: Annotated[
        str, typer.Option("--solution", help="Solution JSON written by solve")
    ],
    output: OutputOption = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Check a solution against its instance and recompute its cost."""
    config = load_config(config_path, verbose)
    instance = _multi_depot(path)
    result = read_json_model(existing_path(solution_path, "Solution"), SolveResult)
    cost = check_solution(instance, result.to_solution())
    success(f"{solution_path} is feasible")
    emit(
        CheckReport(
            instance=instance.name,
            reported_cost=result.total_cost,
            recomputed_cost=cost,
            n_routes=result.n_routes,
        ),
        output,
        config,
        "Check",
    )
