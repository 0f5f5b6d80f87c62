"""Single-depot CVRP solving command."""

from typing import Annotated

import typer

from hvrp.commands.common import (
    ConfigOption,
    OutputOption,
    SeedOption,
    VerboseOption,
    emit,
    existing_path,
    load_config,
)
from hvrp.core.decorators import handle_errors
from hvrp.core.exceptions import UsageError
from hvrp.instances.io import read_instance
from hvrp.instances.types import CvrpInstance
from hvrp.routing import cvrp_report, solve_exact, solve_heuristic
from hvrp.utils.console import spinner


@handle_errors
def cvrp_solve(
    path: Annotated[str, typer.Option("--in", "-i", help="CVRP instance file")],
    time_limit: Annotated[
        float | None,
        typer.Option(
            "--time-limit",
            "-t",
            min=0.001,
            help="Seconds; switches the solver from an iteration budget to wall clock",
        ),
    ] = None,
    exact: Annotated[
        bool,
        typer.Option("--exact", help="Solve to optimality (tiny instances only)"),
    ] = False,
    seed: SeedOption = None,
    output: OutputOption = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Solve a single-depot CVRP and print its routes."""
    config = load_config(config_path, verbose)
    instance = read_instance(existing_path(path, "Instance"))
    if not isinstance(instance, CvrpInstance):
        raise UsageError(f"{path} is not a single-depot CVRP instance")
    update: dict[str, object] = {}
    if seed is not None:
        update["rng_seed"] = seed
    if time_limit is not None:
        update |= {"time_limit": time_limit, "stop_mode": "time"}
    solver_config = config.solver.model_copy(update=update)

    with spinner(f"Solving {instance.name or path}"):
        result = (
            solve_exact(instance)
            if exact
            else solve_heuristic(instance, solver_config)
        )
    emit(cvrp_report(instance, result), output, config, "Solution")
