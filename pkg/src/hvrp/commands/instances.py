"""Instance generation command."""

from typing import Annotated

import typer

from hvrp.commands.common import ConfigOption, VerboseOption, load_config
from hvrp.core.decorators import handle_errors
from hvrp.core.exceptions import InstanceError
from hvrp.instances.generators import generate_clrp, generate_cvrp, generate_mdvrp
from hvrp.instances.io import AnyInstance, instance_to_json, write_instance
from hvrp.instances.types import InstanceSpec
from hvrp.utils.console import success, text


@handle_errors
def generate(
    n: Annotated[int, typer.Option("--n", "-n", min=1, help="Number of customers")] = 100,
    depots: Annotated[
        int, typer.Option("--depots", "-d", min=1, help="Number of depots")
    ] = 2,
    kind: Annotated[
        str,
        typer.Option("--kind", "-k", help="Problem type: cvrp, mdvrp or clrp"),
    ] = "mdvrp",
    positioning: Annotated[
        str,
        typer.Option("--positioning", help="Customer positions: R, C or RC"),
    ] = "R",
    demand: Annotated[
        str,
        typer.Option(
            "--demand", help="Demand model: unitary, uniform or quadrant"
        ),
    ] = "uniform",
    grid: Annotated[int, typer.Option("--grid", min=1, help="Grid side length")] = 1000,
    capacity: Annotated[
        int | None,
        typer.Option("--capacity", min=1, help="Vehicle capacity (default: 8 mean demands)"),
    ] = None,
    seed: Annotated[int, typer.Option("--seed", "-s", help="Random seed")] = 0,
    out: Annotated[
        str,
        typer.Option(
            "--out",
            "-o",
            help="Instance file; .json writes JSON, otherwise the text format of the type",
        ),
    ] = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Generate a random CVRP, MDVRP or CLRP instance."""
    load_config(config_path, verbose)
    try:
        spec = InstanceSpec.model_validate(
            {
                "n_customers": (n, n),
                "n_depots": (depots, depots),
                "positioning": positioning,
                "demand_model": demand,
                "grid_size": grid,
                "vehicle_capacity": capacity,
                "seed": seed,
            }
        )
    except ValueError as e:
        raise InstanceError(str(e)) from e
    instance: AnyInstance
    if kind == "cvrp":
        instance = generate_cvrp(spec)
    elif kind == "mdvrp":
        instance = generate_mdvrp(spec)
    elif kind == "clrp":
        instance = generate_clrp(spec)
    else:
        raise InstanceError(f"unknown kind {kind}; choose cvrp, mdvrp or clrp")
    if not out:
        text(instance_to_json(instance))
        return
    write_instance(instance, out)
    success(f"Saved {kind} instance {instance.name} to {out}")
