"""Routing-cost estimation command."""

from typing import Annotated

import typer
from pydantic import BaseModel

from hvrp.commands.common import (
    CheckpointOption,
    ConfigOption,
    EstimatorOption,
    FitDataOption,
    OutputOption,
    VerboseOption,
    build_estimator,
    emit,
    existing_path,
    load_config,
)
from hvrp.core.decorators import handle_errors
from hvrp.core.exceptions import UsageError
from hvrp.estimators import estimator_gap
from hvrp.instances.io import read_instance
from hvrp.instances.types import CvrpInstance
from hvrp.routing import solve_heuristic


class EstimateReport(BaseModel):
    """Estimated routing cost of one CVRP."""

    instance: str
    method: str
    n_customers: int
    estimate: float
    reference: float | None = None
    gap: float | None = None


@handle_errors
def estimate(
    path: Annotated[str, typer.Option("--in", "-i", help="CVRP instance file")],
    method: EstimatorOption = "nn",
    checkpoint: CheckpointOption = "",
    fit_data: FitDataOption = "",
    reference: Annotated[
        bool,
        typer.Option(
            "--reference", help="Also solve the instance and report the gap"
        ),
    ] = False,
    output: OutputOption = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Estimate the routing cost of a CVRP without solving it."""
    config = load_config(config_path, verbose)
    instance = read_instance(existing_path(path, "Instance"))
    if not isinstance(instance, CvrpInstance):
        raise UsageError(f"{path} is not a single-depot CVRP instance")
    estimator = build_estimator(method, checkpoint, fit_data, config)
    value = float(estimator.estimate_batch([instance])[0])
    report = EstimateReport(
        instance=instance.name,
        method=estimator.name,
        n_customers=instance.n_customers,
        estimate=value,
    )
    if reference:
        cost = solve_heuristic(instance, config.solver).cost
        report.reference = cost
        report.gap = float(estimator_gap(value, cost))
    emit(report, output, config, "Estimate")
