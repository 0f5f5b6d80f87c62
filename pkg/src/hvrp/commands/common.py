"""Options and setup shared by every command."""

import logging
from pathlib import Path
from typing import Annotated

import typer

from hvrp.config.manager import ConfigManager
from hvrp.config.schema import Config
from hvrp.core.exceptions import UsageError
from hvrp.core.output import output_data
from hvrp.datagen.dataset import load_dataset
from hvrp.estimators import (
    CostEstimator,
    DaganzoEstimator,
    FigliozziEstimator,
    OracleEstimator,
    fit_daganzo,
    fit_figliozzi,
)
from hvrp.neural import NeuralEstimator, load_checkpoint
from hvrp.utils.console import success
from hvrp.utils.file_io import parse_output_option
from hvrp.utils.logging import configure_logging

ConfigOption = Annotated[
    str,
    typer.Option(
        "--config",
        "-c",
        help="Config file (.toml or .json); defaults to ~/.hvrp/config.toml",
    ),
]
OutputOption = Annotated[
    str,
    typer.Option(
        "--out",
        "--output",
        "-o",
        help="Output format (table, json, csv) or file path (.json, .csv)",
    ),
]
SeedOption = Annotated[
    int | None,
    typer.Option("--seed", "-s", help="Random seed"),
]
VerboseOption = Annotated[
    bool,
    typer.Option(
        "--verbose",
        "-v",
        help="Enable verbose logs",
    ),
]
WorkersOption = Annotated[
    int | None,
    typer.Option("--workers", "-w", min=1, help="Labeling processes"),
]
EstimatorOption = Annotated[
    str,
    typer.Option(
        "--method",
        "-m",
        help="Cost estimator: nn, daganzo, figliozzi or oracle",
    ),
]
CheckpointOption = Annotated[
    str,
    typer.Option("--nn", help="Predictor checkpoint (required by --method nn)"),
]
FitDataOption = Annotated[
    str,
    typer.Option(
        "--fit-data",
        help="Labeled dataset directory to fit daganzo or figliozzi constants on",
    ),
]

ESTIMATORS = ("nn", "daganzo", "figliozzi", "oracle")


def load_config(path: str = "", verbose: bool = False) -> Config:
    """Load the config and configure logging for a command.

    ``--verbose`` forces DEBUG; otherwise ``runtime.log_level`` applies.
    """
    config = ConfigManager.load(path)
    level = logging.DEBUG if verbose else getattr(logging, config.runtime.log_level)
    configure_logging(level=level, structured=config.runtime.structured_logs)
    return config


def existing_path(path: str | Path, what: str) -> Path:
    """Path of an input file or directory.

    Raises:
        UsageError: If it does not exist
    """
    path = Path(path)
    if not path.exists():
        raise UsageError(f"{what} not found: {path}")
    return path


def emit(data: object, output: str, config: Config, what: str = "Result") -> None:
    """Write a model or list of models to stdout or a file."""
    output_format, output_file = parse_output_option(output or config.output.format)
    output_data(data, format_type=output_format, output_file=output_file)  # type: ignore[arg-type]
    if output_file:
        success(f"Saved {what.lower()} to {output_file}")


def build_estimator(
    method: str, checkpoint: str, fit_data: str, config: Config
) -> CostEstimator:
    """Construct the estimator a command asked for.

    Raises:
        UsageError: If the method is unknown or its inputs are missing
        PredictorError: If the checkpoint cannot be loaded
        FitError: If fitting on the dataset fails
    """
    if method == "nn":
        if not checkpoint:
            raise UsageError("--method nn needs a checkpoint: pass --nn PATH")
        return NeuralEstimator(load_checkpoint(checkpoint), config.buckets)
    if method == "daganzo":
        if not fit_data:
            return DaganzoEstimator()
        samples = load_dataset(existing_path(fit_data, "Dataset")).samples()
        return DaganzoEstimator(customers_per_vehicle=fit_daganzo(samples))
    if method == "figliozzi":
        if not fit_data:
            raise UsageError("--method figliozzi needs labeled data: pass --fit-data DIR")
        samples = load_dataset(existing_path(fit_data, "Dataset")).samples()
        return FigliozziEstimator(fit_figliozzi(samples))
    if method == "oracle":
        return OracleEstimator("heuristic", config.solver)
    raise UsageError(f"unknown estimator {method}; choose from {', '.join(ESTIMATORS)}")
