"""Predictor training and evaluation commands."""

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
from hvrp.datagen import load_dataset
from hvrp.instances.types import CvrpInstance
from hvrp.neural import evaluate as evaluate_model
from hvrp.neural import load_checkpoint, save_checkpoint, train
from hvrp.utils.console import info, spinner, success

DataOption = Annotated[
    list[str],
    typer.Option("--data", "-d", help="Dataset directory (repeatable)"),
]


def _samples(directories: list[str], phase: str = "") -> list[tuple[CvrpInstance, float]]:
    samples: list[tuple[CvrpInstance, float]] = []
    for directory in directories:
        dataset = load_dataset(existing_path(directory, "Dataset"))
        if phase and dataset.manifest.phase != phase:
            raise UsageError(
                f"{directory} holds phase {dataset.manifest.phase} data, not phase {phase}"
            )
        samples.extend(dataset.samples())
    return samples


@handle_errors
def train_command(
    data: DataOption,
    out: Annotated[str, typer.Option("--out", "-o", help="Checkpoint to write")],
    phase: Annotated[
        str,
        typer.Option(
            "--phase",
            "-p",
            help="Require every dataset to come from this phase (1, 2, 3 or distribution)",
        ),
    ] = "",
    init: Annotated[
        str,
        typer.Option("--init", help="Checkpoint to fine-tune instead of a fresh model"),
    ] = "",
    epochs: Annotated[
        int | None, typer.Option("--epochs", "-e", min=1, help="Training epochs")
    ] = None,
    seed: SeedOption = None,
    history: Annotated[
        str,
        typer.Option("--history", help="Also write the per-epoch history (.json or .csv)"),
    ] = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Train the cost predictor on labeled datasets and save a checkpoint."""
    config = load_config(config_path, verbose)
    samples = _samples(data, phase)
    update: dict[str, object] = {}
    if epochs is not None:
        update["epochs"] = epochs
    if seed is not None:
        update["rng_seed"] = seed
    train_config = config.train.model_copy(update=update)
    start = load_checkpoint(init) if init else None
    info(f"Training on {len(samples)} samples for {train_config.epochs} epochs")

    with spinner("Training predictor"):
        model, trained = train(
            samples, train_config, config.predictor, init=start, buckets=config.buckets
        )
    save_checkpoint(model, out)
    best = next((e for e in trained.epochs if e.epoch == trained.best_epoch), None)
    mape = "-" if best is None or best.val_mape is None else f"{best.val_mape:.2f}%"
    success(f"Saved checkpoint to {out} (best epoch {trained.best_epoch}, val MAPE {mape})")
    if history:
        emit(trained.epochs, history, config, "History")


@handle_errors
def evaluate_command(
    checkpoint: Annotated[str, typer.Option("--nn", help="Predictor checkpoint")],
    data: DataOption,
    output: OutputOption = "",
    config_path: ConfigOption = "",
    verbose: VerboseOption = False,
) -> None:
    """Report predictor accuracy per size bucket on labeled datasets."""
    config = load_config(config_path, verbose)
    model = load_checkpoint(checkpoint)
    samples = _samples(data)
    with spinner(f"Evaluating on {len(samples)} samples"):
        report = evaluate_model(model, samples, config.buckets)
    emit(report, output, config, "Evaluation")
