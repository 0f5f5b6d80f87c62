"""Predictor checkpoints.

A checkpoint is a ``torch.save`` file holding a plain dict::

    {"format_version": 1, "predictor_config": {...}, "state_dict": {...}}

so it loads with ``weights_only=True``.
"""

from pathlib import Path

import torch
from pydantic import ValidationError

from hvrp.config.schema import PredictorConfig
from hvrp.core.exceptions import PredictorError
from hvrp.neural.model import PredictorModel, create_model

FORMAT_VERSION = 1


def save_checkpoint(model: PredictorModel, path: str | Path) -> Path:
    """Write a model checkpoint.

    Returns:
        Path written

    Raises:
        PredictorError: If the file cannot be written
    """
    path = Path(path)
    payload = {
        "format_version": FORMAT_VERSION,
        "predictor_config": model.config.model_dump(),
        "state_dict": model.state_dict(),
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        torch.save(payload, path)
    except OSError as e:
        raise PredictorError(f"Failed to write checkpoint {path}: {e}") from e
    return path


def load_checkpoint(path: str | Path) -> PredictorModel:
    """Load a model saved by ``save_checkpoint``.

    Raises:
        PredictorError: If the file is missing, of another format version, or
            its tensors do not fit the stored architecture
    """
    path = Path(path)
    if not path.exists():
        raise PredictorError(f"Checkpoint not found: {path}")
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except Exception as e:
        raise PredictorError(f"Failed to read checkpoint {path}: {e}") from e
    if not isinstance(payload, dict) or payload.get("format_version") != FORMAT_VERSION:
        raise PredictorError(
            f"{path} is not a version {FORMAT_VERSION} predictor checkpoint"
        )
    try:
        config = PredictorConfig(**payload["predictor_config"])
        model = create_model(config)
        model.load_state_dict(payload["state_dict"])
    except (KeyError, ValidationError, RuntimeError) as e:
        raise PredictorError(f"Checkpoint {path} does not match its config: {e}") from e
    model.eval()
    return model
