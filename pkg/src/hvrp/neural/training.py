"""Supervised training and evaluation of the cost predictor."""

import copy
import logging
import math
from collections.abc import Sequence

import numpy as np
import torch
from pydantic import BaseModel, Field

from hvrp.config.schema import (
    DEFAULT_BUCKETS,
    PredictorConfig,
    SizeBucket,
    TrainConfig,
    bucket_for,
)
from hvrp.core.exceptions import UsageError
from hvrp.estimators.base import estimator_gap
from hvrp.instances.types import CvrpInstance
from hvrp.neural.graph import KnnGraph, build_knn_graph, collate
from hvrp.neural.model import PredictorModel, create_model

logger = logging.getLogger(__name__)

LabeledSample = tuple[CvrpInstance, float]


class EpochStats(BaseModel):
    """Losses recorded after one epoch."""

    epoch: int
    train_loss: float
    val_loss: float | None = None
    val_mape: float | None = None


class TrainHistory(BaseModel):
    """Per-epoch statistics and the epoch whose weights were kept."""

    epochs: list[EpochStats] = Field(default_factory=list)
    best_epoch: int = 0
    n_train: int = 0
    n_val: int = 0


def _batches(indices: list[int], size: int) -> list[list[int]]:
    return [indices[i : i + size] for i in range(0, len(indices), size)]


def _validation_scores(
    model: PredictorModel, graphs: list[KnnGraph], labels: torch.Tensor, size: int
) -> tuple[float, float]:
    """Return (MSE, MAPE) of the model over graphs without gradients."""
    predictions = []
    with torch.no_grad():
        for chunk in _batches(list(range(len(graphs))), size):
            predictions.append(model(collate([graphs[i] for i in chunk], model.dtype)))
    predicted = torch.cat(predictions)
    mse = float(((predicted - labels) ** 2).mean())
    gaps = estimator_gap(predicted.numpy(), labels.numpy())
    return mse, float(np.abs(gaps).mean())


def train(
    samples: Sequence[LabeledSample],
    train_config: TrainConfig | None = None,
    predictor_config: PredictorConfig | None = None,
    init: PredictorModel | None = None,
    buckets: list[SizeBucket] | None = None,
) -> tuple[PredictorModel, TrainHistory]:
    """Fit a predictor to labeled CVRP instances with Adam on squared error.

    Samples are split into training and validation parts by
    ``validation_split``; after every epoch the validation loss is recorded and
    the weights with the lowest validation loss (training loss when the
    validation part is empty) are returned.

    Args:
        samples: (instance, routing cost) pairs
        train_config: Optimizer and schedule settings
        predictor_config: Architecture for a fresh model; ignored with ``init``
        init: Model to fine-tune; copied, never modified
        buckets: Size buckets giving the batch size when not configured

    Returns:
        (trained model, history)

    Raises:
        UsageError: If there are no samples
    """
    if not samples:
        raise UsageError("cannot train on an empty dataset")
    cfg = train_config or TrainConfig()
    if init is not None:
        model = copy.deepcopy(init)
    else:
        model = create_model(predictor_config, seed=cfg.rng_seed)
    k = model.config.knn

    generator = torch.Generator().manual_seed(cfg.rng_seed)
    order = torch.randperm(len(samples), generator=generator).tolist()
    n_val = int(round(cfg.validation_split * len(samples)))
    if n_val >= len(samples):
        n_val = len(samples) - 1
    val_idx, train_idx = order[:n_val], order[n_val:]

    graphs = [build_knn_graph(instance, k) for instance, _ in samples]
    labels = torch.tensor([float(cost) for _, cost in samples], dtype=model.dtype)
    size = cfg.batch_size or bucket_for(
        float(np.median([inst.n_customers for inst, _ in samples])),
        buckets or DEFAULT_BUCKETS,
    ).batch_size

    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    history = TrainHistory(n_train=len(train_idx), n_val=len(val_idx))
    best_loss = math.inf
    best_state = copy.deepcopy(model.state_dict())

    for epoch in range(1, cfg.epochs + 1):
        model.train()
        shuffled = [train_idx[i] for i in torch.randperm(len(train_idx), generator=generator)]
        total, count = 0.0, 0
        for chunk in _batches(shuffled, size):
            optimizer.zero_grad()
            predicted = model(collate([graphs[i] for i in chunk], model.dtype))
            batch_loss = ((predicted - labels[chunk]) ** 2).mean()
            batch_loss.backward()
            optimizer.step()
            total += float(batch_loss) * len(chunk)
            count += len(chunk)

        model.eval()
        stats = EpochStats(epoch=epoch, train_loss=total / count)
        if val_idx:
            stats.val_loss, stats.val_mape = _validation_scores(
                model, [graphs[i] for i in val_idx], labels[val_idx], size
            )
        history.epochs.append(stats)
        monitored = stats.val_loss if stats.val_loss is not None else stats.train_loss
        if monitored < best_loss:
            best_loss = monitored
            best_state = copy.deepcopy(model.state_dict())
            history.best_epoch = epoch
        logger.info(
            "Epoch %d/%d train_loss=%.4g val_loss=%s val_mape=%s",
            epoch,
            cfg.epochs,
            stats.train_loss,
            "-" if stats.val_loss is None else f"{stats.val_loss:.4g}",
            "-" if stats.val_mape is None else f"{stats.val_mape:.2f}%",
        )

    model.load_state_dict(best_state)
    model.eval()
    return model, history


class BucketAccuracy(BaseModel):
    """Prediction accuracy over the instances of one size bucket."""

    lower: float
    upper: float
    count: int
    mape: float
    max_abs_gap: float


class EvaluationReport(BaseModel):
    """Accuracy of a predictor against reference costs."""

    count: int
    mape: float
    buckets: list[BucketAccuracy] = Field(default_factory=list)


def evaluate(
    model: PredictorModel,
    samples: Sequence[LabeledSample],
    buckets: list[SizeBucket] | None = None,
) -> EvaluationReport:
    """Compare predictions with labels overall and per size bucket.

    Instances are grouped by customer count into the size buckets; sizes below
    the first bucket join the first one.

    Raises:
        UsageError: If there are no samples
    """
    if not samples:
        raise UsageError("cannot evaluate on an empty dataset")
    buckets = buckets or DEFAULT_BUCKETS
    graphs = [build_knn_graph(instance, model.config.knn) for instance, _ in samples]
    labels = torch.tensor([float(cost) for _, cost in samples], dtype=model.dtype)
    with torch.no_grad():
        predicted = torch.cat(
            [
                model(collate([graphs[i] for i in chunk], model.dtype))
                for chunk in _batches(list(range(len(graphs))), buckets[-1].batch_size)
            ]
        ).numpy()
    gaps = np.abs(estimator_gap(predicted, labels.numpy()))
    rows = []
    keys = [id(bucket_for(inst.n_customers, buckets)) for inst, _ in samples]
    for bucket in buckets:
        members = [i for i, key in enumerate(keys) if key == id(bucket)]
        if members:
            rows.append(
                BucketAccuracy(
                    lower=bucket.lower,
                    upper=bucket.upper,
                    count=len(members),
                    mape=float(gaps[members].mean()),
                    max_abs_gap=float(gaps[members].max()),
                )
            )
    return EvaluationReport(count=len(samples), mape=float(gaps.mean()), buckets=rows)
