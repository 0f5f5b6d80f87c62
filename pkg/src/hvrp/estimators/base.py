"""The cost-estimator interface and shared error metrics."""

from collections.abc import Sequence
from typing import Protocol, runtime_checkable

import numpy as np

from hvrp.core.exceptions import UsageError
from hvrp.instances.types import CvrpInstance


@runtime_checkable
class CostEstimator(Protocol):
    """Anything that predicts CVRP routing costs in batches.

    Implementations must be pure: the estimate of an instance does not depend
    on the other instances of the batch.
    """

    name: str

    def estimate_batch(self, instances: Sequence[CvrpInstance]) -> np.ndarray:
        """Estimate the routing cost of each instance, in order."""
        ...


def bounding_box_area(instance: CvrpInstance) -> float:
    """Area of the axis-aligned bounding box of the depot and customers."""
    extent = instance.points.max(axis=0) - instance.points.min(axis=0)
    return float(extent[0] * extent[1])


def estimator_gap(
    predicted: float | np.ndarray, reference: float | np.ndarray
) -> float | np.ndarray:
    """Signed percentage gap ``(predicted - reference) / reference * 100``.

    Raises:
        UsageError: If any reference is not positive
    """
    ref = np.asarray(reference, dtype=np.float64)
    if np.any(ref <= 0):
        raise UsageError("reference cost must be positive")
    gap = (np.asarray(predicted, dtype=np.float64) - ref) / ref * 100.0
    return float(gap) if gap.ndim == 0 else gap


def mape(predicted: Sequence[float] | np.ndarray, reference: Sequence[float] | np.ndarray) -> float:
    """Mean absolute percentage error, in percent."""
    gaps = np.abs(np.asarray(estimator_gap(np.asarray(predicted), np.asarray(reference))))
    if gaps.size == 0:
        raise UsageError("mape needs at least one sample")
    return float(gaps.mean())
