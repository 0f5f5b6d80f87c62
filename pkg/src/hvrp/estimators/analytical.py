"""Continuous-approximation cost estimators and their fits."""

import logging
import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, field_validator
from scipy.optimize import minimize_scalar

from hvrp.core.exceptions import FitError, UsageError
from hvrp.estimators.base import bounding_box_area, mape
from hvrp.instances.types import CvrpInstance

logger = logging.getLogger(__name__)

DEFAULT_CUSTOMERS_PER_VEHICLE = 6.52
DEFAULT_SHAPE_CONSTANT = 1.0

LabeledSample = tuple[CvrpInstance, float]


def daganzo_estimate(
    instance: CvrpInstance,
    k: float = DEFAULT_SHAPE_CONSTANT,
    customers_per_vehicle: float = DEFAULT_CUSTOMERS_PER_VEHICLE,
) -> float:
    """Route length ``(0.9 + k N / C^2) * sqrt(A N)``.

    A zero-area instance (all points on one line) yields 0 and is logged as
    degenerate.

    Args:
        instance: The CVRP
        k: Area shape constant
        customers_per_vehicle: C

    Returns:
        Estimated routing cost

    Raises:
        UsageError: If C is not positive
    """
    if customers_per_vehicle <= 0:
        raise UsageError("customers_per_vehicle must be positive")
    n = instance.n_customers
    area = bounding_box_area(instance)
    if area == 0:
        logger.warning("Degenerate zero-area instance %s", instance.name or "<cvrp>")
    return (0.9 + k * n / customers_per_vehicle**2) * math.sqrt(area * n)


class DaganzoEstimator:
    """Daganzo formula as a CostEstimator."""

    name = "daganzo"

    def __init__(
        self,
        k: float = DEFAULT_SHAPE_CONSTANT,
        customers_per_vehicle: float = DEFAULT_CUSTOMERS_PER_VEHICLE,
    ) -> None:
        """Fix the formula constants."""
        self.k = k
        self.customers_per_vehicle = customers_per_vehicle

    def estimate_batch(self, instances: Sequence[CvrpInstance]) -> np.ndarray:
        """Estimate every instance independently."""
        return np.array(
            [daganzo_estimate(i, self.k, self.customers_per_vehicle) for i in instances],
            dtype=np.float64,
        )


def fit_daganzo(
    samples: Sequence[LabeledSample],
    k: float = DEFAULT_SHAPE_CONSTANT,
    bounds: tuple[float, float] = (0.5, 100.0),
) -> float:
    """Choose C minimizing the MAPE of the Daganzo formula on labeled samples.

    Args:
        samples: (instance, reference cost) pairs
        k: Area shape constant held fixed
        bounds: Search interval for C

    Returns:
        Fitted customers-per-vehicle constant C

    Raises:
        FitError: If there are no samples or the search fails
    """
    if not samples:
        raise FitError("fit_daganzo needs at least one labeled sample")
    n = np.array([inst.n_customers for inst, _ in samples], dtype=np.float64)
    root = np.sqrt([bounding_box_area(inst) * inst.n_customers for inst, _ in samples])
    labels = np.array([cost for _, cost in samples], dtype=np.float64)

    def objective(c: float) -> float:
        return mape((0.9 + k * n / c**2) * root, labels)

    result = minimize_scalar(objective, bounds=bounds, method="bounded")
    if not result.success:
        raise FitError(f"Daganzo fit did not converge: {result.message}")
    logger.info("Fitted Daganzo C=%.4f (MAPE %.2f%%)", result.x, result.fun)
    return float(result.x)


class FigliozziParams(BaseModel):
    """Regression coefficients of the Figliozzi route-length model."""

    a1: float
    a2: float
    a3: float

    @field_validator("a1", "a2", "a3")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject non-finite coefficients.

        Args:
            v: Coefficient

        Returns:
            Validated coefficient

        Raises:
            ValueError: If the value is not finite
        """
        if not math.isfinite(v):
            raise ValueError("coefficients must be finite")
        return v


def figliozzi_features(instance: CvrpInstance, vehicles: int | None = None) -> np.ndarray:
    """Regressors ``[((N-M)/N) sqrt(A N), A/N, M]``.

    Args:
        instance: The CVRP
        vehicles: M; defaults to ``ceil(sum q / Q)``

    Returns:
        Feature vector of length 3

    Raises:
        UsageError: If M is not in [1, N]
    """
    n = instance.n_customers
    m = instance.min_vehicles if vehicles is None else vehicles
    if not 1 <= m <= n:
        raise UsageError(f"vehicle count M={m} must lie in [1, N={n}]")
    area = bounding_box_area(instance)
    return np.array([(n - m) / n * math.sqrt(area * n), area / n, float(m)])


def figliozzi_estimate(
    instance: CvrpInstance, params: FigliozziParams, vehicles: int | None = None
) -> float:
    """Route length ``a1 ((N-M)/N) sqrt(A N) + a2 A/N + a3 M``."""
    features = figliozzi_features(instance, vehicles)
    return float(features @ np.array([params.a1, params.a2, params.a3]))


class FigliozziEstimator:
    """Fitted Figliozzi model as a CostEstimator."""

    name = "figliozzi"

    def __init__(self, params: FigliozziParams) -> None:
        """Wrap fitted coefficients."""
        self.params = params

    def estimate_batch(self, instances: Sequence[CvrpInstance]) -> np.ndarray:
        """Estimate every instance independently."""
        return np.array(
            [figliozzi_estimate(inst, self.params) for inst in instances],
            dtype=np.float64,
        )


def fit_figliozzi(samples: Sequence[LabeledSample]) -> FigliozziParams:
    """Ordinary least squares fit of the Figliozzi coefficients.

    Args:
        samples: (instance, reference cost) pairs

    Returns:
        Fitted coefficients

    Raises:
        FitError: With fewer than three samples or collinear features
    """
    if len(samples) < 3:
        raise FitError(f"fit_figliozzi needs at least 3 samples, got {len(samples)}")
    x = np.vstack([figliozzi_features(inst) for inst, _ in samples])
    y = np.array([cost for _, cost in samples], dtype=np.float64)
    coef, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
    if rank < x.shape[1]:
        raise FitError("Figliozzi features are collinear; the system is singular")
    params = FigliozziParams(a1=coef[0], a2=coef[1], a3=coef[2])
    logger.info(
        "Fitted Figliozzi a1=%.4f a2=%.4f a3=%.4f on %d samples",
        params.a1,
        params.a2,
        params.a3,
        len(samples),
    )
    return params
