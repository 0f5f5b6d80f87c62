"""CVRP cost estimators: analytical baselines, solver oracles and metrics."""

from hvrp.estimators.analytical import (
    DaganzoEstimator,
    FigliozziEstimator,
    FigliozziParams,
    daganzo_estimate,
    figliozzi_estimate,
    figliozzi_features,
    fit_daganzo,
    fit_figliozzi,
)
from hvrp.estimators.base import CostEstimator, bounding_box_area, estimator_gap, mape
from hvrp.estimators.oracle import OracleEstimator

__all__ = [
    "CostEstimator",
    "DaganzoEstimator",
    "FigliozziEstimator",
    "FigliozziParams",
    "OracleEstimator",
    "bounding_box_area",
    "daganzo_estimate",
    "estimator_gap",
    "figliozzi_estimate",
    "figliozzi_features",
    "fit_daganzo",
    "fit_figliozzi",
    "mape",
]
