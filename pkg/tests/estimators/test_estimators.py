"""Tests for analytical estimators, fits, oracles and metrics."""

import math

import numpy as np
import pytest

from hvrp.config.schema import SolverConfig
from hvrp.core.exceptions import FitError, UsageError
from hvrp.estimators import (
    CostEstimator,
    DaganzoEstimator,
    FigliozziEstimator,
    FigliozziParams,
    OracleEstimator,
    bounding_box_area,
    daganzo_estimate,
    estimator_gap,
    figliozzi_estimate,
    figliozzi_features,
    fit_daganzo,
    fit_figliozzi,
    mape,
)
from hvrp.instances.generators import generate_cvrp
from hvrp.instances.types import CvrpInstance, InstanceSpec
from hvrp.routing import solve_exact


def _samples(count: int) -> list[CvrpInstance]:
    return [
        generate_cvrp(
            InstanceSpec(n_customers=(10, 40), vehicle_capacity=150 + 40 * seed, seed=seed)
        )
        for seed in range(count)
    ]


class TestMetrics:
    """Tests for the gap and MAPE metrics."""

    @pytest.mark.parametrize(
        ("predicted", "reference", "expected"),
        [(586.39, 576.87, 1.65), (429.6, 424.9, 1.11), (90.0, 100.0, -10.0)],
    )
    def test_gap(self, predicted: float, reference: float, expected: float) -> None:
        """Test the signed percentage gap."""
        assert estimator_gap(predicted, reference) == pytest.approx(expected, abs=0.005)

    def test_gap_needs_positive_reference(self) -> None:
        """Test a zero reference is rejected."""
        with pytest.raises(UsageError):
            estimator_gap(1.0, 0.0)

    def test_mape(self) -> None:
        """Test MAPE averages absolute gaps."""
        assert mape([110.0, 90.0], [100.0, 100.0]) == pytest.approx(10.0)

    def test_mape_empty(self) -> None:
        """Test MAPE of nothing is an error."""
        with pytest.raises(UsageError):
            mape([], [])

    def test_bounding_box_area(self, tiny_cvrp: CvrpInstance) -> None:
        """Test the box spans the depot and all customers."""
        assert bounding_box_area(tiny_cvrp) == pytest.approx(24 * 15)


class TestDaganzo:
    """Tests for the Daganzo formula."""

    def test_formula(self, tiny_cvrp: CvrpInstance) -> None:
        """Test the closed form."""
        expected = (0.9 + 2.0 * 6 / 4.0**2) * math.sqrt(360 * 6)
        assert daganzo_estimate(tiny_cvrp, k=2.0, customers_per_vehicle=4.0) == pytest.approx(
            expected
        )

    def test_degenerate_area(self) -> None:
        """Test collinear points estimate zero."""
        line = CvrpInstance(
            depot=np.zeros(2),
            coords=np.array([[1.0, 0.0], [2.0, 0.0]]),
            demands=[1, 1],
            capacity=5,
        )
        assert daganzo_estimate(line) == 0.0

    def test_invalid_constant(self, tiny_cvrp: CvrpInstance) -> None:
        """Test a non-positive C is rejected."""
        with pytest.raises(UsageError):
            daganzo_estimate(tiny_cvrp, customers_per_vehicle=0.0)

    def test_fit_recovers_constant(self) -> None:
        """Test the fit finds the C that generated the labels."""
        instances = _samples(6)
        samples = [(inst, daganzo_estimate(inst, customers_per_vehicle=5.0)) for inst in instances]
        assert fit_daganzo(samples) == pytest.approx(5.0, abs=1e-2)

    def test_fit_needs_samples(self) -> None:
        """Test an empty fit raises FitError."""
        with pytest.raises(FitError):
            fit_daganzo([])

    def test_estimator(self, tiny_cvrp: CvrpInstance) -> None:
        """Test the estimator wraps the formula."""
        estimator = DaganzoEstimator()
        assert isinstance(estimator, CostEstimator)
        assert estimator.estimate_batch([tiny_cvrp])[0] == pytest.approx(
            daganzo_estimate(tiny_cvrp)
        )


class TestFigliozzi:
    """Tests for the Figliozzi regression."""

    def test_features(self, tiny_cvrp: CvrpInstance) -> None:
        """Test the regressors with the default vehicle count."""
        features = figliozzi_features(tiny_cvrp)
        assert features.tolist() == pytest.approx(
            [(6 - 3) / 6 * math.sqrt(360 * 6), 360 / 6, 3.0]
        )

    @pytest.mark.parametrize("vehicles", [0, 7])
    def test_vehicle_count_range(self, tiny_cvrp: CvrpInstance, vehicles: int) -> None:
        """Test M outside [1, N] is rejected."""
        with pytest.raises(UsageError):
            figliozzi_features(tiny_cvrp, vehicles)

    def test_fit_recovers_coefficients(self) -> None:
        """Test least squares recovers exact coefficients."""
        truth = FigliozziParams(a1=0.8, a2=2.0, a3=30.0)
        samples = [(inst, figliozzi_estimate(inst, truth)) for inst in _samples(8)]
        fitted = fit_figliozzi(samples)
        assert fitted.a1 == pytest.approx(0.8, rel=1e-6)
        assert fitted.a2 == pytest.approx(2.0, rel=1e-6)
        assert fitted.a3 == pytest.approx(30.0, rel=1e-6)

    def test_fit_needs_three_samples(self, tiny_cvrp: CvrpInstance) -> None:
        """Test fewer than three samples raise FitError."""
        with pytest.raises(FitError, match="at least 3"):
            fit_figliozzi([(tiny_cvrp, 100.0), (tiny_cvrp, 100.0)])

    def test_fit_singular(self, tiny_cvrp: CvrpInstance) -> None:
        """Test identical samples are reported as collinear."""
        with pytest.raises(FitError, match="collinear"):
            fit_figliozzi([(tiny_cvrp, 100.0)] * 4)

    def test_params_must_be_finite(self) -> None:
        """Test non-finite coefficients are rejected."""
        with pytest.raises(ValueError):
            FigliozziParams(a1=math.inf, a2=0.0, a3=0.0)

    def test_estimator(self, tiny_cvrp: CvrpInstance) -> None:
        """Test the estimator applies the fitted coefficients."""
        params = FigliozziParams(a1=1.0, a2=0.0, a3=0.0)
        value = FigliozziEstimator(params).estimate_batch([tiny_cvrp])[0]
        assert value == pytest.approx(0.5 * math.sqrt(2160))


class TestOracle:
    """Tests for the solving oracle."""

    def test_exact(self, tiny_cvrp: CvrpInstance) -> None:
        """Test exact mode returns the optimum."""
        oracle = OracleEstimator(mode="exact")
        assert oracle.name == "oracle-exact"
        assert oracle.estimate(tiny_cvrp) == pytest.approx(solve_exact(tiny_cvrp).cost)

    def test_heuristic_batch(self, tiny_cvrp: CvrpInstance, fast_solver: SolverConfig) -> None:
        """Test batches keep input order."""
        oracle = OracleEstimator(solver_config=fast_solver)
        single = tiny_cvrp.transformed(order=np.array([0]))
        costs = oracle.estimate_batch([tiny_cvrp, single])
        assert costs.shape == (2,)
        assert costs[1] == pytest.approx(20.0)
        assert costs[0] > costs[1]
