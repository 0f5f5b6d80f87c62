"""Tests for the experiment drivers."""

import numpy as np
import pytest

from hvrp.bench.experiment import nda_infeasibility_rate, run_experiment, run_seed
from hvrp.bench.suites import SuiteInstance
from hvrp.config.schema import BenchConfig, Config, GaConfig, SolverConfig
from hvrp.estimators import DaganzoEstimator
from hvrp.instances.types import ClrpInstance, MdvrpInstance


@pytest.fixture
def fast_config(fast_ga: GaConfig, fast_solver: SolverConfig) -> Config:
    """Config with the small GA and solver settings."""
    return Config(ga=fast_ga, solver=fast_solver, bench=BenchConfig(rng_seed=3))


class TestRunSeed:
    """Tests for run_seed."""

    def test_distinct(self) -> None:
        """Test instance and repeat change the seed."""
        seeds = {run_seed(0, i, r) for i in range(3) for r in range(3)}
        assert len(seeds) == 9
        assert run_seed(0, 1, 2) == run_seed(0, 1, 2)


class TestRunExperiment:
    """Tests for run_experiment."""

    def test_mdvrp_rows(self, two_cluster_mdvrp: MdvrpInstance, fast_config: Config) -> None:
        """Test run rows per repeat followed by average and best rows."""
        calls: list[int] = []
        rows = run_experiment(
            "T",
            2,
            DaganzoEstimator(),
            fast_config,
            include_kmeans=False,
            on_run=lambda: calls.append(1),
            items=[SuiteInstance(two_cluster_mdvrp)],
        )
        assert [r.kind for r in rows] == ["run", "run", "average", "best"]
        assert len(calls) == 2
        runs = rows[:2]
        assert [r.seed for r in runs] == [run_seed(3, 0, 0), run_seed(3, 0, 1)]
        assert runs[0].nda_cost is not None
        assert runs[0].nda_cost == runs[1].nda_cost
        assert runs[0].kmeans_cost is None
        assert runs[0].g_n == pytest.approx(
            (runs[0].cost - runs[0].nda_cost) / runs[0].nda_cost * 100
        )
        assert runs[0].g_v is None

    def test_kmeans_baseline(
        self, two_cluster_mdvrp: MdvrpInstance, fast_config: Config
    ) -> None:
        """Test the K-Means gap is reported per run."""
        config = fast_config.model_copy(
            update={"bench": BenchConfig(rng_seed=3, kmeans_restarts=2)}
        )
        rows = run_experiment(
            "T", 1, DaganzoEstimator(), config, items=[SuiteInstance(two_cluster_mdvrp)]
        )
        run = rows[0]
        assert run.kmeans_cost is not None
        assert run.kmeans_time is not None
        assert run.g_k == pytest.approx((run.cost - run.kmeans_cost) / run.kmeans_cost * 100)

    def test_clrp_against_best_known(
        self, small_clrp: ClrpInstance, fast_config: Config
    ) -> None:
        """Test CLRP runs report only the best-known gap."""
        rows = run_experiment(
            "barreto",
            1,
            DaganzoEstimator(),
            fast_config,
            items=[SuiteInstance(small_clrp, best_known=100.0)],
        )
        run = rows[0]
        assert run.nda_cost is None
        assert run.kmeans_cost is None
        assert run.g_v == pytest.approx(run.cost - 100.0)

    def test_empty_suite(self, fast_config: Config) -> None:
        """Test an empty suite gives no rows."""
        assert run_experiment("T", 3, DaganzoEstimator(), fast_config, items=[]) == []


class TestNdaInfeasibilityRate:
    """Tests for nda_infeasibility_rate."""

    def test_zero_count(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test zero copies give a zero rate."""
        assert nda_infeasibility_rate(two_cluster_mdvrp, 0, seed=0) == 0.0

    def test_rate(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test the rate is a reproducible share."""
        rate = nda_infeasibility_rate(two_cluster_mdvrp, 10, seed=1)
        assert 0.0 <= rate <= 1.0
        assert rate == nda_infeasibility_rate(two_cluster_mdvrp, 10, seed=1)
        assert np.isclose(rate * 10, round(rate * 10))

    def test_unlimited_fleets(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test without fleet limits the assignment is always feasible."""
        unlimited = MdvrpInstance(
            depots=two_cluster_mdvrp.depots,
            coords=two_cluster_mdvrp.coords,
            demands=two_cluster_mdvrp.demands,
            capacity=two_cluster_mdvrp.capacity,
        )
        assert nda_infeasibility_rate(unlimited, 5, seed=2) == 0.0
