"""Shared pytest fixtures and configuration for all tests."""

import os
from collections.abc import Generator
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from hvrp.config.manager import ConfigManager
from hvrp.config.schema import GaConfig, PredictorConfig, SolverConfig, TrainConfig
from hvrp.instances.types import ClrpInstance, CvrpInstance, MdvrpInstance

BENCHMARK_DIR_VAR = "HVRP_BENCHMARK_DIR"


@pytest.fixture
def temp_config_dir(tmp_path: Path) -> Path:
    """Create a temporary config directory for testing.

    Args:
        tmp_path: pytest's built-in temporary directory fixture

    Returns:
        Path to temporary .hvrp config directory
    """
    config_dir = tmp_path / ".hvrp"
    config_dir.mkdir()
    return config_dir


@pytest.fixture
def mock_config_dir(temp_config_dir: Path) -> Generator[Path, None, None]:
    """Point ConfigManager at a temporary directory.

    Args:
        temp_config_dir: Temporary config directory fixture

    Yields:
        Path to mocked config directory
    """
    with (
        patch.object(ConfigManager, "CONFIG_DIR", temp_config_dir),
        patch.object(
            ConfigManager,
            "DEFAULT_CONFIG_FILE",
            temp_config_dir / "config.toml",
        ),
    ):
        yield temp_config_dir


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def tiny_cvrp() -> CvrpInstance:
    """Six customers around a depot at the origin, capacity 10."""
    return CvrpInstance(
        depot=np.array([0.0, 0.0]),
        coords=np.array(
            [[10, 0], [12, 3], [0, 10], [-2, 12], [-10, 0], [-12, -3]], dtype=float
        ),
        demands=np.array([4, 3, 5, 2, 4, 3]),
        capacity=10,
        name="tiny",
    )


@pytest.fixture
def two_cluster_mdvrp() -> MdvrpInstance:
    """Two depots 100 apart, each with four nearby customers."""
    return MdvrpInstance(
        depots=np.array([[0.0, 0.0], [100.0, 0.0]]),
        coords=np.array(
            [
                [5, 5],
                [-5, 5],
                [5, -5],
                [-5, -5],
                [95, 5],
                [105, 5],
                [95, -5],
                [105, -5],
            ],
            dtype=float,
        ),
        demands=np.array([3, 3, 3, 3, 3, 3, 3, 3]),
        capacity=6,
        fleet_sizes=np.array([2, 2]),
        name="two-cluster",
    )


@pytest.fixture
def small_clrp() -> ClrpInstance:
    """Three candidate depots; the middle one is expensive to open."""
    return ClrpInstance(
        depots=np.array([[0.0, 0.0], [50.0, 0.0], [100.0, 0.0]]),
        coords=np.array(
            [[5, 5], [-5, 5], [5, -5], [95, 5], [105, 5], [95, -5]], dtype=float
        ),
        demands=np.array([2, 2, 2, 2, 2, 2]),
        capacity=6,
        depot_capacities=np.array([20.0, 20.0, 20.0]),
        opening_costs=np.array([10.0, 1000.0, 10.0]),
        route_cost=5.0,
        name="small-clrp",
    )


@pytest.fixture
def fast_solver() -> SolverConfig:
    """Deterministic solver with a small iteration budget."""
    return SolverConfig(max_iterations=3, rng_seed=0)


@pytest.fixture
def fast_ga() -> GaConfig:
    """Small populations and few generations."""
    return GaConfig(
        population_low=12,
        population_high=20,
        generations=15,
        stall_limit=8,
        top_k=3,
        rng_seed=7,
    )


@pytest.fixture
def tiny_predictor() -> PredictorConfig:
    """Smallest useful predictor architecture."""
    return PredictorConfig(hidden_dim=8, n_heads=2, n_layers=1, ff_dim=16, knn=3)


@pytest.fixture
def quick_train() -> TrainConfig:
    """Two epochs with a fixed seed."""
    return TrainConfig(epochs=2, learning_rate=1e-3, batch_size=4, rng_seed=0)


@pytest.fixture
def benchmark_dir() -> Path:
    """Directory of external benchmark files; skips when not configured."""
    value = os.environ.get(BENCHMARK_DIR_VAR, "")
    if not value or not Path(value).is_dir():
        pytest.skip(f"{BENCHMARK_DIR_VAR} is not set")
    return Path(value)
