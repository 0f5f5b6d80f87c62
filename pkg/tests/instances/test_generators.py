"""Tests for random instance generators."""

import numpy as np
import pytest

from hvrp.core.exceptions import InstanceError
from hvrp.instances.generators import (
    customer_positions,
    fleet_size,
    generate_clrp,
    generate_cvrp,
    generate_mdvrp,
    quadrant_demand,
    quadrant_of,
)
from hvrp.instances.types import InstanceSpec


class TestQuadrants:
    """Tests for quadrant numbering and quadrant demands."""

    @pytest.mark.parametrize(
        ("point", "quadrant"),
        [
            ((600, 600), 1),
            ((400, 600), 2),
            ((400, 400), 3),
            ((600, 400), 4),
            ((500, 500), 1),
            ((500, 400), 3),
            ((700, 500), 1),
        ],
    )
    def test_quadrant_of(self, point: tuple[int, int], quadrant: int) -> None:
        """Test quadrants and the axis tie rule."""
        assert quadrant_of(np.array(point), (500, 500)) == quadrant

    def test_quadrant_demand_ranges(self, rng: np.random.Generator) -> None:
        """Test odd quadrants draw large demands and even quadrants small ones."""
        odd = [quadrant_demand(np.array([900, 900]), rng) for _ in range(200)]
        even = [quadrant_demand(np.array([100, 900]), rng) for _ in range(200)]
        assert min(odd) >= 51 and max(odd) <= 100
        assert min(even) >= 1 and max(even) <= 50


class TestPositions:
    """Tests for customer placement."""

    @pytest.mark.parametrize("positioning", ["R", "C", "RC"])
    def test_positions_on_grid(self, positioning: str, rng: np.random.Generator) -> None:
        """Test every positioning yields n integer points on the grid."""
        points = customer_positions(50, positioning, 100, rng)  # type: ignore[arg-type]
        assert points.shape == (50, 2)
        assert points.min() >= 0 and points.max() <= 100
        assert np.all(points == np.round(points))


class TestGenerators:
    """Tests for the CVRP, MDVRP and CLRP generators."""

    def test_cvrp_is_deterministic(self) -> None:
        """Test the same seed gives the same instance."""
        spec = InstanceSpec(n_customers=(20, 30), seed=5)
        first, second = generate_cvrp(spec), generate_cvrp(spec)
        assert np.array_equal(first.coords, second.coords)
        assert np.array_equal(first.demands, second.demands)
        assert not np.array_equal(generate_cvrp(spec, rng_seed=6).coords, first.coords)

    def test_cvrp_capacity(self) -> None:
        """Test the fixed capacity is used and never below the largest demand."""
        spec = InstanceSpec(n_customers=(15, 15), vehicle_capacity=40)
        instance = generate_cvrp(spec)
        assert instance.capacity == max(40, int(instance.demands.max()))
        assert 1 <= instance.demands.min() and instance.demands.max() <= 100

    def test_unitary_demands(self) -> None:
        """Test unitary demands are all one."""
        instance = generate_cvrp(InstanceSpec(n_customers=(10, 10), demand_model="unitary"))
        assert instance.demands.tolist() == [1] * 10

    def test_mdvrp_fleet_covers_demand(self) -> None:
        """Test per-depot fleets follow the slack rule."""
        spec = InstanceSpec(n_customers=(60, 60), n_depots=(3, 3), positioning="C")
        instance = generate_mdvrp(spec)
        assert instance.n_depots == 3 and instance.n_customers == 60
        expected = fleet_size(instance.total_demand, 3, instance.capacity, 1.2)
        fleet = instance.fleet_sizes
        assert fleet is not None
        assert fleet.tolist() == [expected] * 3
        assert fleet.sum() * instance.capacity >= instance.total_demand

    def test_mdvrp_requires_two_depots(self) -> None:
        """Test a one-depot draw is rejected."""
        with pytest.raises(InstanceError, match="at least two depots"):
            generate_mdvrp(InstanceSpec(n_depots=(1, 1)))

    def test_subproblem_range_enforced(self) -> None:
        """Test N/D outside the configured range is rejected when enforced."""
        spec = InstanceSpec(
            n_customers=(10, 10), n_depots=(2, 2), enforce_subproblem_range=True
        )
        with pytest.raises(InstanceError, match="subproblem size"):
            generate_mdvrp(spec)

    def test_fleet_size(self) -> None:
        """Test fleet size rounds up."""
        assert fleet_size(900, 2, 100, 1.2) == 6
        assert fleet_size(1000, 2, 100, 1.0) == 5
        assert fleet_size(1001, 2, 100, 1.0) == 6

    def test_clrp_capacities_cover_demand(self) -> None:
        """Test opening every depot covers total demand."""
        spec = InstanceSpec(n_customers=(40, 40), n_depots=(4, 4), seed=3)
        instance = generate_clrp(spec)
        assert instance.depot_capacities.sum() >= instance.total_demand
        assert np.all(instance.opening_costs >= 500)
        assert instance.route_cost == 100.0
        assert instance.name.startswith("clrp-")
