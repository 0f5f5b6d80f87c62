"""Tests for CVRP results and the route evaluator."""

import json

import numpy as np
import pytest

from hvrp.core.exceptions import FeasibilityError
from hvrp.instances.types import CvrpInstance
from hvrp.routing.solution import (
    CvrpResult,
    cvrp_report,
    evaluate_solution,
    make_result,
    tour_cost,
)


class TestMakeResult:
    """Tests for make_result and tour_cost."""

    def test_tour_cost(self, tiny_cvrp: CvrpInstance) -> None:
        """Test the depot closes both ends of a tour."""
        assert tour_cost(tiny_cvrp.distances, [1]) == pytest.approx(20.0)
        assert tour_cost(tiny_cvrp.distances, []) == 0.0

    def test_routes_use_global_ids(self, tiny_cvrp: CvrpInstance) -> None:
        """Test node tours map back to customer ids."""
        sub = CvrpInstance(
            depot=tiny_cvrp.depot,
            coords=tiny_cvrp.coords,
            demands=tiny_cvrp.demands,
            capacity=10,
            customer_ids=np.arange(100, 106),
        )
        result = make_result(sub, [[1, 2], [], [3, 4], [5, 6]])
        assert result.n_routes == 3
        assert result.routes[0].customers == (100, 101)
        assert result.routes[1].load == 7
        assert result.cost == pytest.approx(sum(r.cost for r in result.routes))


class TestEvaluateSolution:
    """Tests for evaluate_solution."""

    def test_matches_make_result(self, tiny_cvrp: CvrpInstance) -> None:
        """Test recomputed costs agree, with or without depot ends."""
        tours = [[1, 2], [3, 4], [5, 6]]
        expected = make_result(tiny_cvrp, tours).cost
        assert evaluate_solution(tiny_cvrp, tours) == pytest.approx(expected)
        with_depot = [[0, *tour, 0] for tour in tours]
        assert evaluate_solution(tiny_cvrp, with_depot) == pytest.approx(expected)

    @pytest.mark.parametrize(
        ("routes", "constraint"),
        [
            ([[1, 2], [3, 4], [5, 6, 1]], "duplicate"),
            ([[1, 2, 3], [4], [5, 6]], "capacity"),
            ([[1, 2], [3, 4], [5]], "coverage"),
            ([[1, 2], [3, 4], [5, 7]], "index"),
            ([[0, 1, 2], [3, 4], [5, 6]], "depot"),
            ([[1, 0, 2], [3, 4], [5, 6]], "depot"),
        ],
    )
    def test_violations(
        self, tiny_cvrp: CvrpInstance, routes: list[list[int]], constraint: str
    ) -> None:
        """Test each violated constraint is named."""
        with pytest.raises(FeasibilityError) as exc_info:
            evaluate_solution(tiny_cvrp, routes)
        assert exc_info.value.constraint == constraint

    def test_partial_solution(self, tiny_cvrp: CvrpInstance) -> None:
        """Test coverage is optional."""
        cost = evaluate_solution(tiny_cvrp, [[1]], require_all=False)
        assert cost == pytest.approx(20.0)

    def test_fleet_limit(self, tiny_cvrp: CvrpInstance) -> None:
        """Test more routes than the fleet limit are rejected."""
        limited = CvrpInstance(
            depot=tiny_cvrp.depot,
            coords=tiny_cvrp.coords,
            demands=tiny_cvrp.demands,
            capacity=10,
            fleet_limit=2,
        )
        with pytest.raises(FeasibilityError) as exc_info:
            evaluate_solution(limited, [[1, 2], [3, 4], [5, 6]])
        assert exc_info.value.constraint == "fleet"


class TestCvrpReport:
    """Tests for the serializable report."""

    def test_elapsed_excluded(self, tiny_cvrp: CvrpInstance) -> None:
        """Test wall time is not serialized."""
        result = make_result(tiny_cvrp, [[1, 2], [3, 4], [5, 6]], elapsed=1.5)
        report = cvrp_report(tiny_cvrp, result)
        data = json.loads(report.model_dump_json())
        assert "elapsed" not in data
        assert data["tours"] == [[1, 2], [3, 4], [5, 6]]
        assert report.elapsed == 1.5
        assert isinstance(result, CvrpResult)
