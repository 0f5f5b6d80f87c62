"""Tests for routing a multi-depot assignment."""

import numpy as np
import pytest

from hvrp.config.schema import SolverConfig
from hvrp.core.exceptions import InfeasibleError
from hvrp.instances.types import MdvrpInstance
from hvrp.instances.validation import check_solution
from hvrp.routing.assignment import route_assignment


class TestRouteAssignment:
    """Tests for route_assignment."""

    def test_routes_each_depot(
        self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig
    ) -> None:
        """Test every depot is routed and the result is feasible."""
        genes = np.array([0, 0, 0, 0, 1, 1, 1, 1])
        solution = route_assignment(two_cluster_mdvrp, genes, fast_solver)
        assert len(solution.routes) == 2
        assert solution.assignment(8).tolist() == genes.tolist()
        cost = check_solution(two_cluster_mdvrp, solution)
        assert cost == pytest.approx(solution.total_cost)

    def test_overloaded_depot(
        self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig
    ) -> None:
        """Test a depot whose fleet cannot carry its load raises."""
        with pytest.raises(InfeasibleError):
            route_assignment(two_cluster_mdvrp, np.zeros(8, dtype=int), fast_solver)

    def test_idle_depot(self, fast_solver: SolverConfig) -> None:
        """Test depots without customers get no routes."""
        instance = MdvrpInstance(
            depots=np.array([[0.0, 0.0], [50.0, 0.0]]),
            coords=np.array([[1.0, 1.0], [2.0, 2.0]]),
            demands=[1, 1],
            capacity=5,
        )
        solution = route_assignment(instance, np.array([1, 1]), fast_solver)
        assert solution.routes[0] == ()
        assert solution.n_routes == 1
