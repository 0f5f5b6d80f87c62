"""Tests for the nearest-depot and K-Means baselines."""

import numpy as np
import pytest

from hvrp.bench.baselines import kmeans10, kmeans_assign, match_clusters, nda_assign, route_nda
from hvrp.config.schema import SolverConfig
from hvrp.core.exceptions import InfeasibleError
from hvrp.instances.types import MdvrpInstance
from hvrp.instances.validation import check_solution

SPLIT = [0, 0, 0, 0, 1, 1, 1, 1]


def _fleet(instance: MdvrpInstance, fleet_sizes: list[int]) -> MdvrpInstance:
    return MdvrpInstance(
        depots=instance.depots,
        coords=instance.coords,
        demands=instance.demands,
        capacity=instance.capacity,
        fleet_sizes=fleet_sizes,
        name=instance.name,
    )


class TestMatchClusters:
    """Tests for match_clusters."""

    def test_closest_pair_first(self) -> None:
        """Test pairs are fixed in order of distance."""
        centroids = np.array([[0.0, 0.0], [4.0, 0.0]])
        depots = np.array([[1.0, 0.0], [10.0, 0.0]])
        assert match_clusters(centroids, depots).tolist() == [0, 1]

    def test_permutation(self) -> None:
        """Test every cluster gets a distinct depot."""
        centroids = np.array([[99.0, 1.0], [1.0, 1.0], [50.0, 40.0]])
        depots = np.array([[0.0, 0.0], [50.0, 50.0], [100.0, 0.0]])
        assert match_clusters(centroids, depots).tolist() == [2, 0, 1]

    def test_fewer_clusters_than_depots(self) -> None:
        """Test unmatched depots are left out."""
        depot_of = match_clusters(np.array([[9.0, 0.0]]), np.array([[0.0, 0.0], [10.0, 0.0]]))
        assert depot_of.tolist() == [1]


class TestKmeansAssign:
    """Tests for kmeans_assign."""

    def test_separated_clusters(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test well separated groups map onto their own depots."""
        genes = kmeans_assign(two_cluster_mdvrp.coords, two_cluster_mdvrp.depots, seed=0)
        assert genes.tolist() == SPLIT

    def test_single_customer(self) -> None:
        """Test one customer forms one cluster at its nearest depot."""
        genes = kmeans_assign(
            np.array([[90.0, 0.0]]), np.array([[0.0, 0.0], [100.0, 0.0]]), seed=0
        )
        assert genes.tolist() == [1]


class TestRouteNda:
    """Tests for the routed nearest-depot baseline."""

    def test_routes(self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig) -> None:
        """Test the nearest-depot assignment routes feasibly."""
        result = route_nda(two_cluster_mdvrp, fast_solver)
        assert result is not None
        assert result.assignment.tolist() == nda_assign(two_cluster_mdvrp).tolist() == SPLIT
        assert result.cost == pytest.approx(check_solution(two_cluster_mdvrp, result.solution))

    def test_over_fleet(self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig) -> None:
        """Test None when a depot's fleet cannot carry its customers."""
        assert route_nda(_fleet(two_cluster_mdvrp, [1, 3]), fast_solver) is None


class TestKmeans10:
    """Tests for kmeans10."""

    def test_matches_nda_on_clusters(
        self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig
    ) -> None:
        """Test K-Means finds the cluster split."""
        result = kmeans10(two_cluster_mdvrp, seed=1, solver_config=fast_solver, restarts=2)
        nda = route_nda(two_cluster_mdvrp, fast_solver)
        assert nda is not None
        assert result.assignment.tolist() == SPLIT
        assert result.cost == pytest.approx(nda.cost)
        assert result.elapsed >= 0

    def test_infeasible(self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig) -> None:
        """Test no restart fitting the fleets raises."""
        with pytest.raises(InfeasibleError):
            kmeans10(
                _fleet(two_cluster_mdvrp, [1, 3]),
                seed=1,
                solver_config=fast_solver,
                restarts=2,
            )
