"""Tests for routing candidates and the end-to-end MDVRP solve."""

import itertools
import json
import math
from collections.abc import Sequence

import numpy as np
import pytest

from hvrp.config.schema import GaConfig, SizeBucket, SolverConfig
from hvrp.core.exceptions import InfeasibleError
from hvrp.estimators import DaganzoEstimator, OracleEstimator
from hvrp.ga.evolve import Candidates, evolve
from hvrp.ga.operators import nearest_depot_assignment
from hvrp.ga.problem import AssignmentProblem
from hvrp.ga.solve import SolveResult, finalize, route_records, solve_mdvrp
from hvrp.instances.decompose import subproblem
from hvrp.instances.generators import generate_mdvrp
from hvrp.instances.types import CvrpInstance, InstanceSpec, MdvrpInstance
from hvrp.instances.validation import check_solution
from hvrp.routing import route_assignment, solve_exact, subset_costs


class _SubsetTableEstimator:
    """Exact subproblem costs looked up from per-depot subset tables."""

    name = "subset-table"

    def __init__(self, instance: MdvrpInstance) -> None:
        everyone = np.arange(instance.n_customers)
        self.tables = [
            np.array(subset_costs(subproblem(instance, depot, everyone, with_fleet_limit=False)))
            for depot in range(instance.n_depots)
        ]

    def estimate_batch(self, instances: Sequence[CvrpInstance]) -> np.ndarray:
        costs = []
        for inst in instances:
            mask = sum(1 << int(c) for c in inst.customer_ids)
            costs.append(self.tables[inst.depot_id][mask])
        return np.array(costs, dtype=np.float64)


def _overloaded_only(instance: MdvrpInstance) -> Candidates:
    genes = np.zeros((1, instance.n_customers), dtype=np.int64)
    return Candidates(genes=genes, costs=np.array([1.0]), overloads=np.array([12.0]))


class TestFinalize:
    """Tests for finalize."""

    def test_only_overloaded_candidates(
        self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig
    ) -> None:
        """Test overloaded candidates are never routed."""
        problem = AssignmentProblem(two_cluster_mdvrp, DaganzoEstimator())
        config = GaConfig(inject_nda=False)
        with pytest.raises(InfeasibleError) as exc_info:
            finalize(problem, _overloaded_only(two_cluster_mdvrp), config, fast_solver)
        assert exc_info.value.bound == "fleet_limit"

    def test_nda_injected(
        self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig
    ) -> None:
        """Test the nearest-depot assignment is routed as a fallback."""
        problem = AssignmentProblem(two_cluster_mdvrp, DaganzoEstimator())
        final = finalize(problem, _overloaded_only(two_cluster_mdvrp), GaConfig(), fast_solver)
        nda = nearest_depot_assignment(two_cluster_mdvrp)
        assert np.array_equal(final.assignment, nda)
        assert final.routed == 2
        assert final.total_cost == pytest.approx(check_solution(two_cluster_mdvrp, final.solution))

    def test_routes_best_candidate(
        self,
        two_cluster_mdvrp: MdvrpInstance,
        fast_ga: GaConfig,
        fast_solver: SolverConfig,
    ) -> None:
        """Test the result is feasible and no worse than routing the seed."""
        problem = AssignmentProblem(two_cluster_mdvrp, DaganzoEstimator())
        candidates = evolve(problem, fast_ga)
        final = finalize(problem, candidates, fast_ga, fast_solver)
        nda = nearest_depot_assignment(two_cluster_mdvrp)
        seed_cost = route_assignment(two_cluster_mdvrp, nda, fast_solver).total_cost
        assert final.total_cost <= seed_cost + 1e-9
        assert final.solution.opening_cost == 0.0
        check_solution(two_cluster_mdvrp, final.solution)

    def test_bucket_limit_ignored_in_iterations_mode(
        self, two_cluster_mdvrp: MdvrpInstance, fast_ga: GaConfig, fast_solver: SolverConfig
    ) -> None:
        """Test iterations mode routes identically under any bucket time limit."""
        problem = AssignmentProblem(two_cluster_mdvrp, DaganzoEstimator())
        candidates = evolve(problem, fast_ga)
        results = [
            finalize(
                problem,
                candidates,
                fast_ga,
                fast_solver,
                [SizeBucket(lower=0, upper=math.inf, batch_size=8, time_limit=limit)],
            )
            for limit in (1e-9, 100.0)
        ]
        assert results[0].total_cost == results[1].total_cost
        assert np.array_equal(results[0].assignment, results[1].assignment)


class TestSolveMdvrp:
    """Tests for solve_mdvrp."""

    def test_result(
        self,
        two_cluster_mdvrp: MdvrpInstance,
        fast_ga: GaConfig,
        fast_solver: SolverConfig,
    ) -> None:
        """Test the result describes a feasible solution."""
        result = solve_mdvrp(two_cluster_mdvrp, DaganzoEstimator(), fast_ga, fast_solver)
        assert result.instance == "two-cluster"
        assert (result.n_customers, result.n_depots) == (8, 2)
        assert len(result.assignment) == 8
        assert result.total_cost == pytest.approx(result.routing_cost)
        assert result.n_routes == len(result.routes)
        assert result.gancp_time >= 0
        cost = check_solution(two_cluster_mdvrp, result.to_solution())
        assert cost == pytest.approx(result.total_cost)

    def test_json_excludes_timings(
        self,
        two_cluster_mdvrp: MdvrpInstance,
        fast_ga: GaConfig,
        fast_solver: SolverConfig,
    ) -> None:
        """Test equal runs serialize identically."""
        first = solve_mdvrp(two_cluster_mdvrp, DaganzoEstimator(), fast_ga, fast_solver)
        second = solve_mdvrp(two_cluster_mdvrp, DaganzoEstimator(), fast_ga, fast_solver)
        payload = json.loads(first.model_dump_json())
        assert "gancp_time" not in payload
        assert "routing_time" not in payload
        assert first.model_dump_json() == second.model_dump_json()
        assert SolveResult.model_validate(payload).total_cost == first.total_cost

    def test_route_records(
        self, two_cluster_mdvrp: MdvrpInstance, fast_solver: SolverConfig
    ) -> None:
        """Test records keep the serving depot of every route."""
        nda = nearest_depot_assignment(two_cluster_mdvrp)
        solution = route_assignment(two_cluster_mdvrp, nda, fast_solver)
        records = route_records(solution)
        assert len(records) == solution.n_routes
        for record in records:
            assert all(nda[c] == record.depot for c in record.customers)


@pytest.mark.slow
class TestSearchOptimality:
    """Tests the search against exhaustive enumeration."""

    def test_matches_brute_force(
        self, two_cluster_mdvrp: MdvrpInstance, fast_ga: GaConfig
    ) -> None:
        """Test the top candidate is the cheapest feasible assignment."""
        estimator = OracleEstimator(mode="exact")
        candidates = evolve(AssignmentProblem(two_cluster_mdvrp, estimator), fast_ga)

        costs = []
        for first in itertools.combinations(range(8), 4):
            genes = np.ones(8, dtype=np.int64)
            genes[list(first)] = 0
            costs.append(
                sum(
                    solve_exact(
                        subproblem(
                            two_cluster_mdvrp,
                            depot,
                            np.flatnonzero(genes == depot),
                            with_fleet_limit=False,
                        )
                    ).cost
                    for depot in (0, 1)
                )
            )
        assert len(costs) == 70
        assert candidates.overloads[0] == 0
        assert candidates.costs[0] == pytest.approx(min(costs))

    def test_finds_enumerated_optimum_on_twelve_customers(self) -> None:
        """Test the top candidate is the feasible optimum of all 2^12 assignments."""
        spec = InstanceSpec(n_customers=(12, 12), n_depots=(2, 2))
        masks = np.arange(1 << 12)
        genes = (masks[:, None] >> np.arange(12)) & 1
        hits = 0
        for seed in range(20):
            instance = generate_mdvrp(spec, rng_seed=seed)
            estimator = _SubsetTableEstimator(instance)
            problem = AssignmentProblem(instance, estimator)
            candidates = evolve(problem, GaConfig(rng_seed=seed))

            costs = estimator.tables[0][masks ^ (masks.size - 1)] + estimator.tables[1][masks]
            optimum = costs[problem.overloads(genes) == 0].min()
            if candidates.overloads[0] == 0 and candidates.costs[0] <= optimum + 1e-6:
                hits += 1
        assert hits >= 18
