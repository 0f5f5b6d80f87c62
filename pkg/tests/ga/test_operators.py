"""Tests for seeding, repair, selection and mutation operators."""

import numpy as np
import pytest

from hvrp.config.schema import GaConfig
from hvrp.ga.operators import (
    crossover,
    mutate,
    nearest_depot_assignment,
    neighbor_depot_assignment,
    repair,
    second_nearest_assignment,
    select_parents,
    targeted_assignments,
    targeted_mutation,
    tournament,
)
from hvrp.ga.population import load_excess
from hvrp.instances.types import MdvrpInstance


@pytest.fixture
def three_depots() -> MdvrpInstance:
    """Depots on a line; customer 0 is equidistant from depots 0 and 1."""
    return MdvrpInstance(
        depots=np.array([[0.0, 0.0], [10.0, 0.0], [30.0, 0.0]]),
        coords=np.array([[5.0, 0.0], [9.0, 1.0], [29.0, 0.0], [26.0, 1.0]]),
        demands=[1, 1, 1, 1],
        capacity=5,
    )


class TestSeeds:
    """Tests for geometry-driven seed chromosomes."""

    def test_nearest_depot_tie(self, three_depots: MdvrpInstance) -> None:
        """Test ties go to the lower depot index."""
        assert nearest_depot_assignment(three_depots).tolist() == [0, 1, 2, 2]

    def test_neighbor_depot(self, three_depots: MdvrpInstance) -> None:
        """Test each customer takes its nearest customer's nearest depot."""
        assert neighbor_depot_assignment(three_depots).tolist() == [1, 0, 2, 2]

    def test_second_nearest(self, three_depots: MdvrpInstance) -> None:
        """Test the second-closest depot."""
        assert second_nearest_assignment(three_depots).tolist() == [1, 0, 1, 1]

    def test_targeted_count(
        self, three_depots: MdvrpInstance, two_cluster_mdvrp: MdvrpInstance
    ) -> None:
        """Test the second-nearest seed needs more than two depots."""
        assert len(targeted_assignments(three_depots)) == 3
        assert len(targeted_assignments(two_cluster_mdvrp)) == 2


class TestRepair:
    """Tests for repair."""

    def test_removes_overload(self, rng: np.random.Generator) -> None:
        """Test repaired chromosomes respect every depot limit."""
        demands = np.array([3, 3, 3, 3, 3, 3, 3, 3])
        limits = np.array([12.0, 12.0])
        genes = rng.integers(0, 2, size=(30, 8))
        repaired, aborted = repair(genes, demands, limits, 1.0, rng)
        assert not aborted.any()
        assert np.all(load_excess(repaired, demands, limits) == 0)

    def test_input_untouched(self, rng: np.random.Generator) -> None:
        """Test the input matrix is not modified."""
        genes = np.zeros((1, 4), dtype=np.int64)
        repair(genes, np.array([2, 2, 2, 2]), np.array([4.0, 4.0]), 1.0, rng)
        assert genes.tolist() == [[0, 0, 0, 0]]

    def test_probability_zero(self, rng: np.random.Generator) -> None:
        """Test nothing is repaired with p_repair 0."""
        genes = np.zeros((1, 4), dtype=np.int64)
        repaired, _ = repair(genes, np.array([2, 2, 2, 2]), np.array([4.0, 4.0]), 0.0, rng)
        assert repaired.tolist() == [[0, 0, 0, 0]]

    def test_aborts_without_room(self, rng: np.random.Generator) -> None:
        """Test repair gives up when no customer fits elsewhere."""
        genes = np.zeros((1, 3), dtype=np.int64)
        _, aborted = repair(genes, np.array([5, 5, 5]), np.array([6.0, 4.0]), 1.0, rng)
        assert aborted.tolist() == [True]

    def test_prefers_used_depots(self, rng: np.random.Generator) -> None:
        """Test customers move to open depots before opening another."""
        genes = np.array([[0, 0, 0, 1]])
        limits = np.array([4.0, 10.0, 10.0])
        repaired, _ = repair(genes, np.array([2, 2, 2, 2]), limits, 1.0, rng, prefer_used=True)
        assert 2 not in repaired[0]
        assert load_excess(repaired, np.array([2, 2, 2, 2]), limits)[0] == 0


class TestSelection:
    """Tests for tournaments and crossover."""

    def test_tournament_exclude(self, rng: np.random.Generator) -> None:
        """Test the excluded index never wins."""
        fitness = np.array([0.0, 1.0])
        assert all(tournament(fitness, rng, exclude=0) == 1 for _ in range(10))

    def test_distinct_parents(self, rng: np.random.Generator) -> None:
        """Test the two parents differ."""
        fitness = np.array([0.3, 0.1, 0.2, 0.9])
        for _ in range(20):
            first, second = select_parents(fitness, rng)
            assert first != second

    def test_crossover_genes_from_parents(self, rng: np.random.Generator) -> None:
        """Test every child gene comes from one of the parents."""
        a, b = np.zeros(50, dtype=np.int64), np.ones(50, dtype=np.int64)
        child = crossover(a, b, rng)
        assert set(child.tolist()) == {0, 1}


class TestMutation:
    """Tests for random and targeted mutation."""

    def test_flip_changes_depot(self, rng: np.random.Generator) -> None:
        """Test FLIP moves one gene to a different depot."""
        genes = np.zeros((1, 20), dtype=np.int64)
        config = GaConfig(p_flip=1.0, mutation_fraction=0.05)
        mutated = mutate(genes, np.zeros(1), config, 3, rng)
        assert np.count_nonzero(mutated != genes) == 1

    def test_only_best_third(self, rng: np.random.Generator) -> None:
        """Test only the fittest third is mutated."""
        genes = np.zeros((6, 20), dtype=np.int64)
        fitness = np.array([5.0, 0.0, 4.0, 1.0, 3.0, 2.0])
        mutated = mutate(genes, fitness, GaConfig(p_flip=1.0), 2, rng)
        changed = np.flatnonzero((mutated != genes).any(axis=1))
        assert changed.tolist() == [1, 3]

    def test_swap_keeps_multiset(self, rng: np.random.Generator) -> None:
        """Test SWAP only exchanges genes."""
        genes = np.array([[0, 1, 2, 0, 1, 2, 0, 1, 2, 0]])
        mutated = mutate(genes, np.zeros(1), GaConfig(p_flip=0.0, mutation_fraction=0.3), 3, rng)
        assert sorted(mutated[0].tolist()) == sorted(genes[0].tolist())

    def test_targeted_copies_elite(self, rng: np.random.Generator) -> None:
        """Test elite genes are copied onto selected chromosomes."""
        genes = np.zeros((4, 10), dtype=np.int64)
        elites = np.ones((1, 10), dtype=np.int64)
        mutated = targeted_mutation(genes, np.zeros(4), elites, 0.25, 0.3, rng)
        assert mutated.sum() == 3
        assert genes.sum() == 0
