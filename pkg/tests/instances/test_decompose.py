"""Tests for splitting an MDVRP into per-depot subproblems."""

import numpy as np
import pytest

from hvrp.core.exceptions import InstanceError
from hvrp.instances.decompose import decompose, depot_loads, validate_assignment
from hvrp.instances.types import MdvrpInstance

SPLIT = np.array([0, 0, 0, 0, 1, 1, 1, 1])


class TestDecompose:
    """Tests for decompose and its helpers."""

    def test_decompose_by_depot(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test each serving depot yields one subproblem with global ids."""
        parts = decompose(two_cluster_mdvrp, SPLIT)
        assert [p.depot_id for p in parts] == [0, 1]
        assert parts[1].customer_ids.tolist() == [4, 5, 6, 7]  # type: ignore[union-attr]
        assert parts[1].depot.tolist() == [100.0, 0.0]
        assert parts[0].fleet_limit == 2
        assert parts[0].name == "two-cluster/d0"

    def test_idle_depot_skipped(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test depots without customers get no subproblem."""
        parts = decompose(two_cluster_mdvrp, np.ones(8, dtype=int))
        assert len(parts) == 1
        assert parts[0].depot_id == 1
        assert parts[0].n_customers == 8

    def test_depot_loads(self, two_cluster_mdvrp: MdvrpInstance) -> None:
        """Test loads sum demands per depot."""
        assert depot_loads(two_cluster_mdvrp, SPLIT).tolist() == [12.0, 12.0]

    @pytest.mark.parametrize(
        "assignment",
        [[0, 1], [0, 0, 0, 0, 1, 1, 1, 2], [0, 0, 0, 0, 1, 1, 1, -1]],
    )
    def test_invalid_assignment(
        self, two_cluster_mdvrp: MdvrpInstance, assignment: list[int]
    ) -> None:
        """Test wrong lengths and depot indices are rejected."""
        with pytest.raises(InstanceError):
            validate_assignment(two_cluster_mdvrp, np.array(assignment))
