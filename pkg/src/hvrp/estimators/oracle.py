"""CostEstimator that actually solves each CVRP."""

from collections.abc import Sequence
from typing import Literal

import numpy as np

from hvrp.config.schema import SolverConfig
from hvrp.instances.types import CvrpInstance
from hvrp.routing import MAX_EXACT_CUSTOMERS, solve_exact, solve_heuristic


class OracleEstimator:
    """Estimate costs by solving: exactly (tiny instances) or heuristically."""

    def __init__(
        self,
        mode: Literal["exact", "heuristic"] = "heuristic",
        solver_config: SolverConfig | None = None,
        max_exact_customers: int = MAX_EXACT_CUSTOMERS,
    ) -> None:
        """Configure the oracle.

        Args:
            mode: Which solver answers
            solver_config: Heuristic settings (iteration mode keeps it pure)
            max_exact_customers: Size guard passed to the exact solver
        """
        self.mode = mode
        self.name = f"oracle-{mode}"
        self.solver_config = solver_config or SolverConfig()
        self.max_exact_customers = max_exact_customers

    def estimate(self, instance: CvrpInstance) -> float:
        """Solve one instance and return its cost."""
        if self.mode == "exact":
            return solve_exact(instance, self.max_exact_customers).cost
        return solve_heuristic(instance, self.solver_config).cost

    def estimate_batch(self, instances: Sequence[CvrpInstance]) -> np.ndarray:
        """Solve every instance in order."""
        return np.array([self.estimate(inst) for inst in instances], dtype=np.float64)
