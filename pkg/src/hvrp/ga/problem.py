"""The depot-assignment search space the genetic algorithm works on."""

import math

import numpy as np

from hvrp.estimators.base import CostEstimator
from hvrp.ga.operators import random_assignments, targeted_assignments
from hvrp.ga.population import Population, load_excess, unique_rows
from hvrp.instances.decompose import subproblem
from hvrp.instances.types import MdvrpInstance, RoutingSolution

SubproblemKey = tuple[int, bytes]


class PredictionCache:
    """Predicted routing cost per (depot, customer set).

    Chromosomes sharing a depot's customer set share its prediction; missing
    subproblems are predicted in one batch call per ``costs`` call.
    """

    def __init__(self, instance: MdvrpInstance, estimator: CostEstimator) -> None:
        """Create an empty cache for one instance."""
        self.instance = instance
        self.estimator = estimator
        self._costs: dict[SubproblemKey, float] = {}

    def __len__(self) -> int:
        return len(self._costs)

    def costs(self, genes: np.ndarray) -> np.ndarray:
        """Predicted MDVRP cost C(I), the sum over depots, per chromosome."""
        genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
        keys_per_row: list[list[SubproblemKey]] = []
        missing: dict[SubproblemKey, np.ndarray] = {}
        for row in genes:
            keys = []
            for depot in np.unique(row):
                members = np.flatnonzero(row == depot)
                key = (int(depot), members.tobytes())
                keys.append(key)
                if key not in self._costs and key not in missing:
                    missing[key] = members
            keys_per_row.append(keys)
        if missing:
            batch = [
                subproblem(self.instance, depot, members, with_fleet_limit=False)
                for (depot, _), members in missing.items()
            ]
            predicted = self.estimator.estimate_batch(batch)
            self._costs.update(zip(missing, (float(c) for c in predicted), strict=True))
        return np.array(
            [math.fsum(self._costs[key] for key in keys) for keys in keys_per_row],
            dtype=np.float64,
        )


class AssignmentProblem:
    """MDVRP assignments: any depot per customer, depot load limited by m_d * Q.

    Subclasses change the seeds, the load limits and the estimated cost to
    search other assignment problems with the same genetic algorithm.
    """

    prefer_used_depots = False
    random_mutations = True

    def __init__(self, instance: MdvrpInstance, estimator: CostEstimator) -> None:
        """Bind the instance and the routing-cost predictor."""
        self.instance = instance
        self.cache = PredictionCache(instance, estimator)

    @property
    def limits(self) -> np.ndarray:
        """Load limit per depot."""
        return self.instance.depot_capacity_limits

    def seeds(self) -> list[np.ndarray]:
        """Targeted chromosomes placed first in the initial population."""
        return targeted_assignments(self.instance)

    def mutation_elites(self) -> np.ndarray:
        """Chromosomes whose genes targeted mutation copies."""
        return np.array(self.seeds())

    def random_individuals(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Random chromosomes filling the initial population."""
        return random_assignments(
            count, self.instance.n_customers, self.instance.n_depots, rng
        )

    def initial_population(self, size: int, rng: np.random.Generator) -> np.ndarray:
        """Seeds followed by random chromosomes, ``size`` rows before dedup."""
        seeds = self.seeds()[:size]
        rows = [np.asarray(seed, dtype=np.int64) for seed in seeds]
        if size > len(rows):
            rows.extend(self.random_individuals(size - len(rows), rng))
        return np.array(rows, dtype=np.int64)

    def predicted_costs(self, genes: np.ndarray) -> np.ndarray:
        """Predicted routing cost per chromosome."""
        return self.cache.costs(genes)

    def estimated_costs(self, genes: np.ndarray) -> np.ndarray:
        """Cost the fitness minimizes; the predicted routing cost here."""
        return self.predicted_costs(genes)

    def overloads(self, genes: np.ndarray) -> np.ndarray:
        """Load above the depot limits per chromosome."""
        return load_excess(genes, self.instance.demands, self.limits)

    def evaluate(self, genes: np.ndarray) -> Population:
        """Deduplicate chromosomes and attach their costs and overloads."""
        n = self.instance.n_customers
        genes = unique_rows(np.asarray(genes, dtype=np.int64).reshape(-1, n))
        if len(genes) == 0:
            return Population(genes, np.empty(0), np.empty(0))
        return Population(genes, self.estimated_costs(genes), self.overloads(genes))

    def extra_cost(self, solution: RoutingSolution) -> float:
        """Cost a routed solution adds on top of its routes."""
        return 0.0
