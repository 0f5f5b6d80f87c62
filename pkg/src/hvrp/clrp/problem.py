"""Location-routing chromosomes: open depots plus customer assignments.

The depot-open vector is never stored; it is decoded from the assignment as
the set of depots serving at least one customer.
"""

from dataclasses import dataclass

import numpy as np

from hvrp.core.exceptions import InfeasibleError
from hvrp.estimators.base import CostEstimator
from hvrp.ga.operators import (
    nearest_depot_assignment,
    neighbor_depot_assignment,
    repair,
    targeted_mutation,
)
from hvrp.ga.population import depot_load_matrix, diversity_scores, fitness_scores
from hvrp.ga.problem import AssignmentProblem
from hvrp.instances.types import ClrpInstance, RoutingSolution
from hvrp.instances.validation import opening_cost


def open_depots(genes: np.ndarray, n_depots: int) -> np.ndarray:
    """Depot-open bits of every chromosome, shape (P, D)."""
    genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
    bits = np.zeros((len(genes), n_depots), dtype=bool)
    bits[np.repeat(np.arange(len(genes)), genes.shape[1]), genes.ravel()] = True
    return bits


def covers_demand(instance: ClrpInstance, genes: np.ndarray) -> np.ndarray:
    """Whether the open depots' capacity covers the total demand, per row."""
    capacity = open_depots(genes, instance.n_depots) @ instance.depot_capacities
    return capacity >= instance.total_demand


@dataclass(frozen=True, eq=False)
class ClrpFitnessTerms:
    """Fitness ingredients per chromosome."""

    routing: np.ndarray
    depot_opening: np.ndarray
    vehicle_opening: np.ndarray
    diversity: np.ndarray
    capacity_excess: np.ndarray

    @property
    def estimated_cost(self) -> np.ndarray:
        """Predicted routing plus depot and vehicle opening estimates."""
        return self.routing + self.depot_opening + self.vehicle_opening


class ClrpProblem(AssignmentProblem):
    """CLRP assignments limited by depot capacities W_d.

    The estimated cost adds the opening costs of the serving depots and the
    route cost times the vehicle lower bound ``ceil(l_d / Q)`` per depot.
    """

    prefer_used_depots = True
    random_mutations = False

    def __init__(
        self,
        instance: ClrpInstance,
        estimator: CostEstimator,
        random_mutations: bool = False,
    ) -> None:
        """Bind the instance, checking that its depots can carry the demand.

        Raises:
            InfeasibleError: If the total depot capacity is below the demand
        """
        if instance.depot_capacities.sum() < instance.total_demand:
            raise InfeasibleError(
                f"total depot capacity {instance.depot_capacities.sum():.0f} is "
                f"below the total demand {instance.total_demand}",
                bound="depot_capacity",
            )
        super().__init__(instance, estimator)
        self.clrp = instance
        self.random_mutations = random_mutations

    @property
    def limits(self) -> np.ndarray:
        """Depot capacities."""
        return self.clrp.depot_capacities

    def seeds(self) -> list[np.ndarray]:
        """Targeted seeds whose open depots cover the demand.

        Nearest depot, nearest neighbor's nearest depot, and one single-depot
        seed per depot able to serve every customer.
        """
        instance = self.clrp
        seeds = [nearest_depot_assignment(instance), neighbor_depot_assignment(instance)]
        for depot in np.flatnonzero(instance.depot_capacities >= instance.total_demand):
            seeds.append(np.full(instance.n_customers, depot, dtype=np.int64))
        return [seed for seed in seeds if covers_demand(instance, seed)[0]]

    def mutation_elites(self) -> np.ndarray:
        """Nearest depot and nearest neighbor's nearest depot."""
        return np.array(
            [nearest_depot_assignment(self.clrp), neighbor_depot_assignment(self.clrp)]
        )

    def random_individuals(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Random open sets covering the demand, customers spread over them.

        Each individual opens a random number of random depots, adds random
        closed depots until the open capacity covers the demand, and gives
        every open depot at least one customer.
        """
        instance = self.clrp
        n, d = instance.n_customers, instance.n_depots
        rows = np.empty((count, n), dtype=np.int64)
        for row in rows:
            order = rng.permutation(d)
            k = int(rng.integers(1, min(d, n) + 1))
            capacity = np.cumsum(instance.depot_capacities[order])
            needed = int(np.searchsorted(capacity, instance.total_demand)) + 1
            chosen = order[: min(max(k, needed), n, d)]
            customers = rng.permutation(n)
            row[customers[: len(chosen)]] = chosen
            row[customers[len(chosen) :]] = rng.choice(chosen, size=n - len(chosen))
        return rows

    def _cost_terms(
        self, genes: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        instance = self.clrp
        genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
        loads = depot_load_matrix(genes, instance.demands, instance.n_depots)
        vehicles = np.ceil(loads / instance.capacity).sum(axis=1)
        return (
            self.predicted_costs(genes),
            open_depots(genes, instance.n_depots) @ instance.opening_costs,
            instance.route_cost * vehicles,
            loads,
        )

    def terms(self, genes: np.ndarray) -> ClrpFitnessTerms:
        """Every fitness term of every chromosome."""
        routing, depot_opening, vehicle_opening, loads = self._cost_terms(genes)
        excess = np.clip(loads - self.clrp.depot_capacities, 0, None).sum(axis=1)
        return ClrpFitnessTerms(
            routing=routing,
            depot_opening=depot_opening,
            vehicle_opening=vehicle_opening,
            diversity=diversity_scores(np.atleast_2d(genes)),
            capacity_excess=excess,
        )

    def estimated_costs(self, genes: np.ndarray) -> np.ndarray:
        """Predicted routing plus opening estimates."""
        routing, depot_opening, vehicle_opening, _ = self._cost_terms(genes)
        return routing + depot_opening + vehicle_opening

    def extra_cost(self, solution: RoutingSolution) -> float:
        """Opening costs of serving depots and of every route."""
        return opening_cost(self.clrp, solution)


def clrp_fitness(
    problem: ClrpProblem, genes: np.ndarray, w1: float, w2: float, w3: float
) -> np.ndarray:
    """Fitness of a CLRP population, lower is better.

    ``w1 * E~ - w2 * delta~ + w3 * E~ * sum_d (l_d - W_d)^+`` with ``E`` the
    estimated cost and both terms min-max normalized over ``genes``.
    """
    terms = problem.terms(genes)
    return fitness_scores(
        terms.estimated_cost, terms.diversity, terms.capacity_excess, w1, w2, w3
    )


def clrp_repair(
    problem: ClrpProblem,
    genes: np.ndarray,
    p_repair: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Move customers off depots above capacity, preferring open depots."""
    return repair(
        genes,
        problem.clrp.demands,
        problem.limits,
        p_repair,
        rng,
        prefer_used=True,
    )


def clrp_targeted_mutation(
    problem: ClrpProblem,
    genes: np.ndarray,
    fitness: np.ndarray,
    fraction: float,
    gene_copy_fraction: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Reassign some customers to their nearest or neighbor's nearest depot."""
    return targeted_mutation(
        genes, fitness, problem.mutation_elites(), fraction, gene_copy_fraction, rng
    )

