"""The generation loop over predicted decomposition costs."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from hvrp.config.schema import GaConfig
from hvrp.ga.operators import crossover, mutate, repair, select_parents, targeted_mutation
from hvrp.ga.population import Population
from hvrp.ga.problem import AssignmentProblem

logger = logging.getLogger(__name__)

_IMPROVEMENT = 1e-9


@dataclass(frozen=True, eq=False)
class Candidates:
    """Decompositions ranked by (has overload, predicted cost).

    ``best_costs`` holds the best ranked cost after initialization and after
    every generation.
    """

    genes: np.ndarray
    costs: np.ndarray
    overloads: np.ndarray
    generations: int = 0
    best_costs: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.genes)


def _rank_key(population: Population) -> tuple[bool, float]:
    best = population.ranking()[0]
    return bool(population.overloads[best] > 0), float(population.costs[best])


def _improved(new: tuple[bool, float], old: tuple[bool, float]) -> bool:
    if new[0] != old[0]:
        return old[0]
    return new[1] < old[1] - _IMPROVEMENT


def _next_generation(
    problem: AssignmentProblem,
    population: Population,
    elites_for_mutation: np.ndarray,
    config: GaConfig,
    rng: np.random.Generator,
) -> Population:
    weights = (config.w1, config.w2, config.w3)
    instance = problem.instance
    fitness = population.fitness(*weights)
    children = np.array(
        [
            crossover(*population.genes[list(select_parents(fitness, rng))], rng)
            for _ in range(config.population_low)
        ]
    )
    children, _ = repair(
        children,
        instance.demands,
        problem.limits,
        config.p_repair,
        rng,
        problem.prefer_used_depots,
    )
    offspring = problem.evaluate(children)
    offspring_fitness = offspring.fitness(*weights)
    genes = offspring.genes
    if problem.random_mutations:
        genes = mutate(genes, offspring_fitness, config, instance.n_depots, rng)
    genes = targeted_mutation(
        genes,
        offspring_fitness,
        elites_for_mutation,
        config.targeted_fraction,
        config.gene_copy_fraction,
        rng,
    )
    offspring = problem.evaluate(genes)

    n_elite = max(1, math.ceil(config.elite_fraction * population.size))
    elites = population.select(population.ranking()[:n_elite])
    pool = Population.merge(elites, offspring, population)
    order = np.argsort(pool.fitness(*weights), kind="stable")
    rest = [int(i) for i in order if i >= elites.size]
    keep = list(range(elites.size)) + rest[: max(0, config.population_high - elites.size)]
    return pool.select(keep)


def evolve(problem: AssignmentProblem, config: GaConfig | None = None) -> Candidates:
    """Search depot assignments with a genetic algorithm on predicted costs.

    The initial population holds the targeted seeds and random chromosomes up
    to ``population_high``; it is repaired and deduplicated before prediction.
    Each generation breeds ``population_low`` children by binary tournament
    and uniform crossover, repairs and mutates them, and keeps the elites plus
    the fittest of children and parents up to ``population_high``. The loop
    stops after ``generations`` generations or ``stall_limit`` generations
    without a better ranked cost.

    Args:
        problem: Assignment search space with its cost predictor
        config: GA settings (defaults when None)

    Returns:
        Final population merged with the best chromosome of every generation,
        ranked by (has overload, predicted cost)
    """
    config = config or GaConfig()
    rng = np.random.default_rng(config.rng_seed)
    instance = problem.instance

    genes = problem.initial_population(config.population_high, rng)
    genes, _ = repair(
        genes,
        instance.demands,
        problem.limits,
        config.p_repair,
        rng,
        problem.prefer_used_depots,
    )
    population = problem.evaluate(genes)
    elites_for_mutation = problem.mutation_elites()
    archive = population.select(population.ranking()[:1])
    best = _rank_key(population)
    best_costs = [best[1]]

    generation = 0
    stalled = 0
    while (
        generation < config.generations
        and stalled < config.stall_limit
        and population.size >= 2
    ):
        population = _next_generation(
            problem, population, elites_for_mutation, config, rng
        )
        archive = Population.merge(archive, population.select(population.ranking()[:1]))
        generation += 1
        key = _rank_key(population)
        if _improved(key, best):
            best, stalled = key, 0
        else:
            stalled += 1
        best_costs.append(key[1])
        logger.debug(
            "Generation %d: best=%.4f overloaded=%s size=%d stall=%d cached=%d",
            generation,
            key[1],
            key[0],
            population.size,
            stalled,
            len(problem.cache),
        )

    final = Population.merge(population, archive)
    final = final.select(final.ranking())
    return Candidates(
        genes=final.genes,
        costs=final.costs,
        overloads=final.overloads,
        generations=generation,
        best_costs=best_costs,
    )
