"""Seeding, repair, selection, crossover and mutation operators."""

import math

import numpy as np

from hvrp.config.schema import GaConfig
from hvrp.instances.types import MdvrpInstance


def nearest_depot_assignment(instance: MdvrpInstance) -> np.ndarray:
    """Every customer to its closest depot, ties to the lower depot index."""
    return np.argmin(instance.depot_distances, axis=1).astype(np.int64)


def neighbor_depot_assignment(instance: MdvrpInstance) -> np.ndarray:
    """Every customer to the nearest depot of its closest other customer."""
    nearest = nearest_depot_assignment(instance)
    if instance.n_customers < 2:
        return nearest
    distances = np.array(instance.customer_distances)
    np.fill_diagonal(distances, np.inf)
    return nearest[np.argmin(distances, axis=1)]


def second_nearest_assignment(instance: MdvrpInstance) -> np.ndarray:
    """Every customer to its second-closest depot."""
    order = np.argsort(instance.depot_distances, axis=1, kind="stable")
    return order[:, 1].astype(np.int64)


def targeted_assignments(instance: MdvrpInstance) -> list[np.ndarray]:
    """Geometry-driven seed chromosomes.

    Nearest depot and nearest neighbor's nearest depot always; second-nearest
    depot only with more than two depots.
    """
    seeds = [nearest_depot_assignment(instance), neighbor_depot_assignment(instance)]
    if instance.n_depots > 2:
        seeds.append(second_nearest_assignment(instance))
    return seeds


def random_assignments(
    count: int, n_customers: int, n_depots: int, rng: np.random.Generator
) -> np.ndarray:
    """Uniformly random chromosomes, shape (count, N)."""
    return rng.integers(0, n_depots, size=(count, n_customers), dtype=np.int64)


def repair(
    genes: np.ndarray,
    demands: np.ndarray,
    limits: np.ndarray,
    p_repair: float,
    rng: np.random.Generator,
    prefer_used: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """Move customers off overloaded depots.

    Each chromosome with a depot load above its limit is repaired with
    probability ``p_repair``: a random customer of a random overloaded depot is
    moved to a random depot that can take its demand, until no depot is
    overloaded. Customers are tried in random order; when none of them fits
    anywhere the repair of that chromosome is aborted.

    Args:
        genes: Chromosomes, shape (P, N); not modified
        demands: Customer demands
        limits: Load limit per depot
        p_repair: Probability of repairing an overloaded chromosome
        rng: Random generator
        prefer_used: Receive into depots already serving customers when any
            has room, opening an unused depot only otherwise

    Returns:
        (repaired chromosomes, aborted flag per chromosome)
    """
    genes = np.array(genes, dtype=np.int64)
    demands = np.asarray(demands)
    aborted = np.zeros(len(genes), dtype=bool)
    n_depots = len(limits)
    for index, row in enumerate(genes):
        loads = np.bincount(row, weights=demands, minlength=n_depots)
        if not np.any(loads > limits) or rng.random() >= p_repair:
            continue
        while True:
            overloaded = np.flatnonzero(loads > limits)
            if overloaded.size == 0:
                break
            moved = False
            for source in rng.permutation(overloaded):
                for customer in rng.permutation(np.flatnonzero(row == source)):
                    q = demands[customer]
                    fits = loads + q <= limits
                    fits[source] = False
                    if prefer_used and np.any(fits & (loads > 0)):
                        fits &= loads > 0
                    receivers = np.flatnonzero(fits)
                    if receivers.size:
                        target = rng.choice(receivers)
                        row[customer] = target
                        loads[source] -= q
                        loads[target] += q
                        moved = True
                        break
                if moved:
                    break
            if not moved:
                aborted[index] = True
                break
    return genes, aborted


def tournament(
    fitness: np.ndarray, rng: np.random.Generator, exclude: int | None = None
) -> int:
    """Binary tournament: the fitter of two distinct random individuals."""
    candidates = np.arange(len(fitness))
    if exclude is not None:
        candidates = candidates[candidates != exclude]
    if candidates.size == 1:
        return int(candidates[0])
    a, b = rng.choice(candidates, size=2, replace=False)
    return int(a) if fitness[a] <= fitness[b] else int(b)


def select_parents(fitness: np.ndarray, rng: np.random.Generator) -> tuple[int, int]:
    """Two distinct parents, each the winner of its own binary tournament."""
    first = tournament(fitness, rng)
    return first, tournament(fitness, rng, exclude=first)


def crossover(a: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform crossover: each gene from a uniformly chosen parent."""
    return np.where(rng.random(len(a)) < 0.5, a, b)


def _mutate_one(
    genes: np.ndarray,
    n_depots: int,
    count: int,
    p_flip: float,
    rng: np.random.Generator,
) -> None:
    n = len(genes)
    for position in rng.choice(n, size=count, replace=False):
        if rng.random() < p_flip or n < 2:
            genes[position] = (genes[position] + rng.integers(1, n_depots)) % n_depots
        else:
            other = (position + rng.integers(1, n)) % n
            genes[position], genes[other] = genes[other], genes[position]


def mutate(
    genes: np.ndarray,
    fitness: np.ndarray,
    config: GaConfig,
    n_depots: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """FLIP/SWAP mutations on the best third of the chromosomes by fitness.

    About ``mutation_fraction`` of the genes of each selected chromosome are
    mutated: FLIP resets the gene to another depot with probability
    ``p_flip``, SWAP exchanges it with another random gene otherwise.

    Returns:
        Mutated copy of ``genes``
    """
    genes = np.array(genes, dtype=np.int64)
    if len(genes) == 0 or genes.shape[1] == 0:
        return genes
    selected = np.argsort(fitness, kind="stable")[: math.ceil(len(genes) / 3)]
    count = max(1, round(config.mutation_fraction * genes.shape[1]))
    for index in selected:
        _mutate_one(genes[index], n_depots, count, config.p_flip, rng)
    return genes


def targeted_mutation(
    genes: np.ndarray,
    fitness: np.ndarray,
    elites: np.ndarray,
    fraction: float,
    gene_copy_fraction: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Copy elite genes into tournament-selected chromosomes.

    About ``fraction`` of the chromosomes, each picked by binary tournament,
    receive the genes of one random elite on ``gene_copy_fraction`` of their
    positions.

    Returns:
        Mutated copy of ``genes``
    """
    genes = np.array(genes, dtype=np.int64)
    if len(genes) == 0 or len(elites) == 0:
        return genes
    n = genes.shape[1]
    copies = max(1, round(gene_copy_fraction * n))
    for _ in range(max(1, round(fraction * len(genes)))):
        index = tournament(fitness, rng) if len(genes) > 1 else 0
        elite = elites[rng.integers(len(elites))]
        positions = rng.choice(n, size=copies, replace=False)
        genes[index, positions] = elite[positions]
    return genes
