"""Populations of depot-assignment chromosomes and their fitness.

A chromosome is a length-N vector of 0-based depot indices; a population stores
its chromosomes as the rows of one int64 matrix together with each row's
estimated cost C(I) and load excess over the depot limits.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


def unique_rows(genes: np.ndarray) -> np.ndarray:
    """Drop duplicate chromosomes, keeping first occurrences in order."""
    genes = np.asarray(genes, dtype=np.int64)
    if len(genes) < 2:
        return genes
    _, first = np.unique(genes, axis=0, return_index=True)
    return genes[np.sort(first)]


def diversity_scores(genes: np.ndarray) -> np.ndarray:
    """Mean Hamming distance of every chromosome to the rest of the population.

    ``delta(I) = sum_{I' != I} sum_i [I(i) != I'(i)] / (N * |population|)``.
    A single chromosome has diversity 0.

    Args:
        genes: Chromosomes, shape (P, N)

    Returns:
        Diversity per chromosome in [0, 1]
    """
    genes = np.asarray(genes)
    size, n = genes.shape
    if size < 2 or n == 0:
        return np.zeros(size)
    distances = np.zeros(size)
    for i in range(size):
        distances[i] = np.count_nonzero(genes != genes[i])
    return distances / (n * size)


def min_max(values: np.ndarray) -> np.ndarray:
    """Scale to [0, 1] over the given values; a constant pool maps to 0."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return values
    low, high = values.min(), values.max()
    if high - low <= 0:
        return np.zeros_like(values)
    return (values - low) / (high - low)


def fitness_scores(
    costs: np.ndarray,
    diversity: np.ndarray,
    overloads: np.ndarray,
    w1: float,
    w2: float,
    w3: float,
) -> np.ndarray:
    """Fitness per chromosome, lower is better.

    ``fit = w1 * C~ - w2 * delta~ + w3 * C~ * overload`` where ``C~`` and
    ``delta~`` are min-max normalized over the pool.
    """
    c = min_max(costs)
    return w1 * c - w2 * min_max(diversity) + w3 * c * np.asarray(overloads)


def load_excess(
    genes: np.ndarray, demands: np.ndarray, limits: np.ndarray
) -> np.ndarray:
    """Total load above the depot limits, ``sum_d (l_d - limit_d)^+``, per row.

    Args:
        genes: Chromosomes, shape (P, N)
        demands: Customer demands, shape (N,)
        limits: Load limit per depot (``inf`` when unlimited)

    Returns:
        Excess per chromosome, shape (P,)
    """
    loads = depot_load_matrix(genes, demands, len(limits))
    return np.clip(loads - limits, 0, None).sum(axis=1)


def depot_load_matrix(genes: np.ndarray, demands: np.ndarray, n_depots: int) -> np.ndarray:
    """Demand assigned to every depot by every chromosome, shape (P, D)."""
    genes = np.atleast_2d(np.asarray(genes, dtype=np.int64))
    size = len(genes)
    offsets = (np.arange(size)[:, None] * n_depots + genes).ravel()
    weights = np.tile(np.asarray(demands, dtype=np.float64), size)
    return np.bincount(offsets, weights=weights, minlength=size * n_depots).reshape(
        size, n_depots
    )


@dataclass(frozen=True, eq=False)
class Population:
    """Chromosomes with their estimated costs and load excess."""

    genes: np.ndarray
    costs: np.ndarray
    overloads: np.ndarray

    @property
    def size(self) -> int:
        """Number of chromosomes."""
        return len(self.genes)

    @cached_property
    def diversity(self) -> np.ndarray:
        """Diversity of each chromosome within this population."""
        return diversity_scores(self.genes)

    def fitness(self, w1: float, w2: float, w3: float) -> np.ndarray:
        """Fitness of each chromosome within this population."""
        return fitness_scores(self.costs, self.diversity, self.overloads, w1, w2, w3)

    def ranking(self) -> np.ndarray:
        """Indices ordered by (has overload, estimated cost)."""
        return np.lexsort((self.costs, self.overloads > 0))

    def select(self, indices: np.ndarray | list[int]) -> "Population":
        """Sub-population of the given rows, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return Population(
            genes=self.genes[indices],
            costs=self.costs[indices],
            overloads=self.overloads[indices],
        )

    @staticmethod
    def merge(*populations: "Population") -> "Population":
        """Concatenate populations, dropping repeated chromosomes."""
        genes = np.concatenate([p.genes for p in populations])
        costs = np.concatenate([p.costs for p in populations])
        overloads = np.concatenate([p.overloads for p in populations])
        if len(genes) < 2:
            return Population(genes, costs, overloads)
        _, first = np.unique(genes, axis=0, return_index=True)
        keep = np.sort(first)
        return Population(genes[keep], costs[keep], overloads[keep])
