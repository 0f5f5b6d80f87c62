"""Assignment baselines: nearest depot and K-Means with depot matching."""

import logging
import time
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist
from sklearn.cluster import KMeans

from hvrp.config.schema import SolverConfig
from hvrp.core.exceptions import InfeasibleError
from hvrp.datagen.labeling import spawn_seeds
from hvrp.ga.operators import nearest_depot_assignment
from hvrp.ga.population import load_excess
from hvrp.instances.types import MdvrpInstance, RoutingSolution
from hvrp.routing import route_assignment

logger = logging.getLogger(__name__)

KMEANS_RESTARTS = 10


def nda_assign(instance: MdvrpInstance) -> np.ndarray:
    """Nearest-depot assignment, ties to the lower depot index."""
    return nearest_depot_assignment(instance)


def match_clusters(centroids: np.ndarray, depots: np.ndarray) -> np.ndarray:
    """Match clusters to distinct depots, closest centroid-depot pair first.

    Args:
        centroids: Cluster centers, shape (K, 2) with K <= D
        depots: Depot coordinates, shape (D, 2)

    Returns:
        Depot index per cluster, all distinct
    """
    distances = cdist(centroids, depots)
    depot_of = np.full(len(centroids), -1, dtype=np.int64)
    for _ in range(len(centroids)):
        cluster, depot = np.unravel_index(np.argmin(distances), distances.shape)
        depot_of[cluster] = depot
        distances[cluster, :] = np.inf
        distances[:, depot] = np.inf
    return depot_of


def kmeans_assign(coords: np.ndarray, depots: np.ndarray, seed: int) -> np.ndarray:
    """Cluster customers into one group per depot and map groups to depots.

    Lloyd's algorithm starts from centroids sampled uniformly among the
    customers; empty clusters are reseeded by the clustering itself. With fewer
    customers than depots only that many clusters are formed.

    Args:
        coords: Customer coordinates, shape (N, 2)
        depots: Depot coordinates, shape (D, 2)
        seed: Centroid sampling seed

    Returns:
        Depot index per customer
    """
    n_clusters = min(len(depots), len(coords))
    if n_clusters == 1:
        centroid = np.asarray(coords).mean(axis=0, keepdims=True)
        return np.full(len(coords), match_clusters(centroid, depots)[0], dtype=np.int64)
    kmeans = KMeans(n_clusters=n_clusters, init="random", n_init=1, random_state=seed)
    labels = kmeans.fit_predict(coords)
    return match_clusters(kmeans.cluster_centers_, depots)[labels]


@dataclass(frozen=True, eq=False)
class BaselineResult:
    """A routed baseline assignment."""

    assignment: np.ndarray
    solution: RoutingSolution
    elapsed: float

    @property
    def cost(self) -> float:
        """Routing cost."""
        return self.solution.total_cost


def route_nda(
    instance: MdvrpInstance, solver_config: SolverConfig | None = None
) -> BaselineResult | None:
    """Route the nearest-depot assignment; None when it breaks a fleet limit."""
    start = time.perf_counter()
    genes = nda_assign(instance)
    if load_excess(genes[None, :], instance.demands, instance.depot_capacity_limits)[0] > 0:
        return None
    try:
        solution = route_assignment(instance, genes, solver_config)
    except InfeasibleError:
        return None
    return BaselineResult(genes, solution, time.perf_counter() - start)


def kmeans10(
    instance: MdvrpInstance,
    seed: int,
    solver_config: SolverConfig | None = None,
    restarts: int = KMEANS_RESTARTS,
) -> BaselineResult:
    """Best routed K-Means assignment over independent restarts.

    Args:
        instance: The MDVRP
        seed: Root seed of the restarts
        solver_config: Routing settings
        restarts: Number of clusterings

    Returns:
        Cheapest feasible restart; ``elapsed`` covers all restarts

    Raises:
        InfeasibleError: If no restart routes within the fleet limits
    """
    start = time.perf_counter()
    best: tuple[np.ndarray, RoutingSolution] | None = None
    for restart_seed in spawn_seeds(seed, restarts):
        genes = kmeans_assign(instance.coords, instance.depots, restart_seed)
        try:
            solution = route_assignment(instance, genes, solver_config)
        except InfeasibleError:
            continue
        if best is None or solution.total_cost < best[1].total_cost:
            best = (genes, solution)
    if best is None:
        raise InfeasibleError(
            f"no K-Means restart of {instance.name or 'the instance'} fits the fleet",
            bound="fleet_limit",
        )
    return BaselineResult(best[0], best[1], time.perf_counter() - start)
