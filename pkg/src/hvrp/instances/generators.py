"""Random instance generators.

All generators are pure functions of (spec, seed): every random draw comes from a
``numpy.random.Generator`` seeded with the given value.
"""

import logging
import math

import numpy as np

from hvrp.core.exceptions import InstanceError
from hvrp.instances.types import (
    ClrpInstance,
    CvrpInstance,
    DemandModel,
    InstanceSpec,
    MdvrpInstance,
    Positioning,
)

logger = logging.getLogger(__name__)

_CLUSTER_SEEDS = (3, 8)


def quadrant_of(point: np.ndarray, center: tuple[float, float]) -> int:
    """Quadrant number 1-4, counterclockwise about ``center``.

    Points on an axis belong to the lower-numbered adjacent quadrant, and the
    center itself belongs to quadrant 1.

    Args:
        point: (x, y)
        center: Quadrant origin

    Returns:
        Quadrant number
    """
    x, y = float(point[0]), float(point[1])
    cx, cy = center
    if x >= cx and y >= cy:
        return 1
    if x < cx and y >= cy:
        return 2
    if x <= cx and y < cy:
        return 3
    return 4


def quadrant_demand(
    point: np.ndarray,
    rng: np.random.Generator,
    grid_size: int = 1000,
) -> int:
    """Draw a quadrant-dependent demand.

    Odd quadrants draw from UD[51,100], even quadrants from UD[1,50].

    Args:
        point: Customer location
        rng: Random generator
        grid_size: Grid side; quadrants are taken about its center

    Returns:
        Integer demand
    """
    center = (grid_size / 2, grid_size / 2)
    if quadrant_of(point, center) % 2:
        return int(rng.integers(51, 101))
    return int(rng.integers(1, 51))


def _random_points(n: int, grid_size: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, grid_size + 1, size=(n, 2)).astype(np.float64)


def _clustered_points(
    n: int,
    grid_size: int,
    decay: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Place ``s ~ UD[3,8]`` seeds, then attract the rest by exponential decay.

    A uniformly drawn candidate is accepted with probability
    ``min(1, sum_s exp(-dist(candidate, s) / decay))``.
    """
    n_seeds = min(n, int(rng.integers(_CLUSTER_SEEDS[0], _CLUSTER_SEEDS[1] + 1)))
    seeds = _random_points(n_seeds, grid_size, rng)
    accepted = [seeds]
    remaining = n - n_seeds
    while remaining > 0:
        batch = max(64, 4 * remaining)
        candidates = _random_points(batch, grid_size, rng)
        gaps = np.linalg.norm(candidates[:, None, :] - seeds[None, :, :], axis=-1)
        attraction = np.minimum(1.0, np.exp(-gaps / decay).sum(axis=1))
        keep = candidates[rng.random(batch) < attraction][:remaining]
        accepted.append(keep)
        remaining -= len(keep)
    return np.vstack(accepted)


def customer_positions(
    n: int,
    positioning: Positioning,
    grid_size: int,
    rng: np.random.Generator,
    decay: float = 40.0,
) -> np.ndarray:
    """Integer customer coordinates on ``[0, grid_size]^2``.

    Args:
        n: Number of customers
        positioning: R (uniform), C (clustered) or RC (half each)
        grid_size: Grid side
        rng: Random generator
        decay: Exponential decay of the cluster attraction

    Returns:
        Array of shape (n, 2)
    """
    if positioning == "R":
        return _random_points(n, grid_size, rng)
    if positioning == "C":
        return _clustered_points(n, grid_size, decay, rng)
    n_random = n // 2
    return np.vstack(
        [
            _random_points(n_random, grid_size, rng),
            _clustered_points(n - n_random, grid_size, decay, rng),
        ]
    )


def customer_demands(
    coords: np.ndarray,
    model: DemandModel,
    grid_size: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Integer demands for the given customer locations."""
    if model == "unitary":
        return np.ones(len(coords), dtype=np.int64)
    if model == "quadrant":
        return np.array(
            [quadrant_demand(point, rng, grid_size) for point in coords],
            dtype=np.int64,
        )
    return rng.integers(1, 101, size=len(coords))


def vehicle_capacity(spec: InstanceSpec, demands: np.ndarray) -> int:
    """Capacity Q: the fixed ``vehicle_capacity`` or ``route_size`` customers of mean demand.

    Never below the largest demand.
    """
    if spec.vehicle_capacity is not None:
        capacity = spec.vehicle_capacity
    else:
        capacity = math.ceil(spec.route_size * demands.sum() / len(demands))
    return max(int(capacity), int(demands.max()))


def fleet_size(total_demand: int, n_depots: int, capacity: int, slack: float) -> int:
    """Vehicles per depot, ``ceil(slack * (total_demand / n_depots) / capacity)``."""
    return math.ceil(slack * (total_demand / n_depots) / capacity)


def _draw(low_high: tuple[int, int], rng: np.random.Generator) -> int:
    low, high = low_high
    return int(rng.integers(low, high + 1))


def generate_cvrp(spec: InstanceSpec, rng_seed: int | None = None) -> CvrpInstance:
    """Generate a random CVRP instance.

    Args:
        spec: Generation recipe; ``n_depots`` is ignored
        rng_seed: Seed overriding ``spec.seed``

    Returns:
        CvrpInstance with integer coordinates and demands
    """
    seed = spec.seed if rng_seed is None else rng_seed
    rng = np.random.default_rng(seed)
    n = _draw(spec.n_customers, rng)
    depot = _random_points(1, spec.grid_size, rng)[0]
    coords = customer_positions(
        n, spec.positioning, spec.grid_size, rng, spec.cluster_decay
    )
    demands = customer_demands(coords, spec.demand_model, spec.grid_size, rng)
    return CvrpInstance(
        depot=depot,
        coords=coords,
        demands=demands,
        capacity=vehicle_capacity(spec, demands),
        name=f"cvrp-{spec.positioning}-{spec.demand_model}-n{n}-s{seed}",
    )


def generate_mdvrp(spec: InstanceSpec, rng_seed: int | None = None) -> MdvrpInstance:
    """Generate a random MDVRP instance with randomly placed depots.

    Fleet sizes follow ``fleet_size`` so total fleet capacity covers total demand.

    Args:
        spec: Generation recipe
        rng_seed: Seed overriding ``spec.seed``

    Returns:
        MdvrpInstance

    Raises:
        InstanceError: If fewer than two depots are drawn, or the subproblem size
            N/D falls outside ``spec.subproblem_range`` while it is enforced
    """
    seed = spec.seed if rng_seed is None else rng_seed
    rng = np.random.default_rng(seed)
    n = _draw(spec.n_customers, rng)
    n_depots = _draw(spec.n_depots, rng)
    if n_depots < 2:
        raise InstanceError("an MDVRP instance requires at least two depots")
    if spec.enforce_subproblem_range:
        low, high = spec.subproblem_range
        if not low <= n / n_depots <= high:
            raise InstanceError(
                f"subproblem size N/D = {n / n_depots:.1f} outside [{low}, {high}]"
            )

    depots = _random_points(n_depots, spec.grid_size, rng)
    coords = customer_positions(
        n, spec.positioning, spec.grid_size, rng, spec.cluster_decay
    )
    demands = customer_demands(coords, spec.demand_model, spec.grid_size, rng)
    capacity = vehicle_capacity(spec, demands)
    per_depot = fleet_size(int(demands.sum()), n_depots, capacity, spec.fleet_slack)
    logger.debug(
        "Generated MDVRP n=%d depots=%d Q=%d m_d=%d", n, n_depots, capacity, per_depot
    )
    return MdvrpInstance(
        depots=depots,
        coords=coords,
        demands=demands,
        capacity=capacity,
        fleet_sizes=np.full(n_depots, per_depot),
        name=f"mdvrp-{spec.positioning}-{spec.demand_model}-n{n}-d{n_depots}-s{seed}",
    )


def generate_clrp(
    spec: InstanceSpec,
    rng_seed: int | None = None,
    capacity_share: tuple[float, float] = (0.3, 0.6),
    opening_cost_range: tuple[float, float] = (500.0, 2000.0),
    route_cost: float = 100.0,
) -> ClrpInstance:
    """Generate a random capacitated location-routing instance.

    Each candidate depot receives a capacity drawn as a share of total demand and
    an integer opening cost; shares are rescaled when needed so that opening
    every depot covers total demand.

    Args:
        spec: Generation recipe
        rng_seed: Seed overriding ``spec.seed``
        capacity_share: Range of W_d / total demand
        opening_cost_range: Range of F_d
        route_cost: Cost f per route used

    Returns:
        ClrpInstance
    """
    base = generate_mdvrp(spec, rng_seed)
    seed = spec.seed if rng_seed is None else rng_seed
    rng = np.random.default_rng([seed, 1])
    total = base.total_demand
    shares = rng.uniform(*capacity_share, size=base.n_depots)
    if shares.sum() < 1.0:
        shares = shares / shares.sum()
    capacities = np.ceil(shares * total)
    costs = np.round(rng.uniform(*opening_cost_range, size=base.n_depots))
    return ClrpInstance(
        depots=base.depots,
        coords=base.coords,
        demands=base.demands,
        capacity=base.capacity,
        name=base.name.replace("mdvrp", "clrp", 1),
        depot_capacities=capacities,
        opening_costs=costs,
        route_cost=route_cost,
    )
