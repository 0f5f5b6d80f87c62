"""Problem and solution data types.

Instances are frozen dataclasses over read-only numpy arrays, so they can be shared
across threads and processes without copying concerns. Inside a CVRP, node 0 is the
depot and customers are nodes 1..N; customer and depot indices of multi-depot
instances are 0-based.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy.spatial.distance import cdist

from hvrp.core.exceptions import InstanceError

Positioning = Literal["R", "C", "RC"]
DemandModel = Literal["uniform", "unitary", "quadrant"]


def _frozen_array(values: object, dtype: type, ndim: int, name: str) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    if array.ndim != ndim:
        raise InstanceError(f"{name} must be {ndim}-dimensional, got {array.ndim}")
    array.setflags(write=False)
    return array


def _check_points(points: np.ndarray, name: str) -> None:
    if points.shape[-1] != 2:
        raise InstanceError(f"{name} must have two coordinates per point")
    if not np.all(np.isfinite(points)):
        raise InstanceError(f"{name} contain non-finite coordinates")


@dataclass(frozen=True, eq=False)
class CvrpInstance:
    """Single-depot capacitated VRP."""

    depot: np.ndarray
    coords: np.ndarray
    demands: np.ndarray
    capacity: int
    fleet_limit: int | None = None
    name: str = ""
    customer_ids: np.ndarray | None = None
    depot_id: int | None = None

    def __post_init__(self) -> None:
        """Normalize arrays and check the instance invariants."""
        depot = _frozen_array(self.depot, np.float64, 1, "depot")
        coords = _frozen_array(self.coords, np.float64, 2, "coords")
        demands = _frozen_array(self.demands, np.int64, 1, "demands")
        _check_points(depot, "depot")
        _check_points(coords, "customer coordinates")
        if len(coords) < 1:
            raise InstanceError("a CVRP instance needs at least one customer")
        if len(demands) != len(coords):
            raise InstanceError("demands and coordinates differ in length")
        if self.capacity <= 0:
            raise InstanceError("vehicle capacity must be positive")
        if np.any(demands <= 0):
            raise InstanceError("customer demands must be positive")
        if demands.max() > self.capacity:
            raise InstanceError(
                f"demand {int(demands.max())} exceeds vehicle capacity {self.capacity}"
            )
        if self.fleet_limit is not None and self.fleet_limit <= 0:
            raise InstanceError("fleet_limit must be positive when given")
        ids = (
            np.arange(len(coords))
            if self.customer_ids is None
            else self.customer_ids
        )
        ids = _frozen_array(ids, np.int64, 1, "customer_ids")
        if len(ids) != len(coords):
            raise InstanceError("customer_ids and coordinates differ in length")

        object.__setattr__(self, "depot", depot)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "demands", demands)
        object.__setattr__(self, "capacity", int(self.capacity))
        object.__setattr__(self, "customer_ids", ids)

    @property
    def n_customers(self) -> int:
        """Number of customers N."""
        return len(self.coords)

    @cached_property
    def points(self) -> np.ndarray:
        """All node coordinates, depot first, shape (N+1, 2)."""
        points = np.vstack([self.depot[None, :], self.coords])
        points.setflags(write=False)
        return points

    @cached_property
    def node_demands(self) -> np.ndarray:
        """Demand per node with 0 for the depot, shape (N+1,)."""
        demands = np.concatenate([[0], self.demands])
        demands.setflags(write=False)
        return demands

    @cached_property
    def distances(self) -> np.ndarray:
        """Euclidean distance matrix over all nodes, shape (N+1, N+1)."""
        matrix = cdist(self.points, self.points)
        matrix.setflags(write=False)
        return matrix

    @property
    def total_demand(self) -> int:
        """Sum of customer demands."""
        return int(self.demands.sum())

    @property
    def min_vehicles(self) -> int:
        """Lower bound on the vehicle count, ceil(sum q / Q)."""
        return math.ceil(self.total_demand / self.capacity)

    def transformed(
        self,
        scale: float = 1.0,
        shift: tuple[float, float] = (0.0, 0.0),
        order: np.ndarray | None = None,
    ) -> "CvrpInstance":
        """Return a scaled, translated and/or customer-reordered copy.

        Args:
            scale: Multiplier applied to every coordinate
            shift: Offset added after scaling
            order: Permutation of customer positions

        Returns:
            New CvrpInstance
        """
        order = np.arange(self.n_customers) if order is None else np.asarray(order)
        offset = np.asarray(shift, dtype=np.float64)
        return CvrpInstance(
            depot=self.depot * scale + offset,
            coords=self.coords[order] * scale + offset,
            demands=self.demands[order],
            capacity=self.capacity,
            fleet_limit=self.fleet_limit,
            name=self.name,
            customer_ids=self.customer_ids[order],
            depot_id=self.depot_id,
        )


@dataclass(frozen=True, eq=False)
class MdvrpInstance:
    """Multi-depot VRP with a homogeneous fleet per depot.

    ``fleet_sizes`` is None when depots have no vehicle-count limit.
    """

    depots: np.ndarray
    coords: np.ndarray
    demands: np.ndarray
    capacity: int
    fleet_sizes: np.ndarray | None = None
    name: str = ""

    def __post_init__(self) -> None:
        """Normalize arrays and check the instance invariants."""
        depots = _frozen_array(self.depots, np.float64, 2, "depots")
        coords = _frozen_array(self.coords, np.float64, 2, "coords")
        demands = _frozen_array(self.demands, np.int64, 1, "demands")
        _check_points(depots, "depot coordinates")
        _check_points(coords, "customer coordinates")
        if len(depots) < 2:
            raise InstanceError("an MDVRP instance requires at least two depots")
        if len(coords) < 1:
            raise InstanceError("an MDVRP instance needs at least one customer")
        if len(demands) != len(coords):
            raise InstanceError("demands and coordinates differ in length")
        if self.capacity <= 0:
            raise InstanceError("vehicle capacity must be positive")
        if np.any(demands <= 0):
            raise InstanceError("customer demands must be positive")
        if demands.max() > self.capacity:
            raise InstanceError(
                f"demand {int(demands.max())} exceeds vehicle capacity {self.capacity}"
            )
        object.__setattr__(self, "depots", depots)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "demands", demands)
        object.__setattr__(self, "capacity", int(self.capacity))

        if self.fleet_sizes is not None:
            fleet = _frozen_array(self.fleet_sizes, np.int64, 1, "fleet_sizes")
            if len(fleet) != len(depots):
                raise InstanceError("one fleet size per depot is required")
            if np.any(fleet <= 0):
                raise InstanceError("fleet sizes must be positive")
            if demands.sum() > fleet.sum() * self.capacity:
                raise InstanceError(
                    "total demand exceeds total fleet capacity "
                    f"({int(demands.sum())} > {int(fleet.sum()) * self.capacity})"
                )
            object.__setattr__(self, "fleet_sizes", fleet)

    @property
    def n_customers(self) -> int:
        """Number of customers N."""
        return len(self.coords)

    @property
    def n_depots(self) -> int:
        """Number of depots |D|."""
        return len(self.depots)

    @property
    def total_demand(self) -> int:
        """Sum of customer demands."""
        return int(self.demands.sum())

    @cached_property
    def depot_distances(self) -> np.ndarray:
        """Customer-to-depot distances, shape (N, D)."""
        matrix = cdist(self.coords, self.depots)
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def customer_distances(self) -> np.ndarray:
        """Customer-to-customer distances, shape (N, N)."""
        matrix = cdist(self.coords, self.coords)
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def depot_capacity_limits(self) -> np.ndarray:
        """Load limit per depot m_d * Q, inf without fleet limits."""
        if self.fleet_sizes is None:
            limits = np.full(self.n_depots, np.inf)
        else:
            limits = self.fleet_sizes.astype(np.float64) * self.capacity
        limits.setflags(write=False)
        return limits

    def fleet_limit(self, depot: int) -> int | None:
        """Vehicle count m_d of a depot, None when unlimited."""
        if self.fleet_sizes is None:
            return None
        return int(self.fleet_sizes[depot])


@dataclass(frozen=True, eq=False)
class ClrpInstance(MdvrpInstance):
    """Capacitated location-routing instance.

    Depot capacities may be ``inf`` for uncapacitated candidate sites. Vehicles per
    depot are unlimited. ``rounded_costs`` keeps the source file's cost-convention
    flag for round-tripping; distances are always unrounded.
    """

    depot_capacities: np.ndarray = field(default_factory=lambda: np.empty(0))
    opening_costs: np.ndarray = field(default_factory=lambda: np.empty(0))
    route_cost: float = 0.0
    rounded_costs: bool = False

    def __post_init__(self) -> None:
        """Check the location-specific invariants."""
        super().__post_init__()
        if self.fleet_sizes is not None:
            raise InstanceError("CLRP depots have unlimited vehicles")
        capacities = _frozen_array(
            self.depot_capacities, np.float64, 1, "depot_capacities"
        )
        costs = _frozen_array(self.opening_costs, np.float64, 1, "opening_costs")
        if len(capacities) != self.n_depots or len(costs) != self.n_depots:
            raise InstanceError("one capacity and opening cost per depot is required")
        if np.any(capacities <= 0):
            raise InstanceError("depot capacities must be positive")
        if np.any(costs < 0) or self.route_cost < 0:
            raise InstanceError("opening costs must be non-negative")
        if not np.all(np.isfinite(costs)) or not math.isfinite(self.route_cost):
            raise InstanceError("opening costs must be finite")
        object.__setattr__(self, "depot_capacities", capacities)
        object.__setattr__(self, "opening_costs", costs)
        object.__setattr__(self, "route_cost", float(self.route_cost))

    @property
    def is_location_free(self) -> bool:
        """True when opening depots and routes costs nothing and no depot binds."""
        return (
            not np.any(self.opening_costs)
            and self.route_cost == 0
            and bool(np.all(self.depot_capacities >= self.total_demand))
        )

    def as_mdvrp(self) -> MdvrpInstance:
        """Drop the location layer, keeping geometry and vehicle capacity."""
        return MdvrpInstance(
            depots=self.depots,
            coords=self.coords,
            demands=self.demands,
            capacity=self.capacity,
            name=self.name,
        )


@dataclass(frozen=True)
class Route:
    """One vehicle tour; ``customers`` are global 0-based customer indices."""

    customers: tuple[int, ...]
    load: int
    cost: float


@dataclass(frozen=True)
class RoutingSolution:
    """Routes per depot plus any opening costs (CLRP)."""

    routes: tuple[tuple[Route, ...], ...]
    opening_cost: float = 0.0

    @property
    def routing_cost(self) -> float:
        """Sum of route costs."""
        return float(sum(route.cost for depot in self.routes for route in depot))

    @property
    def total_cost(self) -> float:
        """Routing cost plus opening costs."""
        return self.routing_cost + self.opening_cost

    @property
    def n_routes(self) -> int:
        """Number of routes over all depots."""
        return sum(len(depot) for depot in self.routes)

    def assignment(self, n_customers: int) -> np.ndarray:
        """Depot index per customer implied by the routes (-1 if unserved)."""
        genes = np.full(n_customers, -1, dtype=np.int64)
        for depot, routes in enumerate(self.routes):
            for route in routes:
                genes[list(route.customers)] = depot
        return genes


class InstanceSpec(BaseModel):
    """Recipe for random instance generation."""

    n_customers: tuple[int, int] = (100, 100)
    n_depots: tuple[int, int] = (2, 2)
    positioning: Positioning = "R"
    demand_model: DemandModel = "uniform"
    grid_size: int = Field(default=1000, gt=0)
    seed: int = 0
    cluster_decay: float = Field(default=40.0, gt=0)
    vehicle_capacity: int | None = Field(default=None, gt=0)
    route_size: float = Field(default=8.0, gt=0)
    fleet_slack: float = Field(default=1.2, ge=1.0)
    enforce_subproblem_range: bool = False
    subproblem_range: tuple[float, float] = (50, 500)

    @model_validator(mode="after")
    def validate_ranges(self) -> "InstanceSpec":
        """Ensure every range is non-empty and positive.

        Returns:
            Validated InstanceSpec

        Raises:
            ValueError: If a range is empty
        """
        for name in ("n_customers", "n_depots", "subproblem_range"):
            low, high = getattr(self, name)
            if low < 1 or low > high:
                raise ValueError(f"{name} must satisfy 1 <= low <= high")
        return self
