"""CVRP results and the route evaluator."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

from pydantic import BaseModel, Field

from hvrp.core.exceptions import FeasibilityError
from hvrp.instances.types import CvrpInstance, Route


@dataclass(frozen=True)
class CvrpResult:
    """A single-depot solution.

    ``tours`` hold CVRP node ids (customers are 1..N, the depot 0 is implicit at
    both ends); ``routes`` hold the same tours as global customer indices with
    per-route load and cost.
    """

    tours: tuple[tuple[int, ...], ...]
    routes: tuple[Route, ...]
    cost: float
    elapsed: float = 0.0

    @property
    def n_routes(self) -> int:
        """Number of vehicles used."""
        return len(self.tours)


class CvrpReport(BaseModel):
    """Serializable CVRP solution; tours list node ids 1..N without the depot."""

    instance: str
    n_customers: int
    capacity: int
    cost: float
    n_routes: int
    tours: list[list[int]]
    elapsed: float = Field(default=0.0, exclude=True)


def cvrp_report(instance: CvrpInstance, result: CvrpResult) -> CvrpReport:
    """Package a result for output."""
    return CvrpReport(
        instance=instance.name,
        n_customers=instance.n_customers,
        capacity=instance.capacity,
        cost=result.cost,
        n_routes=result.n_routes,
        tours=[list(tour) for tour in result.tours],
        elapsed=result.elapsed,
    )


def tour_cost(distances: Sequence[Sequence[float]], tour: Sequence[int]) -> float:
    """Length of depot -> tour -> depot over a distance matrix."""
    if not tour:
        return 0.0
    cost = distances[0][tour[0]] + distances[tour[-1]][0]
    for a, b in zip(tour, tour[1:]):
        cost += distances[a][b]
    return float(cost)


def make_result(
    instance: CvrpInstance,
    tours: Sequence[Sequence[int]],
    elapsed: float = 0.0,
) -> CvrpResult:
    """Package node tours as a CvrpResult, dropping empty tours."""
    distances = instance.distances
    kept = tuple(tuple(int(node) for node in tour) for tour in tours if len(tour))
    routes = []
    for tour in kept:
        routes.append(
            Route(
                customers=tuple(int(instance.customer_ids[node - 1]) for node in tour),
                load=int(instance.node_demands[list(tour)].sum()),
                cost=tour_cost(distances, tour),
            )
        )
    return CvrpResult(
        tours=kept,
        routes=tuple(routes),
        cost=math.fsum(route.cost for route in routes),
        elapsed=elapsed,
    )


def _strip_depot(route: Sequence[int], index: int) -> list[int]:
    nodes = [int(node) for node in route]
    if nodes and (nodes[0] == 0 or nodes[-1] == 0):
        if len(nodes) < 2 or nodes[0] != 0 or nodes[-1] != 0:
            raise FeasibilityError(
                f"route {index} does not start and end at the depot",
                constraint="depot",
            )
        nodes = nodes[1:-1]
    if 0 in nodes:
        raise FeasibilityError(
            f"route {index} passes through the depot", constraint="depot"
        )
    return nodes


def evaluate_solution(
    instance: CvrpInstance,
    routes: Sequence[Sequence[int]],
    require_all: bool = True,
) -> float:
    """Recompute the cost of a CVRP solution and check its feasibility.

    Each route is a sequence of customer node ids 1..N, optionally written with
    the depot 0 at both ends. Empty routes are ignored.

    Args:
        instance: The CVRP
        routes: Routes to check
        require_all: Whether every customer must be served

    Returns:
        Total tour length

    Raises:
        FeasibilityError: Naming the violated constraint (``index``, ``depot``,
            ``duplicate``, ``capacity``, ``fleet`` or ``coverage``)
    """
    n = instance.n_customers
    seen = [False] * (n + 1)
    tours = []
    for index, route in enumerate(routes):
        nodes = _strip_depot(route, index)
        if not nodes:
            continue
        for node in nodes:
            if not 1 <= node <= n:
                raise FeasibilityError(
                    f"route {index} visits unknown node {node}", constraint="index"
                )
            if seen[node]:
                raise FeasibilityError(
                    f"customer node {node} is visited twice", constraint="duplicate"
                )
            seen[node] = True
        load = int(instance.node_demands[nodes].sum())
        if load > instance.capacity:
            raise FeasibilityError(
                f"route {index} load {load} exceeds capacity {instance.capacity}",
                constraint="capacity",
            )
        tours.append(nodes)

    if instance.fleet_limit is not None and len(tours) > instance.fleet_limit:
        raise FeasibilityError(
            f"{len(tours)} routes exceed the fleet limit {instance.fleet_limit}",
            constraint="fleet",
        )
    if require_all and not all(seen[1:]):
        missing = seen.index(False, 1)
        raise FeasibilityError(
            f"customer node {missing} is not served", constraint="coverage"
        )
    distances = instance.distances
    return math.fsum(tour_cost(distances, tour) for tour in tours)
