"""Exact CVRP by enumeration for tiny instances.

Every capacity-feasible customer subset is routed optimally with Held-Karp
dynamic programming; a second dynamic program then picks the cheapest partition
of all customers into such subsets, optionally with at most ``fleet_limit``
parts.
"""

import math
import time

from hvrp.core.exceptions import InfeasibleError, InstanceSizeError
from hvrp.instances.types import CvrpInstance
from hvrp.routing.solution import CvrpResult, make_result

MAX_EXACT_CUSTOMERS = 10
MAX_SUBSET_CUSTOMERS = 14


def _subset_tours(
    d: list[list[float]], q: list[int], capacity: int, n: int
) -> tuple[list[float], list[tuple[int, ...]]]:
    """Optimal closed tour for every capacity-feasible subset (bit i = node i+1)."""
    size = 1 << n
    load = [0] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        load[mask] = load[mask & (mask - 1)] + q[low + 1]

    inf = math.inf
    # path[mask][j]: shortest depot -> ... -> j path visiting exactly mask
    path = [[inf] * n for _ in range(size)]
    parent = [[-1] * n for _ in range(size)]
    for j in range(n):
        path[1 << j][j] = d[0][j + 1]
    for mask in range(1, size):
        if load[mask] > capacity:
            continue
        row = path[mask]
        for j in range(n):
            if not mask >> j & 1 or row[j] == inf:
                continue
            for k in range(n):
                if mask >> k & 1:
                    continue
                nxt = mask | 1 << k
                if load[nxt] > capacity:
                    continue
                cost = row[j] + d[j + 1][k + 1]
                if cost < path[nxt][k]:
                    path[nxt][k] = cost
                    parent[nxt][k] = j

    tour_cost = [inf] * size
    tours: list[tuple[int, ...]] = [()] * size
    for mask in range(1, size):
        if load[mask] > capacity:
            continue
        best, last = inf, -1
        for j in range(n):
            if mask >> j & 1 and path[mask][j] + d[j + 1][0] < best:
                best, last = path[mask][j] + d[j + 1][0], j
        tour_cost[mask] = best
        order = []
        current, node = mask, last
        while node >= 0:
            order.append(node + 1)
            current, node = current ^ (1 << node), parent[current][node]
        tours[mask] = tuple(reversed(order))
    return tour_cost, tours


def _cover(
    tour_cost: list[float], full: int, max_routes: int | None
) -> tuple[list[list[float]], list[list[int]]]:
    """Cheapest cover of every submask of ``full``, by route count when limited."""
    inf = math.inf
    rows = 1 if max_routes is None else max_routes
    # best[k][mask]: cheapest cover of mask with at most k+1 routes
    best = [[inf] * (full + 1) for _ in range(rows)]
    choice = [[0] * (full + 1) for _ in range(rows)]
    for k in range(rows):
        best[k][0] = 0.0
        row, pick = best[k], choice[k]
        # unlimited fleets reuse one row; mask ^ part < mask is always final
        prev_row = row if max_routes is None else (best[k - 1] if k else None)
        for mask in range(1, full + 1):
            low = mask & -mask
            rest = mask ^ low
            sub = rest
            while True:
                part = sub | low
                cost = tour_cost[part]
                if cost < inf:
                    remainder = mask ^ part
                    if prev_row is None:
                        total = cost if remainder == 0 else inf
                    else:
                        total = cost + prev_row[remainder]
                    if total < row[mask]:
                        row[mask] = total
                        pick[mask] = part
                if sub == 0:
                    break
                sub = (sub - 1) & rest
    return best, choice


def _partition(
    tour_cost: list[float], full: int, max_routes: int | None
) -> list[int] | None:
    """Cheapest split of ``full`` into feasible subsets.

    Returns:
        The chosen subsets, or None when no split uses at most ``max_routes``
    """
    best, choice = _cover(tour_cost, full, max_routes)
    k = len(best) - 1
    if best[k][full] == math.inf:
        return None
    parts = []
    mask = full
    while mask:
        part = choice[k][mask]
        parts.append(part)
        mask ^= part
        if max_routes is not None:
            k -= 1
    return parts


def solve_exact(
    instance: CvrpInstance, max_customers: int = MAX_EXACT_CUSTOMERS
) -> CvrpResult:
    """Globally optimal CVRP solution by exhaustive dynamic programming.

    Args:
        instance: The CVRP
        max_customers: Size guard; the run time grows as 3^N

    Returns:
        Optimal solution

    Raises:
        InstanceSizeError: If the instance has more than ``max_customers``
            customers
        InfeasibleError: If no partition respects the fleet limit
    """
    n = instance.n_customers
    if n > max_customers:
        raise InstanceSizeError(
            f"exact solver supports at most {max_customers} customers, got {n}"
        )
    start = time.perf_counter()
    d = instance.distances.tolist()
    q = [int(v) for v in instance.node_demands]
    tour_cost, tours = _subset_tours(d, q, instance.capacity, n)

    limit = instance.fleet_limit
    parts = _partition(tour_cost, (1 << n) - 1, None if limit is None else min(n, limit))
    if parts is None:
        raise InfeasibleError(
            f"no partition into at most {limit} routes fits the capacity",
            bound="fleet_limit",
        )
    return make_result(instance, [tours[part] for part in parts], time.perf_counter() - start)


def subset_costs(
    instance: CvrpInstance, max_customers: int = MAX_SUBSET_CUSTOMERS
) -> list[float]:
    """Optimal routing cost of every customer subset with an unlimited fleet.

    A single Held-Karp pass over the whole instance serves all ``2^N`` subsets.

    Args:
        instance: The CVRP whose customers are enumerated
        max_customers: Size guard

    Returns:
        Costs indexed by bitmask, where bit ``i`` is customer ``i`` (0-based);
        entry 0 is 0.0

    Raises:
        InstanceSizeError: If the instance has more than ``max_customers``
            customers
    """
    n = instance.n_customers
    if n > max_customers:
        raise InstanceSizeError(
            f"subset enumeration supports at most {max_customers} customers, got {n}"
        )
    d = instance.distances.tolist()
    q = [int(v) for v in instance.node_demands]
    tour_cost, _ = _subset_tours(d, q, instance.capacity, n)
    best, _ = _cover(tour_cost, (1 << n) - 1, None)
    return best[0]
