"""Randomized first-improvement local search over CVRP tours.

Tours are lists of customer node ids 1..N; the depot 0 is implicit at both ends.
Every accepted move strictly decreases total tour length and keeps every route
within capacity and the route count within the fleet limit.
"""

from collections.abc import Sequence

import numpy as np

from hvrp.config.schema import ALL_LOCAL_SEARCH_OPS, LocalSearchOp

EPSILON = 1e-9
GRANULARITY = 30


def insertion_cost(
    d: Sequence[Sequence[float]], tour: Sequence[int], node: int
) -> tuple[float, int]:
    """Cheapest position to insert ``node`` into ``tour``.

    Returns:
        (added length, insertion index)
    """
    best, best_pos = float("inf"), 0
    prev = 0
    for pos in range(len(tour) + 1):
        nxt = tour[pos] if pos < len(tour) else 0
        delta = d[prev][node] + d[node][nxt] - d[prev][nxt]
        if delta < best:
            best, best_pos = delta, pos
        prev = nxt
    return best, best_pos


def reduce_routes(
    d: Sequence[Sequence[float]],
    demands: Sequence[int],
    capacity: int,
    tours: list[list[int]],
    limit: int,
) -> list[list[int]] | None:
    """Eliminate routes until at most ``limit`` remain.

    Repeatedly dissolves the lightest route and inserts its customers, largest
    demand first, at their cheapest feasible positions in the other routes.

    Returns:
        New tours, or None when a customer cannot be placed
    """
    tours = [list(tour) for tour in tours]
    while len(tours) > limit:
        loads = [sum(demands[node] for node in tour) for tour in tours]
        victim = min(range(len(tours)), key=lambda r: (loads[r], r))
        orphans = sorted(tours.pop(victim), key=lambda node: -demands[node])
        loads.pop(victim)
        for node in orphans:
            best: tuple[float, int, int] | None = None
            for r, tour in enumerate(tours):
                if loads[r] + demands[node] > capacity:
                    continue
                cost, pos = insertion_cost(d, tour, node)
                if best is None or cost < best[0]:
                    best = (cost, r, pos)
            if best is None:
                return None
            _, r, pos = best
            tours[r].insert(pos, node)
            loads[r] += demands[node]
    return tours


def ruin_and_recreate(
    d: Sequence[Sequence[float]],
    demands: Sequence[int],
    capacity: int,
    tours: list[list[int]],
    fleet_limit: int | None,
    rng: np.random.Generator,
    fraction: float = 0.1,
) -> list[list[int]]:
    """Remove a random share of customers and greedily reinsert them.

    Customers are reinserted in random order at their cheapest feasible
    position; a new route is opened only when no route has room and the fleet
    limit allows it. When a customer cannot be placed, the input is returned.
    """
    customers = [node for tour in tours for node in tour]
    k = max(1, int(round(fraction * len(customers))))
    removed = {int(node) for node in rng.choice(customers, size=k, replace=False)}
    new = [[node for node in tour if node not in removed] for tour in tours]
    new = [tour for tour in new if tour]
    loads = [sum(demands[node] for node in tour) for tour in new]
    for node in rng.permutation(sorted(removed)):
        node = int(node)
        best: tuple[float, int, int] | None = None
        for r, tour in enumerate(new):
            if loads[r] + demands[node] > capacity:
                continue
            cost, pos = insertion_cost(d, tour, node)
            if best is None or cost < best[0]:
                best = (cost, r, pos)
        if best is None:
            if fleet_limit is not None and len(new) >= fleet_limit:
                return tours
            new.append([node])
            loads.append(demands[node])
            continue
        _, r, pos = best
        new[r].insert(pos, node)
        loads[r] += demands[node]
    return new


class LocalSearch:
    """First-improvement descent with relocate, swap, 2-opt and 2-opt* moves.

    Moves are restricted to each customer's ``GRANULARITY`` nearest customers.
    """

    def __init__(
        self,
        distances: np.ndarray,
        demands: np.ndarray,
        capacity: int,
        fleet_limit: int | None,
        ops: Sequence[LocalSearchOp] = ALL_LOCAL_SEARCH_OPS,
        rng: np.random.Generator | None = None,
    ) -> None:
        """Prepare neighbor lists for an instance.

        Args:
            distances: (N+1, N+1) distance matrix, depot at 0
            demands: Node demands, depot demand 0
            capacity: Vehicle capacity
            fleet_limit: Maximum number of routes, None for unlimited
            ops: Enabled move types
            rng: Source of the sweep order
        """
        self.d: list[list[float]] = distances.tolist()
        self.q: list[int] = [int(v) for v in demands]
        self.capacity = capacity
        self.fleet_limit = fleet_limit
        self.rng = rng or np.random.default_rng(0)
        self.n = len(self.d) - 1
        k = min(GRANULARITY, self.n - 1)
        customer_d = distances[1:, 1:]
        order = np.argsort(customer_d, axis=1, kind="stable")
        self.near: list[list[int]] = [[]] + [
            [int(j) + 1 for j in row if j != i][:k] for i, row in enumerate(order)
        ]
        moves = {
            "relocate": self._relocate,
            "swap": self._swap,
            "two_opt": self._two_opt,
            "two_opt_star": self._two_opt_star,
        }
        self._moves = [moves[op] for op in ops]
        self.tours: list[list[int]] = []
        self.loads: list[int] = []
        self.route_of: list[int] = []
        self.pos_of: list[int] = []
        self.moves_applied = 0

    def run(self, tours: list[list[int]]) -> list[list[int]]:
        """Improve tours until no enabled move improves them.

        Args:
            tours: Feasible starting tours

        Returns:
            Locally optimal tours
        """
        self.tours = [list(tour) for tour in tours if tour]
        self._reindex()
        if not self._moves:
            return self.tours
        improved = True
        while improved:
            improved = False
            for u in self.rng.permutation(np.arange(1, self.n + 1)):
                for move in self._moves:
                    if move(int(u)):
                        improved = True
                        self.moves_applied += 1
                        break
        return [tour for tour in self.tours if tour]

    def _reindex(self) -> None:
        self.tours = [tour for tour in self.tours if tour]
        self.loads = [sum(self.q[node] for node in tour) for tour in self.tours]
        self.route_of = [-1] * (self.n + 1)
        self.pos_of = [-1] * (self.n + 1)
        for r, tour in enumerate(self.tours):
            for p, node in enumerate(tour):
                self.route_of[node] = r
                self.pos_of[node] = p

    def _neighbors(self, node: int) -> tuple[int, int]:
        tour = self.tours[self.route_of[node]]
        p = self.pos_of[node]
        prev = tour[p - 1] if p > 0 else 0
        nxt = tour[p + 1] if p + 1 < len(tour) else 0
        return prev, nxt

    def _can_open_route(self) -> bool:
        return self.fleet_limit is None or len(self.tours) < self.fleet_limit

    def _relocate(self, u: int) -> bool:
        d, r = self.d, self.route_of[u]
        a, b = self._neighbors(u)
        gain = d[a][u] + d[u][b] - d[a][b]
        for v in self.near[u]:
            r2 = self.route_of[v]
            if r2 != r and self.loads[r2] + self.q[u] > self.capacity:
                continue
            prev_v, next_v = self._neighbors(v)
            for x, y in ((prev_v, v), (v, next_v)):
                if x == u or y == u:
                    continue
                if d[x][u] + d[u][y] - d[x][y] - gain < -EPSILON:
                    tour = self.tours[r]
                    tour.remove(u)
                    target = self.tours[r2]
                    target.insert(target.index(y) if y else len(target), u)
                    self._reindex()
                    return True
        if (
            len(self.tours[r]) > 1
            and self._can_open_route()
            and 2 * d[0][u] - gain < -EPSILON
        ):
            self.tours[r].remove(u)
            self.tours.append([u])
            self._reindex()
            return True
        return False

    def _swap(self, u: int) -> bool:
        d, r, p = self.d, self.route_of[u], self.pos_of[u]
        a, b = self._neighbors(u)
        for v in self.near[u]:
            r2, p2 = self.route_of[v], self.pos_of[v]
            if r2 == r and abs(p2 - p) <= 1:
                continue
            if r2 != r and (
                self.loads[r] - self.q[u] + self.q[v] > self.capacity
                or self.loads[r2] - self.q[v] + self.q[u] > self.capacity
            ):
                continue
            c, e = self._neighbors(v)
            delta = (
                d[a][v] + d[v][b] - d[a][u] - d[u][b]
                + d[c][u] + d[u][e] - d[c][v] - d[v][e]
            )
            if delta < -EPSILON:
                self.tours[r][p] = v
                self.tours[r2][p2] = u
                self._reindex()
                return True
        return False

    def _two_opt(self, u: int) -> bool:
        d, r, p = self.d, self.route_of[u], self.pos_of[u]
        tour = self.tours[r]
        for other in range(len(tour)):
            if other == p:
                continue
            i, j = min(p, other), max(p, other)
            before = tour[i - 1] if i > 0 else 0
            after = tour[j + 1] if j + 1 < len(tour) else 0
            delta = (
                d[before][tour[j]] + d[tour[i]][after]
                - d[before][tour[i]] - d[tour[j]][after]
            )
            if delta < -EPSILON:
                tour[i : j + 1] = tour[i : j + 1][::-1]
                self._reindex()
                return True
        return False

    def _two_opt_star(self, u: int) -> bool:
        d, r, p = self.d, self.route_of[u], self.pos_of[u]
        tour = self.tours[r]
        _, nu = self._neighbors(u)
        head_load = sum(self.q[node] for node in tour[: p + 1])
        for v in self.near[u]:
            r2 = self.route_of[v]
            if r2 == r:
                continue
            _, nv = self._neighbors(v)
            delta = d[u][nv] + d[v][nu] - d[u][nu] - d[v][nv]
            if delta >= -EPSILON:
                continue
            other = self.tours[r2]
            p2 = self.pos_of[v]
            head2 = sum(self.q[node] for node in other[: p2 + 1])
            if (
                head_load + self.loads[r2] - head2 > self.capacity
                or head2 + self.loads[r] - head_load > self.capacity
            ):
                continue
            self.tours[r], self.tours[r2] = (
                tour[: p + 1] + other[p2 + 1 :],
                other[: p2 + 1] + tour[p + 1 :],
            )
            self._reindex()
            return True
        return False
