"""Clarke-Wright parallel savings construction."""

import numpy as np


def savings_tours(
    distances: np.ndarray,
    demands: np.ndarray,
    capacity: int,
    shape: float = 1.0,
) -> list[list[int]]:
    """Build tours by merging route ends in decreasing order of savings.

    The savings of joining customers i and j are
    ``d(0,i) + d(0,j) - shape * d(i,j)``; only positive savings are merged.
    Ties are processed in (i, j) order so the result is deterministic.

    Args:
        distances: (N+1, N+1) matrix with the depot at index 0
        demands: Node demands with ``demands[0] == 0``
        capacity: Vehicle capacity
        shape: Route-shape parameter lambda

    Returns:
        Tours of customer node ids
    """
    n = len(distances) - 1
    if n == 1:
        return [[1]]
    i_idx, j_idx = np.triu_indices(n, k=1)
    i_idx, j_idx = i_idx + 1, j_idx + 1
    savings = distances[0, i_idx] + distances[0, j_idx] - shape * distances[i_idx, j_idx]
    order = np.argsort(-savings, kind="stable")

    route_of = list(range(n + 1))
    tours: dict[int, list[int]] = {node: [node] for node in range(1, n + 1)}
    loads = {node: int(demands[node]) for node in range(1, n + 1)}

    for k in order:
        if savings[k] <= 0:
            break
        i, j = int(i_idx[k]), int(j_idx[k])
        ri, rj = route_of[i], route_of[j]
        if ri == rj or loads[ri] + loads[rj] > capacity:
            continue
        ti, tj = tours[ri], tours[rj]
        if ti[-1] == i and tj[0] == j:
            merged = ti + tj
        elif ti[0] == i and tj[-1] == j:
            merged = tj + ti
        elif ti[-1] == i and tj[-1] == j:
            merged = ti + tj[::-1]
        elif ti[0] == i and tj[0] == j:
            merged = ti[::-1] + tj
        else:
            continue
        tours[ri] = merged
        loads[ri] += loads.pop(rj)
        del tours[rj]
        for node in tj:
            route_of[node] = ri

    return [tours[key] for key in sorted(tours)]
