"""Split an MDVRP into per-depot CVRP subproblems."""

import numpy as np

from hvrp.core.exceptions import InstanceError
from hvrp.instances.types import CvrpInstance, MdvrpInstance


def validate_assignment(instance: MdvrpInstance, assignment: np.ndarray) -> np.ndarray:
    """Check an assignment against an instance.

    Args:
        instance: The MDVRP
        assignment: Depot index per customer

    Returns:
        The assignment as an int64 array

    Raises:
        InstanceError: If the length or any depot index is invalid
    """
    genes = np.asarray(assignment, dtype=np.int64)
    if genes.shape != (instance.n_customers,):
        raise InstanceError(
            f"assignment has {genes.size} genes, expected {instance.n_customers}"
        )
    if genes.size and (genes.min() < 0 or genes.max() >= instance.n_depots):
        raise InstanceError(f"depot index outside [0, {instance.n_depots - 1}]")
    return genes


def depot_loads(instance: MdvrpInstance, assignment: np.ndarray) -> np.ndarray:
    """Total demand l_d assigned to each depot."""
    return np.bincount(
        assignment, weights=instance.demands, minlength=instance.n_depots
    )


def subproblem(
    instance: MdvrpInstance,
    depot: int,
    members: np.ndarray,
    with_fleet_limit: bool = True,
) -> CvrpInstance:
    """The CVRP of one depot serving the given customers.

    Args:
        instance: The MDVRP
        depot: Depot index
        members: Global customer indices served from ``depot``
        with_fleet_limit: Pass the depot's fleet size on as the fleet limit

    Returns:
        Subproblem keeping global ids in ``customer_ids``
    """
    return CvrpInstance(
        depot=instance.depots[depot],
        coords=instance.coords[members],
        demands=instance.demands[members],
        capacity=instance.capacity,
        fleet_limit=instance.fleet_limit(depot) if with_fleet_limit else None,
        name=f"{instance.name}/d{depot}",
        customer_ids=members,
        depot_id=int(depot),
    )


def decompose(instance: MdvrpInstance, assignment: np.ndarray) -> list[CvrpInstance]:
    """Build one CVRP per depot that serves at least one customer.

    Subproblems come in depot order; each keeps the global indices of its
    customers in ``customer_ids`` and its depot in ``depot_id``. A depot with a
    fleet size passes it on as the subproblem's fleet limit.

    Args:
        instance: The MDVRP
        assignment: Depot index per customer

    Returns:
        Subproblems partitioning the customers
    """
    genes = validate_assignment(instance, assignment)
    return [
        subproblem(instance, int(depot), np.flatnonzero(genes == depot))
        for depot in np.unique(genes)
    ]
