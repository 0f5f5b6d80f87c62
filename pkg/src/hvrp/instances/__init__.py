"""Problem instances, generators, file formats and feasibility checks."""

from hvrp.instances.decompose import (
    decompose,
    depot_loads,
    subproblem,
    validate_assignment,
)
from hvrp.instances.generators import (
    generate_clrp,
    generate_cvrp,
    generate_mdvrp,
    quadrant_demand,
)
from hvrp.instances.io import (
    instance_from_json,
    instance_to_json,
    parse_barreto,
    parse_cordeau,
    parse_tsplib_cvrp,
    read_instance,
    write_instance,
)
from hvrp.instances.types import (
    ClrpInstance,
    CvrpInstance,
    InstanceSpec,
    MdvrpInstance,
    Route,
    RoutingSolution,
)
from hvrp.instances.validation import check_solution, routing_solution_cost

__all__ = [
    "ClrpInstance",
    "CvrpInstance",
    "InstanceSpec",
    "MdvrpInstance",
    "Route",
    "RoutingSolution",
    "check_solution",
    "decompose",
    "depot_loads",
    "generate_clrp",
    "generate_cvrp",
    "generate_mdvrp",
    "instance_from_json",
    "instance_to_json",
    "parse_barreto",
    "parse_cordeau",
    "parse_tsplib_cvrp",
    "quadrant_demand",
    "read_instance",
    "routing_solution_cost",
    "subproblem",
    "validate_assignment",
]
