"""Location-routing on top of the assignment GA."""

from hvrp.clrp.problem import (
    ClrpFitnessTerms,
    ClrpProblem,
    clrp_fitness,
    clrp_repair,
    clrp_targeted_mutation,
    covers_demand,
    open_depots,
)
from hvrp.clrp.solve import ClrpSolveResult, clrp_ga_config, clrp_solve

__all__ = [
    "ClrpFitnessTerms",
    "ClrpProblem",
    "ClrpSolveResult",
    "clrp_fitness",
    "clrp_ga_config",
    "clrp_repair",
    "clrp_solve",
    "clrp_targeted_mutation",
    "covers_demand",
    "open_depots",
]
