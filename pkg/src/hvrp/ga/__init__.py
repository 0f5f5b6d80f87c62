"""Genetic search over depot assignments with predicted subproblem costs."""

from hvrp.ga.evolve import Candidates, evolve
from hvrp.ga.operators import (
    crossover,
    mutate,
    nearest_depot_assignment,
    neighbor_depot_assignment,
    repair,
    second_nearest_assignment,
    select_parents,
    targeted_assignments,
    targeted_mutation,
    tournament,
)
from hvrp.ga.population import Population, diversity_scores, fitness_scores, load_excess
from hvrp.ga.problem import AssignmentProblem, PredictionCache
from hvrp.ga.solve import (
    FinalSolution,
    RouteRecord,
    SolveResult,
    finalize,
    route_records,
    run_pipeline,
    solve_mdvrp,
)

__all__ = [
    "AssignmentProblem",
    "Candidates",
    "FinalSolution",
    "Population",
    "PredictionCache",
    "RouteRecord",
    "SolveResult",
    "crossover",
    "diversity_scores",
    "evolve",
    "finalize",
    "fitness_scores",
    "load_excess",
    "mutate",
    "nearest_depot_assignment",
    "neighbor_depot_assignment",
    "repair",
    "route_records",
    "run_pipeline",
    "second_nearest_assignment",
    "select_parents",
    "solve_mdvrp",
    "targeted_assignments",
    "targeted_mutation",
    "tournament",
]
