"""Baselines, benchmark suites and experiment reports."""

from hvrp.bench.baselines import (
    BaselineResult,
    kmeans10,
    kmeans_assign,
    match_clusters,
    nda_assign,
    route_nda,
)
from hvrp.bench.experiment import nda_infeasibility_rate, run_experiment, run_seed
from hvrp.bench.report import (
    REPORT_COLUMNS,
    ReportRow,
    aggregate,
    gap,
    read_report,
    write_report,
)
from hvrp.bench.suites import SUITES, SuiteInstance, perturb_instance, suite_instances

__all__ = [
    "REPORT_COLUMNS",
    "SUITES",
    "BaselineResult",
    "ReportRow",
    "SuiteInstance",
    "aggregate",
    "gap",
    "kmeans10",
    "kmeans_assign",
    "match_clusters",
    "nda_assign",
    "nda_infeasibility_rate",
    "perturb_instance",
    "read_report",
    "route_nda",
    "run_experiment",
    "run_seed",
    "suite_instances",
    "write_report",
]
