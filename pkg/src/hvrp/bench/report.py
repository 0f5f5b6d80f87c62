"""Experiment report rows and their CSV form."""

from pathlib import Path
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError

from hvrp.core.exceptions import FileIOError, ParseError, UsageError
from hvrp.estimators.base import estimator_gap

RowKind = Literal["run", "average", "best"]


class ReportRow(BaseModel):
    """One report line.

    ``run`` rows hold a single repeat; ``average`` and ``best`` rows aggregate
    an instance's repeats by mean and by the cheapest run.
    """

    kind: RowKind
    suite: str
    instance: str
    n_customers: int
    n_depots: int
    repeat: int | None = None
    seed: int | None = None
    predicted_cost: float | None = None
    cost: float | None = None
    nda_cost: float | None = None
    kmeans_cost: float | None = None
    best_known: float | None = None
    g_n: float | None = None
    g_k: float | None = None
    g_v: float | None = None
    gancp_time: float | None = None
    finalize_time: float | None = None
    kmeans_time: float | None = None


REPORT_COLUMNS: tuple[str, ...] = tuple(ReportRow.model_fields)


def gap(cost: float, reference: float) -> float:
    """Percentage gap of a cost to a reference; negative means cheaper.

    Raises:
        UsageError: If the reference is not positive
    """
    return float(estimator_gap(cost, reference))


def optional_gap(cost: float | None, reference: float | None) -> float | None:
    """``gap`` when both costs are known."""
    if cost is None or reference is None:
        return None
    return gap(cost, reference)


_MEANS = (
    "predicted_cost",
    "cost",
    "g_n",
    "g_k",
    "g_v",
    "gancp_time",
    "finalize_time",
    "kmeans_time",
)


def aggregate(runs: list[ReportRow]) -> list[ReportRow]:
    """Average and best rows per (suite, instance), in first-seen order."""
    if not runs:
        return []
    frame = _frame(runs)
    rows = []
    for (_, _), group in frame.groupby(["suite", "instance"], sort=False):
        first = group.iloc[0]
        fixed = {
            "suite": first["suite"],
            "instance": first["instance"],
            "n_customers": int(first["n_customers"]),
            "n_depots": int(first["n_depots"]),
            "nda_cost": _value(first["nda_cost"]),
            "best_known": _value(first["best_known"]),
        }
        means = {name: _value(group[name].mean()) for name in _MEANS}
        rows.append(
            ReportRow(
                kind="average",
                repeat=len(group),
                kmeans_cost=_value(group["kmeans_cost"].mean()),
                **fixed,
                **means,
            )
        )
        best = group.loc[group["cost"].idxmin()] if group["cost"].notna().any() else first
        rows.append(
            ReportRow(
                kind="best",
                repeat=len(group),
                seed=_value(best["seed"]),
                predicted_cost=_value(best["predicted_cost"]),
                cost=_value(best["cost"]),
                kmeans_cost=_value(group["kmeans_cost"].min()),
                g_n=_value(best["g_n"]),
                g_k=_value(best["g_k"]),
                g_v=_value(best["g_v"]),
                **fixed,
            )
        )
    return rows


def _value(value: object) -> object:
    if pd.isna(value):
        return None
    return value.item() if isinstance(value, np.generic) else value


def _frame(rows: list[ReportRow]) -> pd.DataFrame:
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=list(REPORT_COLUMNS))
    numeric = [c for c in REPORT_COLUMNS if c not in ("kind", "suite", "instance")]
    frame[numeric] = frame[numeric].apply(pd.to_numeric)
    return frame


def write_report(rows: list[ReportRow], path: str | Path) -> Path:
    """Write report rows as CSV with the fixed column order.

    Raises:
        FileIOError: If the file cannot be written
    """
    path = Path(path)
    frame = _frame(rows)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False)
    except OSError as e:
        raise FileIOError(f"Failed to write report {path}: {e}") from e
    return path


def read_report(path: str | Path) -> list[ReportRow]:
    """Parse a report written by ``write_report``.

    Raises:
        FileIOError: If the file is missing
        ParseError: If the columns or a row do not match the report schema
    """
    path = Path(path)
    if not path.exists():
        raise FileIOError(f"Report not found: {path}")
    frame = pd.read_csv(path, dtype={"kind": str, "suite": str, "instance": str})
    if tuple(frame.columns) != REPORT_COLUMNS:
        raise ParseError("unexpected report columns", path=str(path))
    rows = []
    for line, record in enumerate(frame.to_dict(orient="records"), start=2):
        try:
            rows.append(ReportRow(**{k: _value(v) for k, v in record.items()}))
        except ValidationError as e:
            raise ParseError(str(e), path=str(path), line=line) from e
    return rows


def report_frame(
    rows: list[ReportRow], kinds: tuple[RowKind, ...] = ("average", "best")
) -> pd.DataFrame:
    """Rows of the given kinds as a frame, for display."""
    if not rows:
        raise UsageError("the report is empty")
    frame = _frame(rows)
    return frame[frame["kind"].isin(kinds)]
