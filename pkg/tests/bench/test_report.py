"""Tests for report rows and their CSV form."""

from pathlib import Path

import pytest

from hvrp.bench.report import (
    REPORT_COLUMNS,
    ReportRow,
    aggregate,
    gap,
    optional_gap,
    read_report,
    report_frame,
    write_report,
)
from hvrp.core.exceptions import FileIOError, ParseError, UsageError


def _run(repeat: int, cost: float, seed: int, instance: str = "a") -> ReportRow:
    return ReportRow(
        kind="run",
        suite="T",
        instance=instance,
        n_customers=100,
        n_depots=2,
        repeat=repeat,
        seed=seed,
        predicted_cost=cost - 1.0,
        cost=cost,
        nda_cost=12.0,
        g_n=gap(cost, 12.0),
        gancp_time=0.5,
        finalize_time=0.25,
    )


RUNS = [_run(0, 10.5, 11), _run(1, 12.25, 12), _run(0, 20.0, 13, instance="b")]


class TestGap:
    """Tests for gap helpers."""

    @pytest.mark.parametrize(
        ("cost", "reference", "expected"),
        [(586.39, 576.87, 1.65), (429.6, 424.9, 1.11), (90.0, 100.0, -10.0)],
    )
    def test_gap(self, cost: float, reference: float, expected: float) -> None:
        """Test the signed percentage gap."""
        assert gap(cost, reference) == pytest.approx(expected, abs=0.005)

    def test_zero_reference(self) -> None:
        """Test a zero reference is rejected."""
        with pytest.raises(UsageError):
            gap(1.0, 0.0)

    def test_optional_gap(self) -> None:
        """Test missing costs give no gap."""
        assert optional_gap(None, 1.0) is None
        assert optional_gap(1.0, None) is None
        assert optional_gap(11.0, 10.0) == pytest.approx(10.0)


class TestAggregate:
    """Tests for aggregate."""

    def test_average_and_best(self) -> None:
        """Test one average and one best row per instance."""
        rows = aggregate(RUNS)
        assert [(r.kind, r.instance) for r in rows] == [
            ("average", "a"),
            ("best", "a"),
            ("average", "b"),
            ("best", "b"),
        ]
        average, best = rows[0], rows[1]
        assert average.cost == pytest.approx(11.375)
        assert average.repeat == 2
        assert average.nda_cost == 12.0
        assert average.kmeans_cost is None
        assert best.cost == 10.5
        assert best.seed == 11
        assert best.g_n == pytest.approx(gap(10.5, 12.0))

    def test_empty(self) -> None:
        """Test no runs give no rows."""
        assert aggregate([]) == []


class TestReportFiles:
    """Tests for write_report and read_report."""

    def test_round_trip(self, tmp_path: Path) -> None:
        """Test rows survive the CSV."""
        rows = RUNS + aggregate(RUNS)
        path = write_report(rows, tmp_path / "out" / "report.csv")
        assert path.read_text().splitlines()[0] == ",".join(REPORT_COLUMNS)
        loaded = read_report(path)
        assert len(loaded) == len(rows)
        for got, want in zip(loaded, rows, strict=True):
            assert got.kind == want.kind
            assert got.instance == want.instance
            assert got.seed == want.seed
            assert got.kmeans_cost is None
            assert got.cost == pytest.approx(want.cost)

    def test_missing(self, tmp_path: Path) -> None:
        """Test a missing report raises FileIOError."""
        with pytest.raises(FileIOError, match="Report not found"):
            read_report(tmp_path / "none.csv")

    def test_wrong_columns(self, tmp_path: Path) -> None:
        """Test foreign CSV files are rejected."""
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ParseError, match="unexpected report columns"):
            read_report(path)

    def test_report_frame(self) -> None:
        """Test only aggregate rows are shown by default."""
        frame = report_frame(RUNS + aggregate(RUNS))
        assert set(frame["kind"]) == {"average", "best"}
        with pytest.raises(UsageError):
            report_frame([])
