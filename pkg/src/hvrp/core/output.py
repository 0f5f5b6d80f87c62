"""Output formatters for different formats (table, json, csv)."""

import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

import pandas as pd
from pydantic import BaseModel
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from hvrp.core.exceptions import FileIOError, UsageError
from hvrp.core.pydantic import (
    basemodel_to_dataframe,
    categorize_basemodel_fields,
    flatten_basemodel_for_export,
)
from hvrp.utils.console import new_line, text, text_dimmed

console = Console()

OutputData = BaseModel | list[BaseModel]


class BaseModelTableFormatter:
    """Formatter for rendering BaseModel objects as Rich tables with metadata panels."""

    def format(self, model: BaseModel) -> None:
        """Format and display a BaseModel with metadata panel and list field tables.

        Args:
            model: Pydantic BaseModel instance to format
        """
        metadata, list_fields = categorize_basemodel_fields(model)
        if metadata:
            self._render_metadata_panel(model, metadata)
        for field_name, items in list_fields.items():
            if metadata:
                new_line()
            self.render_table(items, title=f"{field_name.title()} ({len(items)})")

    def _render_metadata_panel(
        self, model: BaseModel, metadata: dict[str, Any]
    ) -> None:
        lines = [
            f"[bold cyan]{key}:[/bold cyan] {format_value(value)}"
            for key, value in metadata.items()
        ]
        panel = Panel(
            "\n".join(lines),
            title=f"[bold]{model.__class__.__name__}[/bold]",
            border_style="cyan",
            padding=(1, 2),
        )
        console.print(panel)

    def render_table(self, items: list[BaseModel] | list[dict], title: str = "") -> None:
        """Render records as a Rich Table.

        Args:
            items: BaseModel or dict records
            title: Optional table title
        """
        df = basemodel_to_dataframe(items)
        if df.empty:
            text_dimmed("No items to display")
            return
        table = Table(
            show_header=True,
            header_style="bold cyan",
            title=f"[bold]{title}[/bold]" if title else None,
        )
        for col in df.columns:
            table.add_column(str(col))
        for row in df.itertuples(index=False):
            table.add_row(*[format_value(val) for val in row])
        console.print(table)


def format_value(value: object) -> str:
    """Format a value for display in a table or panel.

    Args:
        value: Value to format

    Returns:
        Formatted string
    """
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return "[dim]-[/dim]"
    if isinstance(value, bool):
        return "[green]True[/green]" if value else "[red]False[/red]"
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, list):
        if len(value) > 20:
            return f"[dim]{len(value)} items[/dim]"
        return " ".join(str(v) for v in value) if value else "[dim][]"
    return str(value)


class OutputFormatter(ABC):
    """Base class for output formatters."""

    @abstractmethod
    def format(self, data: OutputData, output_file: str = "") -> None:
        """Format and output data.

        Args:
            data: A model or a list of models
            output_file: Optional file path to write to. If empty, writes to stdout.
        """

    def _to_dataframe(self, data: OutputData) -> pd.DataFrame:
        """Flatten one model to a single row, or a list to one row per model."""
        if isinstance(data, list):
            return pd.DataFrame([flatten_basemodel_for_export(m) for m in data])
        return pd.DataFrame([flatten_basemodel_for_export(data)])


class TableFormatter(OutputFormatter):
    """Rich table formatter for terminal output."""

    def format(self, data: OutputData, output_file: str = "") -> None:
        """Format data as a Rich table."""
        if output_file:
            raise UsageError("Table format can only be output to terminal (stdout)")
        formatter = BaseModelTableFormatter()
        if isinstance(data, list):
            formatter.render_table(data)
        else:
            formatter.format(data)


class JSONFormatter(OutputFormatter):
    """JSON formatter for machine-readable output."""

    def format(self, data: OutputData, output_file: str = "") -> None:
        """Format data as JSON with keys in field order."""
        if isinstance(data, list):
            output: Any = [m.model_dump(mode="json") for m in data]
        else:
            output = data.model_dump(mode="json")
        json_str = json.dumps(output, indent=2, ensure_ascii=False)
        if output_file:
            try:
                Path(output_file).write_text(json_str + "\n", encoding="utf-8")
            except OSError as e:
                raise FileIOError(f"Failed to write JSON file: {e}") from e
        else:
            text(json_str)


class CSVFormatter(OutputFormatter):
    """CSV formatter for export-friendly output."""

    def format(self, data: OutputData, output_file: str = "") -> None:
        """Format data as CSV."""
        df = self._to_dataframe(data)
        if output_file:
            try:
                df.to_csv(output_file, index=False)
            except OSError as e:
                raise FileIOError(f"Failed to write CSV file: {e}") from e
        else:
            text(df.to_csv(index=False))


FORMATTERS: dict[str, type[OutputFormatter]] = {
    "table": TableFormatter,
    "json": JSONFormatter,
    "csv": CSVFormatter,
}


def get_formatter(format_type: str) -> OutputFormatter:
    """Factory function to get formatter by type.

    Args:
        format_type: Format type (table, json, csv)

    Returns:
        OutputFormatter instance

    Raises:
        UsageError: If format_type is not supported
    """
    formatter_class = FORMATTERS.get(format_type.lower())
    if not formatter_class:
        raise UsageError(
            f"Unsupported format: {format_type}. "
            f"Supported formats: {', '.join(FORMATTERS)}"
        )
    return formatter_class()


def output_data(
    data: OutputData,
    format_type: str = "table",
    output_file: str = "",
) -> None:
    """Convenience function to format and output data.

    Args:
        data: Model or list of models to output
        format_type: Output format (table, json, csv)
        output_file: Optional output file path

    Example:
        >>> output_data(result, format_type="json", output_file="solution.json")
        >>> output_data(result, format_type="table")
    """
    get_formatter(format_type).format(data, output_file)
