"""Console messages, progress indicators and status spinners.

Status messages go to stderr so that ``--output json`` on stdout stays pipeable.
"""

import sys
from collections.abc import Generator
from contextlib import contextmanager
from typing import Any, Protocol

from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeElapsedColumn,
)

console = Console()
err_console = Console(stderr=True)


class ProgressLike(Protocol):
    """The subset of rich.progress.Progress used by commands."""

    def add_task(self, description: str, total: float | None = ...) -> Any:  # noqa: ANN401
        """Register a task."""
        ...

    def update(self, task_id: Any, advance: float | None = ...) -> None:  # noqa: ANN401
        """Advance a task."""
        ...


def success(message: str) -> None:
    """Print success message."""
    err_console.print(f"[green]✓ {message}[/green]")


def error(message: str) -> None:
    """Print error message."""
    err_console.print(f"[red] ✗ Error: {message}[/red]")


def warning(message: str) -> None:
    """Print warning message."""
    err_console.print(f"[yellow] ⚠ Warning: {message}[/yellow]")


def info(message: str) -> None:
    """Print info message."""
    err_console.print(f"[blue]ℹ {message}[/blue]")  # noqa: RUF001


def text(message: str) -> None:
    """Print plain text to stdout."""
    console.print(message, soft_wrap=True, highlight=False, markup=False)


def emphasis(message: str) -> None:
    """Print a bold section heading."""
    err_console.print(f"[bold]{message}[/bold]")


def text_dimmed(message: str) -> None:
    """Print dimmed text message."""
    err_console.print(f"[dim]{message}[/dim]")


def new_line() -> None:
    """Print a new line."""
    err_console.print()


@contextmanager
def spinner(
    message: str,
    success_msg: str = "",
    error_msg: str = "",
) -> Generator[object, None, None]:
    """Display a live status while a long operation runs.

    Args:
        message: Initial status message
        success_msg: Message to display on success
        error_msg: Message to display on error

    Yields:
        Status object (or the console in non-TTY environments)

    Example:
        >>> with spinner("Evolving assignments", success_msg="Done") as live:
        ...     live.update("Routing top candidates")
    """
    if not sys.stderr.isatty():
        info(message)
        try:
            yield err_console
            if success_msg:
                success(success_msg)
        except Exception:
            if error_msg:
                error(error_msg)
            raise
        return

    with err_console.status(f"{message}...", spinner="dots") as status_obj:
        try:
            yield status_obj
            if success_msg:
                success(success_msg)
        except Exception:
            if error_msg:
                error(error_msg)
            # Re-raise exception so @handle_errors can catch it
            raise


class _SilentProgress:
    """Progress stand-in for non-interactive environments."""

    def add_task(self, description: str, total: float | None = None) -> int:
        return 0

    def update(self, task_id: object, advance: float | None = None) -> None:
        pass


@contextmanager
def progress_bar(description: str) -> Generator[ProgressLike, None, None]:
    """Create a progress bar for operations with a known total.

    Args:
        description: Description of the operation

    Yields:
        Progress object; call ``add_task`` then ``update(task, advance=1)``

    Example:
        >>> with progress_bar("Labeling") as progress:
        ...     task = progress.add_task("Labeling", total=100)
        ...     progress.update(task, advance=1)
    """
    if not sys.stderr.isatty():
        info(f"{description}...")
        yield _SilentProgress()
        return

    progress = Progress(
        SpinnerColumn(spinner_name="dots", style="blue"),
        TextColumn("[blue]{task.description}"),
        BarColumn(complete_style="green", finished_style="green"),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=err_console,
    )
    with progress:
        yield progress
