"""Error parsing and formatting utilities for CLI error messages.

This module walks an exception chain, extracts the structured fields carried by
hvrp exceptions (file locations, violated bounds and constraints) and formats them
into user-friendly messages with a suggestion where one applies.
"""

import sys
from dataclasses import dataclass

from hvrp.core.exceptions import (
    ConfigError,
    FeasibilityError,
    FitError,
    HvrpError,
    InfeasibleError,
    InstanceSizeError,
    ParseError,
    PredictorError,
)


@dataclass
class ParsedError:
    """Structured error information extracted from an exception chain."""

    title: str | None = None
    detail: str | None = None
    location: str | None = None
    constraint: str | None = None
    cause: str | None = None


# Keyed by exception type, first match in MRO order wins
SUGGESTIONS: dict[type[HvrpError], str] = {
    ParseError: "Check the file against the format notes in the docs.",
    ConfigError: "Run 'hvrp config show' to inspect the effective configuration.",
    InfeasibleError: "Increase fleet size or vehicle capacity, or drop the fleet limit.",
    FeasibilityError: "The solution does not satisfy the instance constraints.",
    InstanceSizeError: "Use the heuristic solver for larger instances.",
    FitError: "Add more samples with distinct feature values.",
    PredictorError: "Train a checkpoint with 'hvrp train' or pass --nn.",
}


def parse_exception(exception: Exception) -> ParsedError | None:
    """Parse an exception chain to extract structured error information.

    Walks the exception chain using __cause__ and collects fields from the first
    hvrp exception found. The innermost non-hvrp cause is kept as ``cause``.

    Args:
        exception: The exception to parse

    Returns:
        ParsedError with extracted information, or None if no hvrp error found
    """
    current: BaseException | None = exception
    found: HvrpError | None = None
    cause: BaseException | None = None

    while current is not None:
        if isinstance(current, HvrpError) and found is None:
            found = current
        elif not isinstance(current, HvrpError):
            cause = current
        current = getattr(current, "__cause__", None)

    if found is None:
        return None

    parsed = ParsedError(
        title=type(found).__name__,
        detail=str(found),
        cause=f"{type(cause).__name__}: {cause}" if cause else None,
    )
    if isinstance(found, ParseError) and found.path:
        parsed.location = found.path
        if found.line is not None:
            parsed.location += f":{found.line}"
    if isinstance(found, InfeasibleError) and found.bound:
        parsed.constraint = found.bound
    if isinstance(found, FeasibilityError) and found.constraint:
        parsed.constraint = found.constraint

    return parsed


def get_error_suggestion(exception: HvrpError | None) -> str:
    """Get a helpful suggestion for an hvrp error type.

    Args:
        exception: The error

    Returns:
        Suggestion string, empty if no specific suggestion available
    """
    if exception is None:
        return ""
    for klass in type(exception).__mro__:
        if klass in SUGGESTIONS:
            return SUGGESTIONS[klass]
    return ""


def format_error_message(
    parsed_error: ParsedError,
    suggestion: str = "",
    verbose: bool = False,
) -> str:
    """Format an error message for display.

    Args:
        parsed_error: Parsed error information
        suggestion: Optional suggestion line
        verbose: Whether to show verbose technical details

    Returns:
        Formatted error message string with Rich markup
    """
    if verbose:
        return _format_verbose_error(parsed_error, suggestion)

    return _format_clean_error(parsed_error, suggestion)


def _format_clean_error(error: ParsedError, suggestion: str) -> str:
    """Format error in clean, user-friendly mode."""
    lines = [error.detail or error.title or "Unknown error"]

    if error.constraint:
        lines.append(f"  [dim]Violated: {error.constraint}[/dim]")

    if suggestion:
        lines.append("")
        lines.append(f"  [dim]Suggestion: {suggestion}[/dim]")

    lines.append("  [dim]Run with --verbose for technical details.[/dim]")

    return "\n".join(lines)


def _format_verbose_error(error: ParsedError, suggestion: str) -> str:
    """Format error in verbose mode with full technical details."""
    lines = ["", "[bold]Error:[/bold]"]
    if error.title:
        lines.append(f"  Type: {error.title}")
    if error.detail:
        lines.append(f"  Detail: {error.detail}")
    if error.location:
        lines.append(f"  Location: {error.location}")
    if error.constraint:
        lines.append(f"  Violated: {error.constraint}")
    if error.cause:
        lines.append("")
        lines.append("[bold]Caused by:[/bold]")
        cause = error.cause
        if len(cause) > 1000:
            cause = cause[:1000] + "... (truncated)"
        lines.extend(f"  {line}" for line in cause.split("\n"))

    if suggestion:
        lines.append("")
        lines.append(f"[dim]Suggestion: {suggestion}[/dim]")

    return "\n".join(lines)


def is_verbose_mode() -> bool:
    """Check if verbose mode is enabled via command-line flags.

    Returns:
        True if --verbose or -v flag is present in sys.argv
    """
    return "--verbose" in sys.argv or "-v" in sys.argv
