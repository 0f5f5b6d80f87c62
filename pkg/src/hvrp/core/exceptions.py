"""Custom exceptions for hvrp."""


class HvrpError(Exception):
    """Base exception for all hvrp errors."""

    exit_code = 1


class UsageError(HvrpError):
    """Invalid usage or arguments."""

    exit_code = 2


class ConfigError(HvrpError):
    """Configuration error."""

    exit_code = 3


class FileIOError(HvrpError):
    """File I/O operation failed."""

    exit_code = 5


class ParseError(FileIOError):
    """An instance or data file does not match its format."""

    def __init__(
        self,
        message: str,
        path: str = "",
        line: int | None = None,
        field: str = "",
    ) -> None:
        """Create a parse error pointing at the offending location.

        Args:
            message: What went wrong
            path: File being parsed
            line: 1-based line number, if known
            field: Name of the field being read
        """
        self.path = path
        self.line = line
        self.field = field
        location = path
        if line is not None:
            location = f"{location}:{line}"
        if field:
            location = f"{location} ({field})"
        super().__init__(f"{location}: {message}" if location else message)


class InstanceError(HvrpError):
    """Invalid problem instance or instance specification."""

    exit_code = 2


class InstanceSizeError(InstanceError):
    """Instance too large for the requested operation."""


class InfeasibleError(HvrpError):
    """No feasible solution exists under the named bound."""

    exit_code = 6

    def __init__(self, message: str, bound: str = "") -> None:
        """Create an infeasibility report.

        Args:
            message: Human readable description
            bound: The violated bound (e.g. ``fleet_limit``, ``capacity``)
        """
        self.bound = bound
        super().__init__(message)


class FeasibilityError(HvrpError):
    """A given solution violates a constraint."""

    exit_code = 6

    def __init__(self, message: str, constraint: str = "") -> None:
        """Create a feasibility violation.

        Args:
            message: Human readable description
            constraint: The violated constraint (``duplicate``, ``capacity``,
                ``fleet``, ``depot``, ``coverage``, ``index``, ``cost``,
                ``depot_capacity``)
        """
        self.constraint = constraint
        super().__init__(message)


class FitError(HvrpError):
    """Regression fit failed."""

    exit_code = 7


class PredictorError(HvrpError):
    """Predictor model or checkpoint problem."""

    exit_code = 8
