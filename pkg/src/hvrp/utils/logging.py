"""Logging setup for the hvrp package logger."""

import json
import logging

from rich.logging import RichHandler

from hvrp.utils.console import err_console

LOGGER_NAME = "hvrp"


class JSONLineFormatter(logging.Formatter):
    """Render each record as a single JSON object per line."""

    def format(self, record: logging.LogRecord) -> str:
        """Format a record as JSON."""
        payload = {
            "time": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, sort_keys=True)


def configure_logging(level: int = logging.WARNING, structured: bool = False) -> None:
    """Configure the ``hvrp`` logger.

    Replaces any handler installed by a previous call, so the CLI callback can
    call it once per invocation.

    Args:
        level: Logging level for the package logger
        structured: Emit JSON lines instead of rich-formatted records
    """
    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler: logging.Handler
    if structured:
        handler = logging.StreamHandler()
        handler.setFormatter(JSONLineFormatter())
    else:
        handler = RichHandler(
            console=err_console,
            show_path=False,
            rich_tracebacks=True,
        )
        handler.setFormatter(logging.Formatter("%(message)s"))

    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
