"""File I/O helpers shared by commands."""

import json
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, ValidationError

from hvrp.core.exceptions import FileIOError, ParseError

M = TypeVar("M", bound=BaseModel)

OUTPUT_FORMATS = ("table", "json", "csv")
_EXTENSIONS = {".json": "json", ".csv": "csv"}


def parse_output_option(output: str) -> tuple[str, str]:
    """Parse the unified --output option to determine format and file path.

    Args:
        output: Output value (format name or file path)

    Returns:
        Tuple of (format, file_path); the path is empty for a format name

    Raises:
        FileIOError: If a path has no supported extension

    Examples:
        parse_output_option("json") -> ("json", "")
        parse_output_option("solution.json") -> ("json", "solution.json")
    """
    if output in OUTPUT_FORMATS:
        return (output, "")
    format_type = _EXTENSIONS.get(Path(output).suffix.lower())
    if not format_type:
        raise FileIOError(
            f"Invalid output option: {output}\n"
            f"Must be either:\n"
            f"  - A format: {', '.join(OUTPUT_FORMATS)}\n"
            f"  - A file path with extension: {', '.join(_EXTENSIONS)}"
        )
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    return (format_type, output)


def read_json_model(path: str | Path, model: type[M]) -> M:
    """Read a JSON file into a pydantic model.

    Args:
        path: JSON file
        model: Model class to validate against

    Returns:
        Validated model

    Raises:
        FileIOError: If the file is missing or unreadable
        ParseError: If the content is not valid JSON for the model
    """
    path = Path(path)
    if not path.exists():
        raise FileIOError(f"File not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise FileIOError(f"Failed to read file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=str(path), line=e.lineno) from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ParseError(str(e), path=str(path)) from e
