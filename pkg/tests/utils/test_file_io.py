"""Tests for file I/O helpers."""

from pathlib import Path

import pytest
from pydantic import BaseModel

from hvrp.core.exceptions import FileIOError, ParseError
from hvrp.utils.file_io import parse_output_option, read_json_model


class Record(BaseModel):
    name: str
    cost: float


class TestParseOutputOption:
    """Tests for parse_output_option."""

    @pytest.mark.parametrize("name", ["table", "json", "csv"])
    def test_format_names(self, name: str) -> None:
        """Test bare format names go to stdout."""
        assert parse_output_option(name) == (name, "")

    def test_file_creates_parent(self, tmp_path: Path) -> None:
        """Test a file path picks the format from its extension."""
        target = tmp_path / "nested" / "out.CSV"
        assert parse_output_option(str(target)) == ("csv", str(target))
        assert target.parent.is_dir()

    def test_bad_extension(self, tmp_path: Path) -> None:
        """Test unsupported extensions raise FileIOError."""
        with pytest.raises(FileIOError, match="Invalid output option"):
            parse_output_option(str(tmp_path / "out.txt"))


class TestReadJsonModel:
    """Tests for read_json_model."""

    def test_valid(self, tmp_path: Path) -> None:
        """Test a valid file validates into the model."""
        path = tmp_path / "r.json"
        path.write_text('{"name": "a", "cost": 2}')
        assert read_json_model(path, Record) == Record(name="a", cost=2.0)

    def test_missing(self, tmp_path: Path) -> None:
        """Test a missing file raises FileIOError."""
        with pytest.raises(FileIOError, match="File not found"):
            read_json_model(tmp_path / "none.json", Record)

    def test_syntax_error_line(self, tmp_path: Path) -> None:
        """Test JSON syntax errors carry the line number."""
        path = tmp_path / "r.json"
        path.write_text('{\n"name": "a",\n"cost": }\n')
        with pytest.raises(ParseError) as exc_info:
            read_json_model(path, Record)
        assert exc_info.value.line == 3

    def test_wrong_fields(self, tmp_path: Path) -> None:
        """Test content that fails validation raises ParseError."""
        path = tmp_path / "r.json"
        path.write_text('{"name": "a"}')
        with pytest.raises(ParseError, match="cost"):
            read_json_model(path, Record)
