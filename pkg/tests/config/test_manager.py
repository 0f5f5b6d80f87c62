"""Tests for configuration manager module."""

import json
import tomllib
from pathlib import Path

import pytest

from hvrp.config.manager import (
    ConfigManager,
    _expand_config_dict,
    _expand_env_var,
    _remove_empty_values,
)
from hvrp.config.schema import Config, GaConfig, TrainConfig
from hvrp.core.exceptions import ConfigError


class TestConfigManager:
    """Tests for ConfigManager class."""

    def test_load_defaults_without_file(self, mock_config_dir: Path) -> None:
        """Test load returns defaults when no default file exists."""
        assert ConfigManager.load() == Config()

    def test_exists(self, mock_config_dir: Path) -> None:
        """Test exists checks the default file and explicit paths."""
        assert not ConfigManager.exists()
        ConfigManager.DEFAULT_CONFIG_FILE.touch()
        assert ConfigManager.exists()
        assert not ConfigManager.exists(mock_config_dir / "other.toml")

    def test_save_and_load_round_trip(self, mock_config_dir: Path) -> None:
        """Test saving and loading a config keeps every setting."""
        config = Config(ga=GaConfig(generations=12, rng_seed=3))
        path = ConfigManager.save(config)
        assert path == ConfigManager.DEFAULT_CONFIG_FILE
        assert ConfigManager.load() == config

    def test_defaults_survive_toml(self, tmp_path: Path) -> None:
        """Test the unbounded last size bucket survives TOML."""
        path = ConfigManager.save(Config(), tmp_path / "config.toml")
        loaded = ConfigManager.load(path)
        assert loaded.buckets[-1].upper == float("inf")
        assert loaded == Config()

    def test_load_json(self, tmp_path: Path) -> None:
        """Test JSON config files are accepted."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"ga": {"top_k": 2}}))
        assert ConfigManager.load(path).ga.top_k == 2

    def test_load_raises_for_missing_config(self, tmp_path: Path) -> None:
        """Test load raises error for a missing explicit file."""
        with pytest.raises(ConfigError, match="not found"):
            ConfigManager.load(tmp_path / "missing.toml")

    def test_load_raises_for_unknown_section(self, tmp_path: Path) -> None:
        """Test unknown top-level sections are rejected."""
        path = tmp_path / "config.toml"
        path.write_text("[plotting]\nstyle = 'x'\n")
        with pytest.raises(ConfigError, match="Invalid config file"):
            ConfigManager.load(path)

    def test_load_raises_for_invalid_value(self, tmp_path: Path) -> None:
        """Test field validation errors surface as ConfigError."""
        path = tmp_path / "config.toml"
        path.write_text("[ga]\npopulation_low = 50\npopulation_high = 10\n")
        with pytest.raises(ConfigError):
            ConfigManager.load(path)

    def test_load_raises_for_unsupported_suffix(self, tmp_path: Path) -> None:
        """Test only .toml and .json are read."""
        path = tmp_path / "config.yaml"
        path.write_text("ga: {}")
        with pytest.raises(ConfigError, match="Unsupported config format"):
            ConfigManager.load(path)

    def test_load_expands_env_vars(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test env references in string values are expanded before validation."""
        monkeypatch.setenv("HVRP_TEST_GENERATIONS", "42")
        path = tmp_path / "config.toml"
        path.write_text(
            '[ga]\ngenerations = "${HVRP_TEST_GENERATIONS}"\n'
            'top_k = "${HVRP_TEST_UNSET:4}"\n'
        )
        config = ConfigManager.load(path)
        assert config.ga.generations == 42
        assert config.ga.top_k == 4

    def test_load_without_env_var_expansion(self, tmp_path: Path) -> None:
        """Test unexpanded references fail validation of numeric fields."""
        path = tmp_path / "config.toml"
        path.write_text('[ga]\ngenerations = "${HVRP_TEST_GENERATIONS:3}"\n')
        with pytest.raises(ConfigError):
            ConfigManager.load(path, expand_env_vars=False)

    def test_save_removes_empty_values(self, tmp_path: Path) -> None:
        """Test that unset optional values are not written."""
        path = ConfigManager.save(Config(train=TrainConfig()), tmp_path / "c.toml")
        with open(path, "rb") as f:
            data = tomllib.load(f)
        assert "batch_size" not in data["train"]


class TestHelperFunctions:
    """Tests for helper functions in manager module."""

    def test_remove_empty_values_dict(self) -> None:
        """Test _remove_empty_values removes empty strings and None."""
        data = {
            "key1": "value1",
            "key2": "",
            "key3": None,
            "key4": 0,
            "key5": False,
        }
        assert _remove_empty_values(data) == {
            "key1": "value1",
            "key4": 0,
            "key5": False,
        }

    def test_remove_empty_values_nested(self) -> None:
        """Test _remove_empty_values handles nested dicts and tuples."""
        data = {"outer": {"key1": (1, 2), "key2": "", "key3": None}}
        assert _remove_empty_values(data) == {"outer": {"key1": [1, 2]}}

    def test_remove_empty_values_non_dict(self) -> None:
        """Test _remove_empty_values returns scalars unchanged."""
        assert _remove_empty_values("string") == "string"
        assert _remove_empty_values(42) == 42
        assert _remove_empty_values([1, 2, 3]) == [1, 2, 3]

    def test_expand_env_var_simple(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test _expand_env_var expands simple variable."""
        monkeypatch.setenv("HVRP_TEST_VAR", "test_value")
        assert _expand_env_var("${HVRP_TEST_VAR}") == "test_value"

    def test_expand_env_var_with_default(self) -> None:
        """Test _expand_env_var uses default when var not set."""
        assert _expand_env_var("${HVRP_NONEXISTENT:default_value}") == "default_value"

    def test_expand_env_var_no_default_raises(self) -> None:
        """Test _expand_env_var raises when var not set and no default."""
        with pytest.raises(ConfigError, match="is not set"):
            _expand_env_var("${HVRP_NONEXISTENT}")

    def test_expand_env_var_multiple_vars(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test _expand_env_var expands multiple variables."""
        monkeypatch.setenv("HVRP_VAR1", "value1")
        monkeypatch.setenv("HVRP_VAR2", "value2")
        assert _expand_env_var("${HVRP_VAR1}-${HVRP_VAR2}") == "value1-value2"

    def test_expand_config_dict_preserves_non_string_values(self) -> None:
        """Test _expand_config_dict preserves non-string values."""
        data = {"ga": {"generations": 8, "inject_nda": True}}
        assert _expand_config_dict(data) == data
