"""Configuration file management."""

import json
import os
import re
import tomllib
from pathlib import Path
from typing import Any, TypeVar, overload

import tomli_w
from pydantic import ValidationError

from hvrp.config.schema import Config
from hvrp.core.exceptions import ConfigError

T = TypeVar("T")


class ConfigManager:
    """Load and save hvrp configuration files (TOML or JSON)."""

    CONFIG_DIR = Path.home() / ".hvrp"
    DEFAULT_CONFIG_FILE = CONFIG_DIR / "config.toml"

    @classmethod
    def load(cls, path: str | Path = "", expand_env_vars: bool = True) -> Config:
        """Load configuration from file with env var expansion.

        Expands ${VAR} and ${VAR:default} references in string values.

        Args:
            path: Config file (.toml or .json). If empty, uses the default
                config file when it exists, otherwise built-in defaults.
            expand_env_vars: Whether to expand environment variable references

        Returns:
            Config object

        Raises:
            ConfigError: If the file doesn't exist or is invalid
        """
        if not path:
            if not cls.DEFAULT_CONFIG_FILE.exists():
                return Config()
            path = cls.DEFAULT_CONFIG_FILE

        config_path = Path(path)
        if not config_path.exists():
            raise ConfigError(
                f"Config file '{config_path}' not found.\n\n"
                "Run 'hvrp config init' to create one."
            )

        try:
            data = _read_config_file(config_path)
            if expand_env_vars:
                data = _expand_config_dict(data)
            return Config(**data)
        except ValidationError as e:
            raise ConfigError(f"Invalid config file: {e}") from e
        except ConfigError:
            raise
        except Exception as e:
            raise ConfigError(f"Failed to load config: {e}") from e

    @classmethod
    def exists(cls, path: str | Path = "") -> bool:
        """Whether a config file exists at the path or the default location."""
        return (Path(path) if path else cls.DEFAULT_CONFIG_FILE).exists()

    @classmethod
    def save(cls, config: Config, path: str | Path = "") -> Path:
        """Save configuration to a TOML file.

        Args:
            config: Config object to save
            path: Destination; defaults to the default config file

        Returns:
            Path written

        Raises:
            ConfigError: If save fails
        """
        config_path = Path(path) if path else cls.DEFAULT_CONFIG_FILE
        try:
            config_path.parent.mkdir(parents=True, exist_ok=True)
            data = _remove_empty_values(config.model_dump(exclude_none=True))
            with open(config_path, "wb") as f:
                tomli_w.dump(data, f)
        except Exception as e:
            raise ConfigError(f"Failed to save config: {e}") from e
        return config_path


def _read_config_file(path: Path) -> dict[str, Any]:
    """Read a TOML or JSON config file into a dict.

    Args:
        path: Config file path

    Returns:
        Raw configuration dictionary

    Raises:
        ConfigError: If the extension is not supported
    """
    suffix = path.suffix.lower()
    if suffix == ".toml":
        with open(path, "rb") as f:
            return tomllib.load(f)
    if suffix == ".json":
        return json.loads(path.read_text(encoding="utf-8"))
    raise ConfigError(
        f"Unsupported config format: {suffix}\nSupported formats: .toml, .json"
    )


@overload
def _remove_empty_values(obj: dict[str, Any]) -> dict[str, Any]: ...


@overload
def _remove_empty_values(obj: T) -> T: ...


def _remove_empty_values(
    obj: dict[str, Any] | T,
) -> dict[str, Any] | T:
    """Recursively remove None and empty string values from nested dicts.

    This creates cleaner TOML output by excluding unset optional fields.
    When loading configs, Pydantic will apply default values for missing fields.

    Args:
        obj: Dictionary or other object to process

    Returns:
        Filtered dictionary with None and empty strings removed
    """
    if isinstance(obj, dict):
        return {
            k: _remove_empty_values(v)
            for k, v in obj.items()
            if v != "" and v is not None
        }
    if isinstance(obj, (list, tuple)):
        return [_remove_empty_values(v) for v in obj]  # type: ignore[return-value]
    return obj


def _expand_config_dict(data: dict[str, Any]) -> dict[str, Any]:
    """Recursively expand environment variables in a config dictionary.

    Args:
        data: Configuration dictionary

    Returns:
        Dictionary with all ${VAR} references expanded
    """
    result: dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, dict):
            result[key] = _expand_config_dict(value)
        elif isinstance(value, str):
            result[key] = _expand_env_var(value)
        else:
            result[key] = value
    return result


def _expand_env_var(value: str) -> str:
    """Expand environment variable references in a string.

    Supports:
    - ${VAR_NAME} - expands to env var value, raises error if not set
    - ${VAR_NAME:default} - expands to env var value or default if not set
    - literal values - returned as-is

    Args:
        value: String value that may contain ${VAR} references

    Returns:
        Expanded string value

    Raises:
        ConfigError: If required env var is not set
    """
    pattern = r"\$\{([^}:]+)(?::([^}]*))?\}"

    def replace_var(match: re.Match) -> str:
        var_name = match.group(1)
        default_value = match.group(2)

        env_value = os.environ.get(var_name)

        if env_value is not None:
            return env_value
        if default_value is not None:
            return default_value
        raise ConfigError(
            f"Environment variable {var_name} is not set and no default provided"
        )

    return re.sub(pattern, replace_var, value)
