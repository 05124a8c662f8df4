"""
Configuration Manager Module

Handles toolkit configuration: sampling, resource bounds, verification grid and
cache location. JSON defaults are merged with an optional user file and with
environment and command-line overrides into an immutable ``Config``.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

from ..exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

CACHE_ENV_VAR = "SRT_CACHE"


@dataclass(frozen=True)
class Config:
    """Effective settings of one toolkit run."""

    weight_bound: int = 3
    degree_bound: int = 4
    sample_count: int = 25
    seed: int = 0
    cache_path: Optional[str] = None
    max_rank: int = 4
    max_weight: int = 6
    grid_max_n: int = 4
    grid_max_m: int = 8
    workers: int = 1
    log_level: str = "INFO"

    def __post_init__(self):
        for name in ("weight_bound", "degree_bound", "sample_count", "max_rank",
                     "max_weight", "grid_max_n", "grid_max_m", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise InvalidParameterError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidParameterError(f"seed must be a non-negative integer, got {self.seed!r}")

    def with_overrides(self, **overrides: Any) -> "Config":
        """Copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class ConfigManager:
    """
    Manages toolkit configuration.

    Features:
    - JSON-based configuration file
    - Default configuration fallbacks
    - Environment variable override for the cache path
    - Export/import and validation
    """

    # Dotted config key for every Config field
    FIELD_KEYS = {
        "weight_bound": "analysis.weight_bound",
        "degree_bound": "analysis.degree_bound",
        "sample_count": "analysis.sample_count",
        "seed": "analysis.seed",
        "max_rank": "bounds.max_rank",
        "max_weight": "bounds.max_weight",
        "grid_max_n": "verification.grid_max_n",
        "grid_max_m": "verification.grid_max_m",
        "workers": "verification.workers",
        "cache_path": "cache.path",
        "log_level": "application.log_level",
    }

    REQUIRED_SECTIONS = ["application", "analysis", "bounds", "verification", "cache"]

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize the Configuration Manager.

        Args:
            config_file (str, optional): JSON file with user settings
        """
        self.config_file = Path(config_file) if config_file else None
        self._default_config = self._get_default_config()
        self._user_config = self._load_user_config()

    def _get_default_config(self) -> Dict[str, Any]:
        """Get the default toolkit configuration."""
        defaults = Config()
        return {
            "application": {
                "name": "Symplectic Reduction Toolkit",
                "version": "1.0.0",
                "log_level": defaults.log_level,
            },
            "analysis": {
                "weight_bound": defaults.weight_bound,
                "degree_bound": defaults.degree_bound,
                "sample_count": defaults.sample_count,
                "seed": defaults.seed,
            },
            "bounds": {
                "max_rank": defaults.max_rank,
                "max_weight": defaults.max_weight,
            },
            "verification": {
                "grid_max_n": defaults.grid_max_n,
                "grid_max_m": defaults.grid_max_m,
                "workers": defaults.workers,
            },
            "cache": {
                "path": defaults.cache_path,
            },
        }

    def _load_user_config(self) -> Dict[str, Any]:
        """Load user configuration from file, merged over the defaults."""
        if self.config_file is None or not self.config_file.exists():
            return self._merge_configs(self._default_config, {})

        try:
            with open(self.config_file, "r", encoding="utf-8") as f:
                user_config = json.load(f)
        except (json.JSONDecodeError, OSError) as e:
            logger.warning("Error loading config file %s: %s; using defaults", self.config_file, e)
            return self._merge_configs(self._default_config, {})

        return self._merge_configs(self._default_config, user_config)

    def _merge_configs(self, default: Dict[str, Any], user: Dict[str, Any]) -> Dict[str, Any]:
        """
        Recursively merge user config with defaults.

        Args:
            default (dict): Default configuration
            user (dict): User configuration

        Returns:
            dict: Merged configuration (a fresh copy)
        """
        merged = {k: (self._merge_configs(v, {}) if isinstance(v, dict) else v) for k, v in default.items()}

        for key, value in user.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_configs(merged[key], value)
            else:
                merged[key] = value

        return merged

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-separated key path.

        Args:
            key_path (str): Dot-separated key path (e.g., 'bounds.max_rank')
            default (Any): Default value if key not found

        Returns:
            Any: Configuration value
        """
        value: Any = self._user_config
        try:
            for key in key_path.split("."):
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key_path: str, value: Any):
        """
        Set configuration value by dot-separated key path.

        Args:
            key_path (str): Dot-separated key path
            value (Any): Value to set
        """
        keys = key_path.split(".")
        config = self._user_config
        for key in keys[:-1]:
            config = config.setdefault(key, {})
        config[keys[-1]] = value

    def reset_to_defaults(self):
        """Reset configuration to defaults."""
        self._user_config = self._merge_configs(self._default_config, {})

    def export_config(self, filepath: str):
        """
        Export current configuration to a file.

        Args:
            filepath (str): Export file path
        """
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(self._user_config, f, indent=2, sort_keys=True)
        logger.info("Configuration exported to %s", filepath)

    def import_config(self, filepath: str):
        """
        Import configuration from a file.

        Args:
            filepath (str): Import file path
        """
        with open(filepath, "r", encoding="utf-8") as f:
            imported_config = json.load(f)
        self._user_config = self._merge_configs(self._default_config, imported_config)
        logger.info("Configuration imported from %s", filepath)

    def validate_config(self) -> bool:
        """
        Validate current configuration.

        Returns:
            bool: True if every section exists and the values build a Config
        """
        for section in self.REQUIRED_SECTIONS:
            if section not in self._user_config:
                logger.warning("Missing required config section: %s", section)
                return False
        try:
            self._build_config()
        except (InvalidParameterError, TypeError) as e:
            logger.warning("Invalid configuration: %s", e)
            return False
        return True

    def _build_config(self) -> Config:
        return Config(**{name: self.get(key) for name, key in self.FIELD_KEYS.items()})

    def to_config(self, **overrides: Any) -> Config:
        """
        Build the effective Config.

        Precedence: explicit overrides (command line) > SRT_CACHE environment
        variable (cache path only) > config file > defaults.

        Args:
            **overrides: Config field values; None means "not given"

        Returns:
            Config: Validated, immutable settings
        """
        config = self._build_config()
        env_cache = os.environ.get(CACHE_ENV_VAR)
        if env_cache:
            config = config.with_overrides(cache_path=env_cache)
        return config.with_overrides(**overrides)

    def get_config_info(self) -> Dict[str, Any]:
        """Get configuration information and status."""
        return {
            "config_file": str(self.config_file) if self.config_file else None,
            "config_exists": bool(self.config_file and self.config_file.exists()),
            "is_valid": self.validate_config(),
            "version": self.get("application.version", "1.0.0"),
        }
