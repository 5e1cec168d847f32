"""
Configuration management for rhombiflip.

This module handles loading, validation, and management of application configuration
from JSON files and environment variables.
"""

import json
import os
from pathlib import Path
from typing import Optional, Dict, Any
import logging

from pydantic import ValidationError

from .models import RhombiflipConfig

logger = logging.getLogger(__name__)

# Environment variable -> (section, key, parser)
ENV_OVERRIDES = {
    "RHOMBIFLIP_SEED": ("sampling", "seed", int),
    "RHOMBIFLIP_JOBS": ("enumeration", "jobs", int),
    "RHOMBIFLIP_MAX_STATES": ("search", "max_states", int),
    "RHOMBIFLIP_VERTEX_LIMIT": ("enumeration", "vertex_limit", int),
}


class ConfigManager:
    """Manages application configuration with reload capability."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            config_path: Path to configuration file. If None, uses default path.
        """
        self.config_path = config_path or self._get_default_config_path()
        self._config: Optional[RhombiflipConfig] = None
        self._load_config()

    def _get_default_config_path(self) -> str:
        """Get default configuration file path."""
        current_dir = Path(__file__).parent
        project_root = current_dir.parent.parent
        default_path = project_root / "config" / "rhombiflip.json"

        if default_path.exists():
            return str(default_path)

        env_path = os.getenv("RHOMBIFLIP_CONFIG_PATH")
        if env_path and Path(env_path).exists():
            return env_path

        return str(default_path)

    def _load_config(self) -> bool:
        """Load configuration from file with validation; False when the file had to be replaced by defaults."""
        logger.debug(
            f"Loading configuration from {self.config_path}",
            extra={
                "config_path": self.config_path,
                "config_operation": "load_start"
            }
        )

        try:
            if not Path(self.config_path).exists():
                logger.info(
                    f"Config file not found at {self.config_path}, using defaults",
                    extra={
                        "config_path": self.config_path,
                        "config_operation": "file_not_found_using_defaults"
                    }
                )
                self._config = RhombiflipConfig(**self._apply_env_overrides({}))
                return True

            with open(self.config_path, 'r') as f:
                config_data = json.load(f)

            logger.debug(
                f"Configuration file parsed successfully, found {len(config_data)} top-level keys",
                extra={
                    "config_keys": list(config_data.keys()),
                    "config_operation": "json_parsed"
                }
            )

            config_data = self._apply_env_overrides(config_data)
            self._config = RhombiflipConfig(**config_data)

            logger.debug(
                f"Configuration loaded successfully from {self.config_path}",
                extra={
                    "config_path": self.config_path,
                    "max_states": self._config.search.max_states,
                    "jobs": self._config.enumeration.jobs,
                    "seed": self._config.sampling.seed,
                    "config_operation": "load_success"
                }
            )
            return True

        except json.JSONDecodeError as e:
            logger.error(
                f"Invalid JSON in configuration file {self.config_path}: {e}",
                extra={
                    "config_path": self.config_path,
                    "error_line": getattr(e, 'lineno', None),
                    "error_column": getattr(e, 'colno', None),
                    "config_operation": "json_parse_error"
                }
            )
            self._config = self._get_default_config()
            return False

        except (ValidationError, ValueError) as e:
            logger.error(
                f"Failed to load configuration from {self.config_path}: {type(e).__name__}: {e}",
                extra={
                    "config_path": self.config_path,
                    "error_type": type(e).__name__,
                    "config_operation": "load_error"
                }
            )
            self._config = self._get_default_config()
            return False

    def _apply_env_overrides(self, config_data: Dict[str, Any]) -> Dict[str, Any]:
        """Apply environment variable overrides to configuration."""
        overrides_applied = []

        for env_name, (section, key, parse) in ENV_OVERRIDES.items():
            raw = os.environ.get(env_name)
            if raw is None or raw == "":
                continue
            try:
                value = parse(raw)
            except ValueError:
                logger.warning(
                    f"Ignoring {env_name}={raw!r}: not an integer",
                    extra={"config_operation": "env_override_rejected"}
                )
                continue
            config_data.setdefault(section, {})[key] = value
            overrides_applied.append(f"{env_name}={value}")

        if overrides_applied:
            logger.info(
                f"Applied {len(overrides_applied)} environment variable overrides",
                extra={
                    "overrides_applied": overrides_applied,
                    "config_operation": "env_overrides_applied"
                }
            )

        return config_data

    def _get_default_config(self) -> RhombiflipConfig:
        """Get default configuration for fallback."""
        return RhombiflipConfig()

    @property
    def config(self) -> RhombiflipConfig:
        """Get current configuration."""
        if self._config is None:
            self._load_config()
        return self._config

    def reload_config(self) -> bool:
        """
        Reload configuration from file.

        Returns:
            True if reload was successful, False otherwise. On failure the
            previous configuration stays in effect.
        """
        old_config = self._config
        try:
            loaded = self._load_config()
        except OSError as e:
            logger.error(f"Failed to reload configuration: {e}", extra={"config_operation": "reload_error"})
            self._config = old_config
            return False
        if not loaded:
            logger.error(
                f"Configuration in {self.config_path} rejected, keeping the previous one",
                extra={"config_operation": "reload_rejected"}
            )
            self._config = old_config
            return False
        logger.info("Configuration reloaded successfully", extra={"config_operation": "reload"})
        return True


# Global configuration manager instance
config_manager = ConfigManager()
