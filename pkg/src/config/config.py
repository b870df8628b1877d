"""Configuration management."""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class ConfigManager:
    """Manages chaincraft configuration (JSON file + defaults + env overrides)."""

    DEFAULT_CONFIG = {
        "integration": {
            "method": "dp54",
            "h": 0.01,
            "abs_tol": 1e-10,
            "rel_tol": 1e-10,
            "max_steps": 200000,
            "max_step": None,
        },
        "chain": {
            "delta_min": 1e-10,  # tangency guard in chain_rhs
            "delta_event": 1e-6,  # |Δ| at which integration stops
        },
        "fefferman": {
            "fd_step": 1e-6,
        },
        "circles": {
            "turn_band": 0.1,  # fraction of peak F integrated in second-order form
            "max_turns": 10000,
        },
        "verify": {
            "threads": 4,
            "tol_scale": 1.0,
            "time_budget": 60.0,
        },
        "system": {
            "log_level": "WARNING",
        },
    }

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration manager."""
        self.config_path = (
            config_path or os.environ.get("CHAINCRAFT_CONFIG") or self._get_default_path()
        )
        self.config = self._load_config()
        self._apply_env()

    def _get_default_path(self) -> str:
        """Get default config path."""
        return str(Path.home() / ".chaincraft" / "config.json")

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file or use defaults."""
        config = copy.deepcopy(self.DEFAULT_CONFIG)
        if Path(self.config_path).exists():
            try:
                with open(self.config_path, "r") as f:
                    stored = json.load(f)
                _merge(config, stored)
            except Exception as e:
                logger.warning(f"Failed to load config from {self.config_path}: {e}")
                return copy.deepcopy(self.DEFAULT_CONFIG)
        return config

    def _apply_env(self):
        threads = os.environ.get("CHAINCRAFT_THREADS")
        if threads:
            try:
                self.set("verify.threads", max(1, int(threads)))
            except ValueError:
                logger.warning(f"Ignoring CHAINCRAFT_THREADS={threads!r}: not an integer")

    def save_config(self):
        """Save configuration to file."""
        Path(self.config_path).parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, "w") as f:
            json.dump(self.config, f, indent=2)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot-notation key."""
        value: Any = self.config
        for k in key.split("."):
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default
        return value

    def set(self, key: str, value: Any):
        """Set configuration value by dot-notation key."""
        keys = key.split(".")
        config = self.config
        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value

    def section(self, name: str) -> Dict[str, Any]:
        """Copy of one top-level section."""
        return copy.deepcopy(self.config.get(name, {}))


def _merge(base: Dict[str, Any], override: Dict[str, Any]):
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
