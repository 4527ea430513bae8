"""
Turanflag Configuration Manager - Load and validate configuration
"""

import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

# Try to import tomllib (Python 3.11+) or tomli
try:
    import tomllib
except ImportError:
    try:
        import tomli as tomllib
    except ImportError:
        tomllib = None

logger = logging.getLogger(__name__)


# Default configuration values
DEFAULT_CONFIG: Dict[str, Any] = {
    "solver": {
        "path": "",
        "timeout": 3600,
        "kind": "auto",
    },
    "rounding": {
        "denominators": [1 << 10, 1 << 16, 1 << 20, 1 << 24, 1 << 28, 1 << 32],
        "epsilons": ["0/1"] + [f"1/{10 ** k}" for k in range(3, 10)],
        "sharp_tolerance": 1e-6,
    },
    "lagrangian": {
        "restarts": 200,
        "iterations": 10000,
        "seed": 0,
    },
    "compute": {
        "workers": 1,
    },
}

SOLVER_KINDS = ("auto", "csdp", "sdpa")


class ConfigManager:
    """Loads Turanflag configuration and exposes validated settings"""

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize config manager.

        Args:
            config_path: Optional custom config file path
        """
        self.config_path = Path(config_path) if config_path else self._get_default_path()
        self.config: Dict[str, Any] = self._deep_copy(DEFAULT_CONFIG)
        self._load()

    @staticmethod
    def _get_default_path() -> Path:
        """Get default config file path based on OS"""
        if sys.platform == "win32":
            base = Path(os.environ.get("APPDATA", Path.home()))
            return base / "turanflag" / "config.toml"
        xdg_config = os.environ.get("XDG_CONFIG_HOME", Path.home() / ".config")
        return Path(xdg_config) / "turanflag" / "config.toml"

    @staticmethod
    def _deep_copy(d: Dict[str, Any]) -> Dict[str, Any]:
        result = {}
        for k, v in d.items():
            if isinstance(v, dict):
                result[k] = ConfigManager._deep_copy(v)
            elif isinstance(v, list):
                result[k] = v.copy()
            else:
                result[k] = v
        return result

    def _load(self) -> None:
        """Load configuration from file"""
        if not self.config_path.exists():
            return

        if tomllib is None:
            logger.warning("no TOML parser available; ignoring %s", self.config_path)
            return

        try:
            with open(self.config_path, "rb") as f:
                user_config = tomllib.load(f)
            self._merge_config(user_config)
        except (OSError, tomllib.TOMLDecodeError) as e:
            logger.warning("cannot read %s (%s); using defaults", self.config_path, e)

    def _merge_config(self, user_config: Dict[str, Any]) -> None:
        """Merge user config into default config; unknown keys are ignored"""
        for section, values in user_config.items():
            if section not in self.config or not isinstance(values, dict):
                logger.debug("ignoring config section %r", section)
                continue
            for key, value in values.items():
                if key in self.config[section]:
                    self.config[section][key] = value
                else:
                    logger.debug("ignoring config key %s.%s", section, key)

    # ========================================================================
    # Accessor methods
    # ========================================================================

    @property
    def solver_path(self) -> Optional[str]:
        """Configured solver binary, None when unset"""
        return self.config["solver"]["path"] or None

    @property
    def solver_timeout(self) -> float:
        """Solver timeout in seconds (at least 1)"""
        return max(1.0, float(self.config["solver"]["timeout"]))

    @property
    def solver_kind(self) -> str:
        kind = self.config["solver"]["kind"]
        return kind if kind in SOLVER_KINDS else "auto"

    @property
    def denominators(self) -> List[int]:
        """Denominator schedule, positive and increasing"""
        values = sorted({int(d) for d in self.config["rounding"]["denominators"] if int(d) >= 1})
        return values or list(DEFAULT_CONFIG["rounding"]["denominators"])

    @property
    def epsilons(self) -> List[Fraction]:
        """Identity-shift schedule as exact rationals"""
        values = []
        for text in self.config["rounding"]["epsilons"]:
            try:
                value = Fraction(str(text))
            except (ValueError, ZeroDivisionError):
                logger.warning("ignoring epsilon %r", text)
                continue
            if value >= 0:
                values.append(value)
        return values or [Fraction(0)]

    @property
    def sharp_tolerance(self) -> float:
        return max(0.0, float(self.config["rounding"]["sharp_tolerance"]))

    @property
    def restarts(self) -> int:
        return max(1, int(self.config["lagrangian"]["restarts"]))

    @property
    def iterations(self) -> int:
        return max(1, int(self.config["lagrangian"]["iterations"]))

    @property
    def seed(self) -> int:
        return int(self.config["lagrangian"]["seed"])

    @property
    def workers(self) -> int:
        """Worker processes (at least 1)"""
        return max(1, int(self.config["compute"]["workers"]))


# Global config instance
_config_instance: Optional[ConfigManager] = None


def get_config(config_path: Optional[str] = None) -> ConfigManager:
    """
    Get the global config manager instance.

    Args:
        config_path: Optional custom config path (only used on first call)

    Returns:
        ConfigManager instance
    """
    global _config_instance
    if _config_instance is None:
        _config_instance = ConfigManager(config_path)
    return _config_instance


def reset_config() -> None:
    """Reset the global config instance (for testing)"""
    global _config_instance
    _config_instance = None
