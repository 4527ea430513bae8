"""Turanflag Configuration - Solver, rounding and compute settings"""

from .manager import DEFAULT_CONFIG, ConfigManager, get_config, reset_config

__all__ = [
    "DEFAULT_CONFIG",
    "ConfigManager",
    "get_config",
    "reset_config",
]
