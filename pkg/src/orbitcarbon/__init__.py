"""Lifecycle carbon intensity of computing on Earth and in low-Earth orbit."""

from .config import (
    ConfigError,
    System,
    emit_system_config,
    load_flow_config,
    load_registry,
    load_system_config,
    parse_system_config,
    resolve,
)
from .quantity import Q, Quantity, convert, combine
from .workload import estimate, intensity_table

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Q",
    "Quantity",
    "System",
    "combine",
    "convert",
    "emit_system_config",
    "estimate",
    "intensity_table",
    "load_flow_config",
    "load_registry",
    "load_system_config",
    "parse_system_config",
    "resolve",
]
