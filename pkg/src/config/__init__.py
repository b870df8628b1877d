"""Config module initialization."""

from .config import ConfigManager
from .settings import (
    ChainConfig,
    CirclesConfig,
    EventSpec,
    GeodesicConfig,
    IntegrationConfig,
    Method,
    Oracle,
    RunConfig,
    VerifyConfig,
)

__all__ = [
    "ConfigManager",
    "ChainConfig",
    "CirclesConfig",
    "EventSpec",
    "GeodesicConfig",
    "IntegrationConfig",
    "Method",
    "Oracle",
    "RunConfig",
    "VerifyConfig",
]
