"""Package initialization."""

__version__ = "0.1.0"
__author__ = "Chaincraft Team"

from .config.settings import RunConfig
from .core.types import ChainState, CurveSample, GeodesicState
from .main import ChaincraftApp, main

__all__ = [
    "ChaincraftApp",
    "main",
    "RunConfig",
    "ChainState",
    "CurveSample",
    "GeodesicState",
]
