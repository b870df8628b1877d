"""Validated settings models built on top of ConfigManager sections."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import ConfigManager


class Method(str, Enum):
    """Explicit Runge–Kutta schemes."""
    RK4 = "rk4"
    DP54 = "dp54"


class Oracle(str, Enum):
    """Geodesic right-hand side selection."""
    EXPLICIT = "explicit"
    GENERIC = "generic"


@dataclass(frozen=True)
class EventSpec:
    """Stop condition g(t, state) = 0.

    direction: +1 only rising crossings, -1 only falling, 0 either.
    scale: |g| tolerance multiplier for bisection.
    """
    function: Callable[[float, np.ndarray], float]
    direction: int = 0
    name: str = "event"
    scale: float = 1.0


class IntegrationConfig(BaseModel):
    """Integrator settings: method, step or tolerances, step cap, optional event."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    method: Method = Method.DP54
    h: float = Field(0.01, gt=0)
    abs_tol: float = Field(1e-10, gt=0)
    rel_tol: float = Field(1e-10, gt=0)
    max_steps: int = Field(200000, ge=1)
    max_step: Optional[float] = Field(None, gt=0)
    event: Optional[EventSpec] = None
    event_tol: float = Field(1e-12, gt=0)

    def with_event(self, event: Optional[EventSpec]) -> "IntegrationConfig":
        return self.model_copy(update={"event": event})

    def with_updates(self, **changes) -> "IntegrationConfig":
        """Validated copy with some fields replaced."""
        data = self.model_dump(exclude={"event"})
        data.update(changes)
        data.setdefault("event", self.event)
        return IntegrationConfig(**data)

    @classmethod
    def from_manager(cls, manager: ConfigManager) -> "IntegrationConfig":
        return cls(**{k: v for k, v in manager.section("integration").items() if v is not None})


class ChainConfig(BaseModel):
    """Chain integration: integrator plus tangency thresholds."""

    model_config = ConfigDict(frozen=True)

    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)
    delta_min: float = Field(1e-10, gt=0)
    delta_event: float = Field(1e-6, ge=0)

    @classmethod
    def from_manager(cls, manager: ConfigManager) -> "ChainConfig":
        return cls(integration=IntegrationConfig.from_manager(manager), **manager.section("chain"))


class GeodesicConfig(BaseModel):
    """Null-geodesic integration settings."""

    model_config = ConfigDict(frozen=True)

    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)
    oracle: Oracle = Oracle.EXPLICIT
    fd_step: float = Field(1e-6, gt=0)
    x_stop: Optional[float] = None
    chain_check: bool = True
    chain_max_step: float = Field(0.01, gt=0)
    delta_min: float = Field(1e-10, gt=0)

    @classmethod
    def from_manager(cls, manager: ConfigManager, **overrides) -> "GeodesicConfig":
        data = dict(
            integration=IntegrationConfig.from_manager(manager),
            fd_step=manager.get("fefferman.fd_step", 1e-6),
            delta_min=manager.get("chain.delta_min", 1e-10),
        )
        data.update(overrides)
        return cls(**data)


class CirclesConfig(BaseModel):
    """Circle-chain integration: integrator plus the turning band (fraction of peak F)."""

    model_config = ConfigDict(frozen=True)

    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)
    turn_band: float = Field(0.1, gt=0, lt=1)
    max_turns: int = Field(10000, ge=0)

    @classmethod
    def from_manager(cls, manager: ConfigManager) -> "CirclesConfig":
        integration = IntegrationConfig.from_manager(manager)
        return cls(integration=integration, **manager.section("circles"))


class VerifyConfig(BaseModel):
    """Acceptance-suite run settings."""

    model_config = ConfigDict(frozen=True)

    threads: int = Field(4, ge=1)
    tol_scale: float = Field(1.0, gt=0)
    time_budget: float = Field(60.0, gt=0)
    only: Optional[str] = None

    @classmethod
    def from_manager(cls, manager: ConfigManager, **overrides) -> "VerifyConfig":
        data = manager.section("verify")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


class RunConfig(BaseModel):
    """One command-line run: geometry source, initial data, model options and output."""

    model_config = ConfigDict(frozen=True)

    command: Literal["chain", "geodesic", "homog", "verify"]
    geometry: Optional[str] = None
    expr: Optional[str] = None
    params: Dict[str, float] = Field(default_factory=dict)
    init: Optional[List[float]] = None
    xmax: Optional[float] = None
    t1: Optional[float] = Field(None, gt=0)
    x_stop: Optional[float] = None
    oracle: Oracle = Oracle.EXPLICIT
    cross_check: bool = False
    model: Optional[str] = None
    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    r: float = Field(1.0, gt=0)
    phi0: float = 0.0
    samples: int = Field(400, ge=2)
    compare: bool = False
    probe: bool = False
    format: Literal["csv", "json", "svg"] = "csv"
    out: Optional[str] = None
    svg: Optional[str] = None

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        if self.command in ("chain", "geodesic"):
            if (self.geometry is None) == (self.expr is None):
                raise ValueError("give exactly one of --geometry and --expr")
            size = 5 if self.command == "chain" else 6
            if self.init is None or len(self.init) != size:
                raise ValueError(f"--init needs {size} comma-separated numbers")
            if self.format == "svg":
                raise ValueError("svg output is only available for homog")
        if self.command == "chain":
            if self.xmax is None or not self.xmax > self.init[0]:
                raise ValueError("--xmax must lie beyond the initial x")
        for path in (self.out, self.svg):
            if path and path != "-" and not Path(path).resolve().parent.is_dir():
                raise ValueError(f"cannot write {path!r}: no such directory")
        return self
