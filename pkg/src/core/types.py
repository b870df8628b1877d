"""Core value types shared across chaincraft."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Generic, Iterator, List, Mapping, Optional, Tuple, TypeVar

import numpy as np

T = TypeVar("T")


class IntegrationStatus(str, Enum):
    """Why an integration stopped."""
    REACHED_T1 = "reached_t1"
    EVENT = "event"
    MAX_STEPS = "max_steps"
    NONFINITE = "nonfinite"


@dataclass(frozen=True)
class ChainState:
    """Phase point (x, y, p, y′, p′) of the reduced chain system."""
    x: float
    y: float
    p: float
    yp: float
    pp: float

    @property
    def delta(self) -> float:
        """Transversality Δ = y′ − p."""
        return self.yp - self.p

    def as_array(self) -> np.ndarray:
        return np.array([self.y, self.p, self.yp, self.pp], dtype=float)

    @classmethod
    def from_array(cls, x: float, values: np.ndarray) -> "ChainState":
        y, p, yp, pp = (float(v) for v in values)
        return cls(float(x), y, p, yp, pp)


@dataclass(frozen=True)
class ChainDerivative:
    """Second derivatives (y″, p″) along a chain."""
    ypp: float
    ppp: float


@dataclass(frozen=True)
class FeffermanChartPoint:
    """Point (x, y, p, τ) of J¹ × ℝ*, with τ = log|s|."""
    x: float
    y: float
    p: float
    tau: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.p, self.tau], dtype=float)


@dataclass(frozen=True)
class MetricTensor:
    """Symmetric 4×4 metric components in coordinate order (x, y, p, τ)."""
    components: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.components, dtype=float)
        if g.shape != (4, 4):
            raise ValueError(f"metric must be 4x4, got {g.shape}")
        object.__setattr__(self, "components", g)

    def __call__(self, u, v) -> float:
        return float(np.asarray(u, dtype=float) @ self.components @ np.asarray(v, dtype=float))

    def norm(self, v) -> float:
        """g(v, v)."""
        return self(v, v)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.components)

    def signature(self, tol: float = 0.0) -> Tuple[int, int]:
        """(number of positive, number of negative) eigenvalues."""
        ev = self.eigenvalues()
        return int(np.sum(ev > tol)), int(np.sum(ev < -tol))


@dataclass(frozen=True)
class GeodesicState:
    """Position on J¹ × ℝ* with a velocity (ẋ, ẏ, ṗ, τ̇)."""
    position: FeffermanChartPoint
    velocity: Tuple[float, float, float, float]

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.position.as_array(), np.asarray(self.velocity, dtype=float)])

    @classmethod
    def from_array(cls, values: np.ndarray) -> "GeodesicState":
        v = [float(a) for a in values]
        return cls(FeffermanChartPoint(*v[:4]), (v[4], v[5], v[6], v[7]))


@dataclass(frozen=True)
class EulerState:
    """Momentum P ∈ 𝔤* as a 4-vector."""
    P: Tuple[float, float, float, float]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.P, dtype=float)

    @classmethod
    def of(cls, values) -> "EulerState":
        a = [float(v) for v in values]
        if len(a) != 4:
            raise ValueError(f"momentum needs 4 components, got {len(a)}")
        return cls((a[0], a[1], a[2], a[3]))


@dataclass(frozen=True)
class CurveSample:
    """Time-stamped polyline with per-sample diagnostics."""
    t: np.ndarray
    states: np.ndarray
    diagnostics: Dict[str, np.ndarray] = field(default_factory=dict)
    status: IntegrationStatus = IntegrationStatus.REACHED_T1
    state_names: Tuple[str, ...] = ()

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        states = np.asarray(self.states, dtype=float)
        if states.ndim == 1:
            states = states.reshape(len(t), -1)
        if len(t) != len(states):
            raise ValueError("t and states differ in length")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("sample times must be strictly increasing")
        diagnostics = {k: np.asarray(v, dtype=float) for k, v in self.diagnostics.items()}
        for name, values in diagnostics.items():
            if len(values) != len(t):
                raise ValueError(
                    f"diagnostic {name!r} has {len(values)} values for {len(t)} samples"
                )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "diagnostics", diagnostics)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def final_t(self) -> float:
        return float(self.t[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1].copy()

    def column(self, name: str) -> np.ndarray:
        """State component or diagnostic by name."""
        if name in self.state_names:
            return self.states[:, self.state_names.index(name)]
        if name in self.diagnostics:
            return self.diagnostics[name]
        raise KeyError(name)

    def max_abs(self, name: str) -> float:
        values = self.column(name)
        finite = values[np.isfinite(values)]
        return float(np.max(np.abs(finite))) if len(finite) else float("nan")

    def records(self) -> Iterator[Tuple[float, np.ndarray, Dict[str, float]]]:
        names = list(self.diagnostics)
        for k in range(len(self.t)):
            row = {n: float(self.diagnostics[n][k]) for n in names}
            yield float(self.t[k]), self.states[k], row

    def with_diagnostics(self, extra: Mapping[str, np.ndarray]) -> "CurveSample":
        merged = dict(self.diagnostics)
        merged.update(extra)
        return CurveSample(self.t, self.states, merged, self.status, self.state_names)

    def with_status(self, status: IntegrationStatus) -> "CurveSample":
        return CurveSample(self.t, self.states, self.diagnostics, status, self.state_names)


@dataclass(frozen=True)
class GroupTrajectory:
    """Group elements g(t) as embedded matrices, with diagnostics."""
    t: np.ndarray
    matrices: np.ndarray
    diagnostics: Dict[str, np.ndarray] = field(default_factory=dict)
    status: IntegrationStatus = IntegrationStatus.REACHED_T1
    momenta: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.t)

    def at(self, k: int) -> np.ndarray:
        return self.matrices[k]


class Registry(Generic[T]):
    """Name-keyed registry of catalog entries."""

    def __init__(self, kind: str):
        self.kind = kind
        self.entries: Dict[str, T] = {}

    def register(self, name: str, entry: T):
        """Register an entry under name."""
        self.entries[name] = entry

    def unregister(self, name: str):
        if name in self.entries:
            del self.entries[name]

    def get(self, name: str) -> T:
        """Get entry by name."""
        try:
            return self.entries[name]
        except KeyError:
            known = ", ".join(sorted(self.entries))
            raise KeyError(f"unknown {self.kind} {name!r} (known: {known})") from None

    def names(self) -> List[str]:
        return sorted(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def filter(self, predicate: Callable[[T], bool]) -> List[T]:
        """All entries matching predicate."""
        return [e for e in self.entries.values() if predicate(e)]
