"""Core module initialization."""

from .errors import (
    ChaincraftError,
    DegenerateError,
    DomainError,
    ExprSyntaxError,
    NonFiniteStateError,
    NumericalError,
    PoleError,
    RangeError,
    SingularMetricError,
    TangencyError,
    UnboundParameterError,
    UnknownIdentifierError,
    UsageError,
)
from .types import (
    ChainDerivative,
    ChainState,
    CurveSample,
    EulerState,
    FeffermanChartPoint,
    GeodesicState,
    GroupTrajectory,
    IntegrationStatus,
    MetricTensor,
    Registry,
)

__all__ = [
    "ChaincraftError",
    "DegenerateError",
    "DomainError",
    "ExprSyntaxError",
    "NonFiniteStateError",
    "NumericalError",
    "PoleError",
    "RangeError",
    "SingularMetricError",
    "TangencyError",
    "UnboundParameterError",
    "UnknownIdentifierError",
    "UsageError",
    "ChainDerivative",
    "ChainState",
    "CurveSample",
    "EulerState",
    "FeffermanChartPoint",
    "GeodesicState",
    "GroupTrajectory",
    "IntegrationStatus",
    "MetricTensor",
    "Registry",
]
