"""Exception hierarchy for chaincraft."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .types import CurveSample


class ChaincraftError(Exception):
    """Base class for every error raised by the library."""


class NumericalError(ChaincraftError):
    """Marker base for failures of a numerical computation (CLI exit 2)."""


class UsageError(ChaincraftError):
    """Contract violation at the command-line surface (CLI exit 64)."""


class DomainError(NumericalError):
    """An elementary function was evaluated outside its domain."""

    def __init__(self, function: str, value: float):
        self.function = function
        self.value = value
        super().__init__(f"{function} is undefined at {value!r}")


class TangencyError(NumericalError):
    """Direction is tangent to the contact distribution (Δ = y′ − p vanishes)."""

    def __init__(self, delta: float, threshold: float = 0.0):
        self.delta = delta
        self.threshold = threshold
        super().__init__(
            f"direction is tangent to the contact distribution: |Δ|={abs(delta):.3e} "
            f"(threshold {threshold:.1e})"
        )


class ExprSyntaxError(ChaincraftError):
    """Malformed expression source; offset is a byte offset into the source."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        self.message = message
        super().__init__(f"syntax error at offset {offset}: {message}")


class UnknownIdentifierError(ChaincraftError):
    """Identifier is neither a variable, a parameter nor a known function."""

    def __init__(self, name: str, offset: int = -1):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier {name!r}")


class UnboundParameterError(ChaincraftError):
    """A parameter used by an expression has no value."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"parameter {name!r} is not bound")


class NonFiniteStateError(NumericalError):
    """The state or right-hand side left the reals (inf/nan)."""

    def __init__(self, t: float, partial: Optional["CurveSample"] = None):
        self.t = t
        self.partial = partial
        super().__init__(f"non-finite state at t={t!r}")


class SingularMetricError(NumericalError):
    """Metric matrix could not be inverted."""


class PoleError(NumericalError):
    """Closed-form expression evaluated at a pole."""

    def __init__(self, what: str, at: float):
        self.what = what
        self.at = at
        super().__init__(f"{what} has a pole at {at!r}")


class RangeError(NumericalError):
    """Parameter outside the range where the construction exists."""

    def __init__(self, name: str, value: float, allowed: str):
        self.name = name
        self.value = value
        self.allowed = allowed
        super().__init__(f"{name}={value!r} outside {allowed}")


class DegenerateError(NumericalError):
    """Construction degenerates for the given parameters."""
