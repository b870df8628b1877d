"""Horocycle chains in the hyperbolic plane and their duality with Hooke ellipses.

A point (a, b) of the upper half-plane is the Hooke ellipse
x² − 2axy + (a² + b²)y² = b; the ellipses through a fixed point of the
plane form a horocycle. Chains of the horocycle geometry are the images of
(0, 1) under the Hooke chains through the identity, and trace rational
bicircular quartics.
"""

import math
from typing import Tuple, Union

import numpy as np

from ..core.errors import DegenerateError, PoleError
from .hooke import gchain

POLE_TOL = 1e-14


def horocycle_projection(c: float, phi: float) -> Tuple[float, float]:
    """Upper half-plane point of the chain with parameter c at φ = 2τ.

    Raises:
        PoleError: the denominator −2cos²φ + c(c + 2 sin φ)cos φ − c² vanishes.
    """
    s, co = math.sin(phi), math.cos(phi)
    denom = -2.0 * co * co + c * (c + 2.0 * s) * co - c * c
    if abs(denom) < POLE_TOL:
        raise PoleError("horocycle_projection", phi)
    x = c * c * ((c + 2.0 * s) * co - c - s) / denom
    y = -2.0 * co * co / denom
    return x, y


def mobius(g: np.ndarray, z: complex) -> complex:
    """Fractional linear action of a 2×2 matrix on z."""
    return (g[0, 0] * z + g[0, 1]) / (g[1, 0] * z + g[1, 1])


def horocycle_point_mobius(c: float, phi: float) -> Tuple[float, float]:
    """Same point computed as gchain(φ/2) acting on i."""
    w = mobius(gchain(c, phi / 2.0), 1j)
    return w.real, w.imag


def horocycle_quartic_residual(c: float, x, y):
    """Left side of the bicircular quartic of the chain with parameter c."""
    rho = x * x + y * y
    return (
        rho * rho
        - (4.0 * c * x + (c * c + 4.0) * y) * rho
        + (6.0 * c * c - 2.0) * x * x
        + 2.0 * c**3 * x * y
        + 6.0 * y * y
        - 4.0 * c * (c * c - 1.0) * x
        - (c**4 - 3.0 * c * c + 4.0) * y
        + (c * c - 1.0) ** 2
    )


def normalized_quartic_residual(c: float, x, y):
    """Quartic residual scaled by (1 + x² + y²)²."""
    return horocycle_quartic_residual(c, x, y) / (1.0 + x * x + y * y) ** 2


def uhp_to_hyperboloid(a: float, b: float) -> np.ndarray:
    """(E, F, G) = (1/b)(1, −a, a² + b²), with EG − F² = 1."""
    if b <= 0.0:
        raise ValueError(f"b must be positive, got {b}")
    return np.array([1.0, -a, a * a + b * b]) / b


def hooke_ellipse_residual(x, y, a: float, b: float):
    """x² − 2axy + (a² + b²)y² − b: zero when (x, y) lies on the ellipse of (a, b)."""
    return x * x - 2.0 * a * x * y + (a * a + b * b) * y * y - b


def ellipse_parameters(g: np.ndarray) -> Tuple[float, float]:
    """(a, b) of the ellipse g·{|u| = 1} for g ∈ SL₂ℝ."""
    Q = np.linalg.inv(g @ g.T)
    b = 1.0 / Q[0, 0]
    return float(-Q[0, 1] * b), float(b)


Horocycle = Union[Tuple[complex, float], Tuple[None, float]]


def horocycle_of_point(x: float, y: float) -> Horocycle:
    """Horocycle of the ellipses through (x, y).

    Returns (center, radius) of the circle tangent to the boundary, or
    (None, x²) for the horizontal line b = x² when y = 0.
    """
    if x == 0.0 and y == 0.0:
        raise DegenerateError("the origin lies on no horocycle")
    if y == 0.0:
        return None, x * x
    radius = 1.0 / (2.0 * y * y)
    return complex(x / y, radius), radius


def on_horocycle(horocycle: Horocycle, a: float, b: float) -> float:
    """Signed distance-like residual of (a, b) against a horocycle."""
    center, radius = horocycle
    if center is None:
        return b - radius
    return abs(complex(a, b) - center) - radius
