"""Chains of the flat path geometry (lines in the plane).

Two group models carry the same geometry. In the Heisenberg chart a chain
through the identity is x = b(1 − e^{−ct}), y = −ab(1 − e^{−ct}),
z = a(e^{ct} − 1): the point (x, y) runs along a line and every line of
slope z through it passes through (b, 0). In the Euclidean chart the
normalized chain is z = ic·tan φ, θ = φ, a pencil of lines through (−c, 0).
"""

import math
from typing import Tuple

import numpy as np

from ..core.errors import PoleError


def heisenberg_flat_chain(a: float, b: float, c: float, t) -> np.ndarray:
    """(x, y, z) of the Heisenberg chain through the identity; shape (..., 3)."""
    t = np.asarray(t, dtype=float)
    x = b * (1.0 - np.exp(-c * t))
    return np.stack([x, -a * x, a * (np.exp(c * t) - 1.0)], axis=-1)


def heisenberg_chain_momentum(a: float, b: float, c: float, t: float = 0.0) -> np.ndarray:
    """Momentum P = AX of the same chain, X = (ac·e^{ct}, bc·e^{−ct}, −abc, 3c/2)."""
    return np.array(
        [b * c * math.exp(-c * t) / 2.0, a * c * math.exp(c * t) / 2.0, c / 2.0, -a * b * c / 3.0]
    )


def heisenberg_coordinates(g: np.ndarray) -> Tuple[float, float, float]:
    """(x, y, z) read off an embedded Heisenberg element [[1, z, y], [0, 1, x], [0, 0, 1]]."""
    return float(g[1, 2]), float(g[0, 2]), float(g[0, 1])


def concurrency_residual(b: float, x: float, y: float, z: float) -> float:
    """y + z(b − x): zero when the line of slope z through (x, y) meets (b, 0)."""
    return y + z * (b - x)


def flat_chain_se2(c: float, phi: float) -> Tuple[complex, float]:
    """(z, θ) = (ic·tan φ, φ).

    Raises:
        PoleError: cos φ = 0.
    """
    cos_phi = math.cos(phi)
    if abs(cos_phi) < 1e-15:
        raise PoleError("flat_chain_se2", phi)
    return complex(0.0, c * math.sin(phi) / cos_phi), phi


def se2_chain_momentum(c: float, r: float, phi: float) -> np.ndarray:
    """Null momentum P = (c·tan φ, r cos φ, r sin φ, −2c/3) of the flat SE₂ model."""
    return np.array([c * math.tan(phi), r * math.cos(phi), r * math.sin(phi), -2.0 * c / 3.0])


def se2_chain_z(c: float, r: float, phi0: float, phi: float) -> complex:
    """Translation part of the SE₂ chain through the identity.

    z = i(c/r)e^{iφ₀}(tan φ − tan φ₀)
    """
    rotation = complex(math.cos(phi0), math.sin(phi0))
    return 1j * (c / r) * rotation * (math.tan(phi) - math.tan(phi0))


def se2_pencil_point(c: float) -> complex:
    """Common point of the lines of a normalized flat SE₂ chain."""
    return complex(-c, 0.0)


def line_distance(point: complex, z: complex, theta: float) -> float:
    """Distance from point to the line through z with direction θ."""
    d = point - z
    return abs(d.real * math.sin(theta) - d.imag * math.cos(theta))


def normalize_se2_chain(z: complex, c: float, r: float, phi0: float) -> complex:
    """Similarity taking the SE₂ chain through the identity to its normalized form ic·tan φ.

    Undoes the initial rotation, reflects, rescales by r and recenters; the
    line directions map θ = φ₀ − φ to φ (mod π).
    """
    w = complex(math.cos(phi0), -math.sin(phi0)) * z
    return -r * w.conjugate() + 1j * c * math.tan(phi0)
