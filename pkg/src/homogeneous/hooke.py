"""Chains of the path geometry of Hooke ellipses (central ellipses of area π).

In centro-affine arclength τ a chain in SL₂ℝ is a pair of columns (r, h)
with [r, h] = 1 solving

    r′ = c sec(2τ) r + h,
    h′ = −[1 + c(c + 2 sin 2τ) sec²(2τ)] r − c sec(2τ) h,

and up to left translation r = e^{iτ}, h = e^{iτ}(−c sec 2τ + i).
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..config.settings import IntegrationConfig
from ..core.errors import DegenerateError, PoleError
from ..core.types import CurveSample
from ..integrators.runge_kutta import IvpProblem, integrate
from .lie import hamiltonian
from .models import HOOKE_SL2

logger = logging.getLogger(__name__)

POLE_TOL = 1e-14
HOOKE_STATE_NAMES = ("phi", "rx", "ry", "hx", "hy")


def _sec2(tau: float, what: str) -> float:
    cos2 = math.cos(2.0 * tau)
    if abs(cos2) < POLE_TOL:
        raise PoleError(what, tau)
    return 1.0 / cos2


def hooke_chain(c: float, tau: float) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form chain (r, h) at centro-affine arclength τ.

    Raises:
        DegenerateError: c = 0 (the curve is tangent to the contact distribution).
        PoleError: cos 2τ = 0.
    """
    if c == 0.0:
        raise DegenerateError("c = 0 gives a curve tangent to the contact distribution")
    s = _sec2(tau, "hooke_chain")
    C, S = math.cos(tau), math.sin(tau)
    r = np.array([C, S])
    h = np.array([-c * s * C - S, C - c * s * S])
    return r, h


def hooke_chain_derivative(c: float, tau: float) -> Tuple[np.ndarray, np.ndarray]:
    """(r′, h′) of the closed-form chain, differentiated by hand."""
    if c == 0.0:
        raise DegenerateError("c = 0 gives a curve tangent to the contact distribution")
    s = _sec2(tau, "hooke_chain_derivative")
    t2 = math.tan(2.0 * tau)
    C, S = math.cos(tau), math.sin(tau)
    dr = np.array([-S, C])
    dh = np.array([-c * s * (2.0 * t2 * C - S) - C, -S - c * s * (2.0 * t2 * S + C)])
    return dr, dh


def hooke_chain_residual(c: float, tau: float) -> float:
    """max-norm residual of the (r, h) system at τ for the closed form."""
    s = _sec2(tau, "hooke_chain_residual")
    r, h = hooke_chain(c, tau)
    dr, dh = hooke_chain_derivative(c, tau)
    q = 1.0 + c * (c + 2.0 * math.sin(2.0 * tau)) * s * s
    res_r = dr - (c * s * r + h)
    res_h = dh + q * r + c * s * h
    return float(max(np.max(np.abs(res_r)), np.max(np.abs(res_h))))


def hooke_r_second_residual(c: float, tau: float) -> float:
    """max-norm of r″ + r, with r″ assembled from the (r, h) system at the closed form."""
    s = _sec2(tau, "hooke_r_second_residual")
    t2 = math.tan(2.0 * tau)
    r, _ = hooke_chain(c, tau)
    dr, dh = hooke_chain_derivative(c, tau)
    r_second = 2.0 * c * s * t2 * r + c * s * dr + dh
    return float(np.max(np.abs(r_second + r)))


def chain_matrix(c: float, tau: float) -> np.ndarray:
    """Columns [r h] of the closed-form chain."""
    r, h = hooke_chain(c, tau)
    return np.column_stack([r, h])


def gchain(c: float, tau: float) -> np.ndarray:
    """Chain through the identity: [[1, c], [0, 1]]·[r h]."""
    return np.array([[1.0, c], [0.0, 1.0]]) @ chain_matrix(c, tau)


def hooke_p(c: float, phi: float) -> float:
    """p = cos φ + c(c + 2 sin φ) sec φ."""
    cos_phi = math.cos(phi)
    if abs(cos_phi) < POLE_TOL:
        raise PoleError("hooke_p", phi)
    return cos_phi + c * (c + 2.0 * math.sin(phi)) / cos_phi


def hooke_momentum(b: float, c: float, phi: float) -> np.ndarray:
    """Null momentum (b(c + sin φ), (b/2) cos φ, b(cos φ − p/2), bc/3) of the SL₂ model."""
    p = hooke_p(c, phi)
    return np.array(
        [
            b * (c + math.sin(phi)),
            0.5 * b * math.cos(phi),
            b * (math.cos(phi) - 0.5 * p),
            b * c / 3.0,
        ]
    )


def hooke_phi(b: float, phi0: float, t) -> np.ndarray:
    """Solution of φ̇ = 2b cos φ: φ = 2 arctan tanh(bt + artanh tan(φ₀/2))."""
    t = np.asarray(t, dtype=float)
    return 2.0 * np.arctan(np.tanh(b * t + math.atanh(math.tan(phi0 / 2.0))))


def hooke_euler_chain(
    b: float,
    c: float,
    phi0: float,
    t1: float,
    config: Optional[IntegrationConfig] = None,
    start: Optional[np.ndarray] = None,
) -> CurveSample:
    """Integrate φ̇ = 2b cos φ, ṙ = b[cr + cos φ·h], ḣ = −b[pr + ch] over [0, t1].

    ``start`` is [r h] at t = 0 (the closed form at τ = φ₀/2 by default).
    Diagnostics: ``det_drift`` ([r, h] − 1), ``H`` (Hamiltonian of the
    momentum along φ) and ``closed_dist``, the max-entry distance to the
    closed form at τ = φ/2 left-translated onto the start.

    Raises:
        DegenerateError: b = 0 or c = 0.
        PoleError: cos φ₀ = 0.
    """
    if b == 0.0:
        raise DegenerateError("b = 0 gives a constant curve")
    M0 = chain_matrix(c, phi0 / 2.0)
    g0 = M0 if start is None else np.asarray(start, dtype=float)
    align = g0 @ np.linalg.inv(M0)

    def rhs(t: float, u: np.ndarray) -> np.ndarray:
        phi, r, h = u[0], u[1:3], u[3:5]
        cos_phi = math.cos(phi)
        p = hooke_p(c, phi)
        dr = b * (c * r + cos_phi * h)
        dh = -b * (p * r + c * h)
        return np.concatenate([[2.0 * b * cos_phi], dr, dh])

    def det_drift(t: float, u: np.ndarray) -> float:
        return u[1] * u[4] - u[2] * u[3] - float(np.linalg.det(g0))

    def closed_dist(t: float, u: np.ndarray) -> float:
        expected = align @ chain_matrix(c, u[0] / 2.0)
        return float(np.max(np.abs(np.column_stack([u[1:3], u[3:5]]) - expected)))

    probes = {
        "det_drift": det_drift,
        "H": lambda t, u: hamiltonian(HOOKE_SL2, hooke_momentum(b, c, u[0])),
        "closed_dist": closed_dist,
    }
    y0 = np.concatenate([[phi0], g0[:, 0], g0[:, 1]])
    curve = integrate(IvpProblem(rhs, 0.0, y0, t1, HOOKE_STATE_NAMES), config, probes)
    logger.info(
        f"hooke chain b={b} c={c}: {curve.status.value} at t={curve.final_t}, "
        f"max closed-form distance {curve.max_abs('closed_dist'):.3e}"
    )
    return curve
