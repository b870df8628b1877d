"""Built-in homogeneous models and their hand-written Euler systems."""

import logging
from typing import Dict

import numpy as np

from ..core.types import Registry
from .lie import LieAlgebraModel, calibrate_sign

logger = logging.getLogger(__name__)


def _unit(n: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((n, n))
    e[i, j] = 1.0
    return e


def _rotation(n: int) -> np.ndarray:
    J = np.zeros((n, n))
    J[0, 1], J[1, 0] = -1.0, 1.0
    return J


# Heisenberg × ℝ*: X = [[0, x¹, x³], [0, 0, x²], [0, 0, 0]] ⊕ x⁴
HEISENBERG_BASIS = np.array([_unit(4, 0, 1), _unit(4, 1, 2), _unit(4, 0, 2), _unit(4, 3, 3)])
# SE₂ × ℝ*: X = [[0, −x¹, x²], [x¹, 0, x³], [0, 0, 0]] ⊕ x⁴
SE2_BASIS = np.array([_rotation(4), _unit(4, 0, 2), _unit(4, 1, 2), _unit(4, 3, 3)])
# SL₂ × ℝ*: X = [[x¹, x²], [x³, −x¹]] ⊕ x⁴
SL2_BASIS = np.array(
    [np.diag([1.0, -1.0, 0.0]), _unit(3, 0, 1), _unit(3, 1, 0), _unit(3, 2, 2)]
)

FLAT_INERTIA = np.array([[0, 3, 0, 0], [3, 0, 0, 0], [0, 0, 0, 2], [0, 0, 2, 0]]) / 6.0
CIRCLES_INERTIA = np.array([[0, 0, 3, 0], [0, 3, 0, 2], [3, 0, 6, 0], [0, 2, 0, 0]]) / 6.0
HOOKE_INERTIA = np.array([[6, 0, 0, 2], [0, 0, 3, 0], [0, 3, 6, 0], [2, 0, 0, 0]]) / 6.0


def heisenberg_velocity_rhs(x: np.ndarray) -> np.ndarray:
    """Euler equations of the Heisenberg model in velocity components x = A⁻¹P."""
    return np.array([2.0 / 3.0 * x[0] * x[3], -2.0 / 3.0 * x[1] * x[3], 0.0, 0.0])


def heisenberg_displayed(P: np.ndarray) -> np.ndarray:
    x = np.linalg.solve(FLAT_INERTIA, P)
    return FLAT_INERTIA @ heisenberg_velocity_rhs(x)


def flat_se2_displayed(P: np.ndarray) -> np.ndarray:
    P1, P2, P3, P4 = P
    return np.array([-2.0 * P1 * P3 + 3.0 * P2 * P4, 2.0 * P2 * P3, -2.0 * P2 * P2, 0.0])


def circles_displayed(P: np.ndarray) -> np.ndarray:
    P1, P2, P3, P4 = P
    return np.array(
        [
            2.0 * P1 * P2 - 3.0 * P3 * P4,
            2.0 * P3 * (P3 - 2.0 * P1),
            -2.0 * P2 * (P3 - 2.0 * P1),
            0.0,
        ]
    )


def hooke_displayed(P: np.ndarray) -> np.ndarray:
    P1, P2, P3, P4 = P
    return np.array(
        [
            8.0 * P2 * P2,
            2.0 * P2 * (3.0 * P4 - P1),
            2.0 * P1 * (P3 - 2.0 * P2) - 6.0 * P3 * P4,
            0.0,
        ]
    )


def _heisenberg_invariants(P: np.ndarray) -> Dict[str, float]:
    return {"P3": float(P[2]), "k": float(P[0] * P[1])}


def _se2_invariants(P: np.ndarray) -> Dict[str, float]:
    return {"r2": float(P[1] ** 2 + P[2] ** 2)}


def _sl2_invariants(P: np.ndarray) -> Dict[str, float]:
    return {"k": float(P[0] ** 2 + 4.0 * P[1] * P[2])}


def _calibrated(model: LieAlgebraModel) -> LieAlgebraModel:
    sign = calibrate_sign(model)
    logger.debug(f"model {model.name!r}: ad* sign {sign:+d}")
    return model.with_sign(sign)


FLAT_HEISENBERG = _calibrated(
    LieAlgebraModel(
        "flat-heisenberg",
        HEISENBERG_BASIS,
        FLAT_INERTIA,
        invariants=_heisenberg_invariants,
        displayed=heisenberg_displayed,
        block=3,
        description="lines in the plane, Heisenberg group × ℝ*",
    )
)
FLAT_SE2 = _calibrated(
    LieAlgebraModel(
        "flat-se2",
        SE2_BASIS,
        FLAT_INERTIA,
        invariants=_se2_invariants,
        displayed=flat_se2_displayed,
        rotation=True,
        description="lines in the plane, Euclidean group × ℝ*",
    )
)
CIRCLES_SE2 = _calibrated(
    LieAlgebraModel(
        "circles-se2",
        SE2_BASIS,
        CIRCLES_INERTIA,
        invariants=_se2_invariants,
        displayed=circles_displayed,
        rotation=True,
        description="circles of radius 1, Euclidean group × ℝ*",
    )
)
HOOKE_SL2 = _calibrated(
    LieAlgebraModel(
        "hooke-sl2",
        SL2_BASIS,
        HOOKE_INERTIA,
        invariants=_sl2_invariants,
        displayed=hooke_displayed,
        description="central ellipses of area π, SL₂ℝ × ℝ*",
    )
)

MODEL_REGISTRY: Registry[LieAlgebraModel] = Registry("model")
for _model in (FLAT_HEISENBERG, FLAT_SE2, CIRCLES_SE2, HOOKE_SL2):
    MODEL_REGISTRY.register(_model.name, _model)
# dual geometry of Hooke ellipses; same group and metric
MODEL_REGISTRY.register("horocycle", HOOKE_SL2)


def get_model(name: str) -> LieAlgebraModel:
    """Look up a model; raises KeyError listing the known names."""
    return MODEL_REGISTRY.get(name)
