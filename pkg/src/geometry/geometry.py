"""Path geometries y″ = f(x, y, y′) in the J¹ chart and the built-in catalog."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Tuple, Union

from ..core.errors import UnboundParameterError
from ..core.types import Registry
from .jet import Jet

logger = logging.getLogger(__name__)

JetEvaluator = Callable[[Jet, Jet, Jet, Mapping[str, float]], Union[Jet, float]]


@dataclass(frozen=True)
class SecondOrderODE:
    """A path geometry given by f(x, y, p) evaluated over jets."""
    name: str
    evaluator: JetEvaluator
    params: Mapping[str, float] = field(default_factory=dict)
    description: str = ""

    def with_params(self, **params: float) -> "SecondOrderODE":
        """Copy with some parameters replaced."""
        merged = dict(self.params)
        merged.update({k: float(v) for k, v in params.items()})
        return SecondOrderODE(self.name, self.evaluator, merged, self.description)

    def f(self, x: float, y: float, p: float) -> float:
        return eval_jet(self, x, y, p).value


def eval_jet(geom: SecondOrderODE, x: float, y: float, p: float) -> Jet:
    """f and all truncated partials at (x, y, p).

    Raises:
        DomainError: an elementary function left its domain.
    """
    out = geom.evaluator(Jet.seed_x(x), Jet.seed_y(y), Jet.seed_p(p), geom.params)
    if not isinstance(out, Jet):
        out = Jet.constant(float(out))
    return out


def is_cubic_in_p(
    geom: SecondOrderODE, sample_points: Sequence[Tuple[float, float, float]], tol: float
) -> bool:
    """Sampled projectivity test: |f_pppp| ≤ tol at every sample point.

    This is a surrogate for "f is a polynomial of degree ≤ 3 in p"; it
    checks the listed points only.
    """
    if not sample_points:
        raise ValueError("sample_points must be nonempty")
    for x, y, p in sample_points:
        fourth = eval_jet(geom, x, y, p).f_pppp
        if abs(fourth) > tol:
            logger.debug(f"{geom.name}: f_pppp={fourth:.3e} at {(x, y, p)}")
            return False
    return True


# built-in geometries

def _flat(x: Jet, y: Jet, p: Jet, params: Mapping[str, float]) -> float:
    return 0.0


def _hooke(x: Jet, y: Jet, p: Jet, params: Mapping[str, float]) -> Jet:
    return (x * p - y) ** 3


_COEFFICIENT = re.compile(r"^a(\d+)$")


def _poly_p(x: Jet, y: Jet, p: Jet, params: Mapping[str, float]) -> Union[Jet, float]:
    result: Union[Jet, float] = 0.0
    for name, value in params.items():
        match = _COEFFICIENT.match(name)
        if match is None or value == 0.0:
            continue
        result = result + float(value) * p ** int(match.group(1))
    return result


def _circles(x: Jet, y: Jet, p: Jet, params: Mapping[str, float]) -> Jet:
    if "radius" not in params:
        raise UnboundParameterError("radius")
    return (1.0 + p * p).power(1.5) / params["radius"]


GEOMETRY_CATALOG: Registry[SecondOrderODE] = Registry("geometry")
GEOMETRY_CATALOG.register("flat", SecondOrderODE("flat", _flat, {}, "f = 0 (straight lines)"))
GEOMETRY_CATALOG.register(
    "hooke", SecondOrderODE("hooke", _hooke, {}, "f = (xp - y)^3 (Hooke ellipses of fixed area)")
)
GEOMETRY_CATALOG.register(
    "poly-p", SecondOrderODE("poly-p", _poly_p, {}, "f = sum_k a_k p^k, coefficients a0, a1, ...")
)
GEOMETRY_CATALOG.register(
    "circles",
    SecondOrderODE(
        "circles", _circles, {"radius": 1.0}, "f = (1 + p^2)^(3/2) / radius (oriented circles)"
    ),
)


def builtin(name: str, params: Optional[Mapping[str, float]] = None) -> SecondOrderODE:
    """Catalog geometry with parameters merged over its defaults."""
    geom = GEOMETRY_CATALOG.get(name)
    if params:
        geom = geom.with_params(**params)
    return geom
