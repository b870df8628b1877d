"""Acceptance checks.

Each check is a pure function of the tolerance scale returning a
CheckResult made of named metrics. Upper limits are multiplied by the
scale and lower limits divided by it, so a scale below 1 tightens both.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

from ..chains.chain_ode import projectivity_defect
from ..config.settings import ChainConfig, GeodesicConfig, IntegrationConfig, Method, Oracle
from ..core.errors import ChaincraftError, NonFiniteStateError
from ..core.types import (
    ChainState,
    FeffermanChartPoint,
    IntegrationStatus,
    Registry,
)
from ..fefferman.geodesics import integrate_null_geodesic
from ..fefferman.metric import metric_at, null_lift
from ..geometry.geometry import GEOMETRY_CATALOG, SecondOrderODE, builtin, eval_jet
from ..homogeneous.circles import (
    circles_amplitude,
    circles_chain,
    circles_energy,
    circles_momentum,
    circles_theta_max,
    fit_circle,
)
from ..homogeneous.flat import (
    concurrency_residual,
    flat_chain_se2,
    heisenberg_chain_momentum,
    heisenberg_coordinates,
    heisenberg_flat_chain,
    line_distance,
    normalize_se2_chain,
    se2_chain_momentum,
    se2_chain_z,
    se2_pencil_point,
)
from ..homogeneous.hooke import (
    gchain,
    hooke_chain,
    hooke_chain_residual,
    hooke_euler_chain,
    hooke_momentum,
    hooke_phi,
    hooke_r_second_residual,
)
from ..homogeneous.horocycles import (
    horocycle_projection,
    horocycle_quartic_residual,
    normalized_quartic_residual,
)
from ..homogeneous.lie import conservation_drift, displayed_mismatch, integrate_euler, reconstruct
from ..homogeneous.models import CIRCLES_SE2, FLAT_HEISENBERG, FLAT_SE2, HOOKE_SL2
from ..integrators.runge_kutta import IvpProblem, integrate
from ..parser.expr import Binary, Constant, Expr, Unary, Variable, parse, to_geometry

logger = logging.getLogger(__name__)

TIGHT = IntegrationConfig(abs_tol=1e-12, rel_tol=1e-12)


@dataclass(frozen=True)
class Metric:
    """One measured quantity against its limit.

    kind: "max" (value must stay below limit), "min" (value must exceed
    limit), "range" (limit ≤ value ≤ upper) or "zero" (value is exactly 0).
    """
    name: str
    value: float
    limit: float
    kind: str = "max"
    upper: float = math.nan

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        if self.kind == "max":
            return self.value < self.limit
        if self.kind == "min":
            return self.value > self.limit
        if self.kind == "zero":
            return self.value == 0.0
        return self.limit <= self.value <= self.upper

    @property
    def bound(self) -> str:
        if self.kind == "max":
            return f"< {self.limit:.1e}"
        if self.kind == "min":
            return f"> {self.limit:.1e}"
        if self.kind == "zero":
            return "= 0"
        return f"[{self.limit:g}, {self.upper:g}]"


@dataclass
class CheckResult:
    name: str
    metrics: List[Metric] = field(default_factory=list)
    error: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.error and bool(self.metrics) and all(m.passed for m in self.metrics)

    def below(self, name: str, value: float, limit: float, scale: float):
        self.metrics.append(Metric(name, float(value), limit * scale))

    def above(self, name: str, value: float, limit: float, scale: float):
        self.metrics.append(Metric(name, float(value), limit / scale, "min"))

    def within(self, name: str, value: float, low: float, high: float):
        self.metrics.append(Metric(name, float(value), low, "range", high))

    def exactly_zero(self, name: str, value: float):
        self.metrics.append(Metric(name, float(value), 0.0, "zero"))


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    run: Callable[[float], CheckResult]


CHECKS: Registry[Check] = Registry("check")


def check(name: str, description: str):
    def register(fn: Callable[[CheckResult, float], None]) -> Callable[[CheckResult, float], None]:
        def run(scale: float) -> CheckResult:
            result = CheckResult(name)
            fn(result, scale)
            return result

        CHECKS.register(name, Check(name, description, run))
        return fn

    return register


def _defect(geom: SecondOrderODE, s0: ChainState, x1: float) -> float:
    try:
        return projectivity_defect(geom, s0, x1, ChainConfig())
    except NonFiniteStateError as e:
        logger.warning(f"chain in {geom.name!r} from {s0} left ℝⁿ at x={e.t}")
        if e.partial is None or not len(e.partial):
            return math.nan
        return e.partial.max_abs("resid")


def _random_state(
    rng: np.random.Generator,
    delta_range=(0.5, 1.0),
    p_range=(-0.5, 0.5),
    signs=(-1.0, 1.0),
) -> ChainState:
    x, y = rng.uniform(-0.5, 0.5, size=2)
    p = rng.uniform(*p_range)
    delta = rng.choice(signs) * rng.uniform(*delta_range)
    pp = rng.uniform(-0.5, 0.5)
    return ChainState(float(x), float(y), float(p), float(p + delta), float(pp))


@check("projectivity-forward", "cubic-in-p geometries: chains project to paths")
def _projectivity_forward(result: CheckResult, scale: float):
    rng = np.random.default_rng(11)
    geometries = [
        builtin("flat"),
        builtin("poly-p", {"a3": 1.0}),
        builtin("hooke"),
        to_geometry(parse("p^3 + x*p^2 - y")),
    ]
    for geom in geometries:
        worst = 0.0
        for _ in range(25):
            s0 = _random_state(rng)
            worst = max(worst, _defect(geom, s0, s0.x + 0.3))
        result.below(f"defect[{geom.name}]", worst, 1e-8, scale)


@check("projectivity-converse", "non-cubic geometries: chains leave the paths")
def _projectivity_converse(result: CheckResult, scale: float):
    rng = np.random.default_rng(12)
    cases = [
        (to_geometry(parse("p^4")), {}),
        # Δ > 0 with p away from 0 keeps the Taylor remainder of sin bounded below
        (
            to_geometry(parse("sin(p)")),
            dict(delta_range=(0.6, 1.2), p_range=(0.5, 1.0), signs=(1.0,)),
        ),
    ]
    for geom, ranges in cases:
        smallest = math.inf
        for _ in range(25):
            s0 = _random_state(rng, **ranges)
            smallest = min(smallest, _defect(geom, s0, s0.x + 0.3))
        result.above(f"defect[{geom.name}]", smallest, 1e-3, scale)


def geodesic_chain_geometries() -> List[SecondOrderODE]:
    """Geometries whose chains from the sampled starts stay graphs over [x0, x0 + 1]."""
    return [builtin("flat"), builtin("hooke"), to_geometry(parse("p^3 + x*p^2 - y"), name="cubic")]


@check("geodesic-chain", "generic null geodesics project onto explicit chains")
def _geodesic_chain(result: CheckResult, scale: float):
    rng = np.random.default_rng(13)
    integration = IntegrationConfig(abs_tol=1e-10, rel_tol=1e-10)
    for geom in geodesic_chain_geometries():
        dist, null, shortfall = 0.0, 0.0, 0.0
        for _ in range(10):
            x, y, p = rng.uniform(-0.3, 0.3, size=3)
            delta = rng.uniform(0.6, 1.0)
            pp = rng.uniform(-0.3, 0.3)
            start = null_lift(geom, x, y, p, (1.0, p + delta, pp))
            config = GeodesicConfig(
                integration=integration, oracle=Oracle.GENERIC, x_stop=float(x) + 1.0
            )
            curve = integrate_null_geodesic(geom, start, 4.0, config)
            if curve.status is not IntegrationStatus.EVENT:
                logger.warning(f"{geom.name} geodesic from {(x, y, p)} stopped before x + 1")
            shortfall = max(shortfall, float(x) + 1.0 - float(np.max(curve.column("x"))))
            dist = max(dist, curve.max_abs("chain_dist"))
            null = max(null, curve.max_abs("nullity"))
        result.below(f"x_shortfall[{geom.name}]", shortfall, 1e-9, scale)
        result.below(f"chain_dist[{geom.name}]", dist, 1e-6, scale)
        result.below(f"nullity[{geom.name}]", null, 1e-8, scale)


@check("metric-signature", "Fefferman metric has signature (2, 2)")
def _metric_signature(result: CheckResult, scale: float):
    rng = np.random.default_rng(14)
    for name in GEOMETRY_CATALOG.names():
        geom = builtin(name, {"a2": 0.5, "a3": 1.0, "a5": 0.25} if name == "poly-p" else None)
        bad = 0
        for x, y, p in rng.uniform(-2.0, 2.0, size=(200, 3)):
            if metric_at(geom, FeffermanChartPoint(x, y, p)).signature() != (2, 2):
                bad += 1
        result.below(f"wrong_signature[{name}]", bad, 0.5, 1.0)


@check("euler-oracle", "structure-constant Euler flows match the displayed systems")
def _euler_oracle(result: CheckResult, scale: float):
    rng = np.random.default_rng(15)
    for model in (FLAT_HEISENBERG, FLAT_SE2, CIRCLES_SE2, HOOKE_SL2):
        mismatch = max(displayed_mismatch(model, P) for P in rng.uniform(-1, 1, size=(100, 4)))
        result.below(f"displayed[{model.name}]", mismatch, 1e-13, scale)
        drift = 0.0
        for P0 in rng.uniform(-0.1, 0.1, size=(5, 4)):
            curve = integrate_euler(model, P0, 10.0, TIGHT)
            drift = max(drift, max(conservation_drift(curve).values()))
        result.below(f"drift[{model.name}]", drift, 1e-9, scale)


@check("flat-closed-forms", "Heisenberg and SE2 chains of the flat geometry")
def _flat_closed_forms(result: CheckResult, scale: float):
    rng = np.random.default_rng(16)
    coords, concurrent = 0.0, 0.0
    for _ in range(5):
        a, b = rng.uniform(-1.0, 1.0, size=2)
        c = rng.uniform(0.2, 1.0)
        traj = reconstruct(FLAT_HEISENBERG, heisenberg_chain_momentum(a, b, c), 2.0, config=TIGHT)
        got = np.array([heisenberg_coordinates(g) for g in traj.matrices])
        want = heisenberg_flat_chain(a, b, c, traj.t)
        coords = max(coords, float(np.max(np.abs(got - want))))
        concurrent = max(concurrent, max(abs(concurrency_residual(b, *xyz)) for xyz in got))
    result.below("heisenberg_closed_form", coords, 1e-8, scale)
    result.below("heisenberg_concurrency", concurrent, 1e-8, scale)

    integrated, normalized = 0.0, 0.0
    for _ in range(5):
        c = rng.uniform(0.5, 2.0)
        r = rng.uniform(0.5, 1.0)
        phi0 = rng.uniform(-0.5, 0.5)
        traj = reconstruct(FLAT_SE2, se2_chain_momentum(c, r, phi0), 1.0, config=TIGHT)
        for g, P in zip(traj.matrices, traj.momenta):
            phi = math.atan2(P[2], P[1])
            z = complex(g[0, 2], g[1, 2])
            integrated = max(integrated, abs(z - se2_chain_z(c, r, phi0, phi)))
            target = 1j * c * math.tan(phi)
            normalized = max(normalized, abs(normalize_se2_chain(z, c, r, phi0) - target))
    result.below("se2_reconstruction", integrated, 1e-8, scale)
    result.below("se2_normalized", normalized, 1e-8, scale)

    pencil = 0.0
    for c in (0.5, 1.0, 2.0):
        for phi in np.linspace(-1.5, 1.5, 61):
            z, theta = flat_chain_se2(c, phi)
            pencil = max(pencil, line_distance(se2_pencil_point(c), z, theta))
    result.below("se2_pencil", pencil, 1e-10, scale)


@check("circles", "circle chains: amplitude, semicircles and Euler reconstruction")
def _circles(result: CheckResult, scale: float):
    endpoints = abs(circles_theta_max(0.0) - math.pi) + abs(circles_theta_max(4.0))
    result.exactly_zero("theta_max_endpoints", endpoints)

    amplitude = 0.0
    for c in (0.5, 1.0, 2.0, 3.0):
        curve = circles_chain(c, 5.0)
        amplitude = max(amplitude, abs(circles_amplitude(curve) - circles_theta_max(c)))
    result.below("amplitude", amplitude, 1e-6, scale)

    curve = circles_chain(0.0, 5.0)
    z = curve.column("zx") + 1j * curve.column("zy")
    _, radius, residual = fit_circle(z)
    result.below("semicircle_fit", residual, 1e-8, scale)
    result.below("semicircle_radius", abs(radius - 1.0), 1e-8, scale)

    mismatch = 0.0
    for c in (0.5, 2.0):
        momentum = circles_momentum(c, 0.0, -math.sqrt(circles_energy(0.0, c)))
        traj = reconstruct(CIRCLES_SE2, momentum, 3.0, config=TIGHT)
        g = traj.matrices[-1]
        end = circles_chain(c, 3.0).final_state
        z_end = complex(g[0, 2], g[1, 2])
        angle = math.atan2(g[1, 0], g[0, 0])
        mismatch = max(
            mismatch,
            abs(z_end - complex(end[1], end[2])),
            abs(math.remainder(angle - end[0], 2.0 * math.pi)),
        )
    result.below("euler_reconstruction", mismatch, 1e-7, scale)


@check("hooke", "Hooke chains: closed form, Euler flow and reconstruction")
def _hooke(result: CheckResult, scale: float):
    taus = np.linspace(-0.7, 0.7, 57)
    system, second, det = 0.0, 0.0, 0.0
    for c in (0.5, 1.0, 2.0, 3.0):
        for tau in taus:
            system = max(system, hooke_chain_residual(c, tau))
            second = max(second, hooke_r_second_residual(c, tau))
            r, h = hooke_chain(c, tau)
            det = max(det, abs(r[0] * h[1] - r[1] * h[0] - 1.0))
    result.below("chain_system", system, 1e-10, scale)
    result.below("r_second_plus_r", second, 1e-10, scale)
    result.below("det_rh", det, 1e-12, scale)

    closed, recon = 0.0, 0.0
    for c in (0.5, 2.0):
        curve = hooke_euler_chain(1.0, c, 0.0, 1.5, TIGHT)
        closed = max(closed, curve.max_abs("closed_dist"))
        traj = reconstruct(HOOKE_SL2, hooke_momentum(1.0, c, 0.0), 1.5, config=TIGHT)
        for t, g in zip(traj.t, traj.matrices):
            expected = gchain(c, float(hooke_phi(1.0, 0.0, t)) / 2.0)
            recon = max(recon, float(np.max(np.abs(g[:2, :2] - expected))))
    result.below("euler_vs_closed_form", closed, 1e-7, scale)
    result.below("reconstruction_vs_gchain", recon, 1e-8, scale)


@check("horocycle", "projected horocycle chains lie on bicircular quartics")
def _horocycle(result: CheckResult, scale: float):
    quartic, mirror = 0.0, 0.0
    for c in (0.5, 1.0, 2.0, 3.0):
        for phi in np.linspace(-math.pi, math.pi, 200, endpoint=False):
            try:
                x, y = horocycle_projection(c, phi)
                xm, ym = horocycle_projection(-c, -phi)
            except ChaincraftError:
                continue
            quartic = max(quartic, abs(normalized_quartic_residual(c, x, y)))
            mirror = max(
                mirror,
                abs(xm + x) + abs(ym - y),
                abs(normalized_quartic_residual(-c, -x, y)),
            )
    result.below("normalized_quartic", quartic, 1e-9, scale)
    result.below("mirror_symmetry", mirror, 1e-9, scale)
    anchors = abs(horocycle_quartic_residual(1.0, 0.0, 1.0)) + abs(
        horocycle_quartic_residual(1.0, 2.0, 0.0)
    )
    result.exactly_zero("anchor_points", anchors)


# infrastructure

def rk4_order(hs=(0.2, 0.1, 0.05, 0.025)) -> float:
    """Observed convergence exponent of RK4 on the harmonic oscillator over [0, 2]."""
    problem = IvpProblem(lambda t, u: np.array([u[1], -u[0]]), 0.0, [1.0, 0.0], 2.0)
    exact = np.array([math.cos(2.0), -math.sin(2.0)])
    errors = []
    for h in hs:
        curve = integrate(problem, IntegrationConfig(method=Method.RK4, h=h))
        errors.append(float(np.max(np.abs(curve.final_state - exact))))
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)


_FLOAT_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sec": lambda v: 1.0 / math.cos(v),
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
}


def float_value(node: Expr, x: float, y: float, p: float) -> float:
    """Plain-float evaluation of a parameter-free tree."""
    if isinstance(node, Constant):
        return node.value
    if isinstance(node, Variable):
        return {"x": x, "y": y, "p": p}[node.name]
    if isinstance(node, Unary):
        value = float_value(node.operand, x, y, p)
        return -value if node.op == "neg" else _FLOAT_FUNCTIONS[node.op](value)
    if isinstance(node, Binary):
        left = float_value(node.left, x, y, p)
        if node.op == "^":
            return left ** int(node.right.value)  # type: ignore[union-attr]
        right = float_value(node.right, x, y, p)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise ValueError(f"cannot evaluate {node!r} without parameters")


def _random_factor(rng: np.random.Generator) -> str:
    v = str(rng.choice(["x", "y", "p"]))
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return v
    if kind == 1:
        return f"{v}^{int(rng.integers(2, 4))}"
    if kind == 2:
        fn = rng.choice(["sin", "cos", "exp"])
        return f"{fn}({rng.uniform(-1.5, 1.5):.3f}*{v} + {rng.uniform(-1.0, 1.0):.3f})"
    a, b = rng.choice(["x", "y", "p"], size=2)
    return f"({a}*{v} - {b})"


def random_expression(rng: np.random.Generator, terms: int = 3) -> str:
    """Random polynomial/trigonometric source text in x, y, p.

    A sum of terms, each a coefficient times one or two factors; arguments
    of sin, cos and exp are affine with slopes in [-1.5, 1.5].
    """
    parts = []
    for _ in range(terms):
        factors = [_random_factor(rng) for _ in range(int(rng.integers(1, 3)))]
        parts.append(f"{rng.uniform(-2.0, 2.0):.3f}*" + "*".join(factors))
    return " + ".join(parts)


# fourth-order central stencils for derivatives 1..4: (offsets, weights, step)
_STENCILS = {
    1: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12), 1e-3),
    2: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12), 1e-2),
    3: ((-3, -2, -1, 1, 2, 3), (1 / 8, -1, 13 / 8, -13 / 8, 1, -1 / 8), 1e-2),
    4: (
        (-3, -2, -1, 0, 1, 2, 3),
        (-1 / 6, 2, -13 / 2, 28 / 3, -13 / 2, 2, -1 / 6),
        1e-2,
    ),
}


def fd_partial(fn: Callable[[float, float, float], float], point, orders) -> float:
    """Mixed partial ∂x^i ∂y^j ∂p^k of fn by tensor-product central differences."""
    terms = [(1.0, np.asarray(point, dtype=float))]
    for axis, order in enumerate(orders):
        if order == 0:
            continue
        offsets, weights, h = _STENCILS[order]
        expanded = []
        for coeff, q in terms:
            for k, w in zip(offsets, weights):
                shifted = q.copy()
                shifted[axis] += k * h
                expanded.append((coeff * w / h**order, shifted))
        terms = expanded
    return float(sum(coeff * fn(*q) for coeff, q in terms))


PARTIAL_ORDERS = {
    "f": (0, 0, 0),
    "f_x": (1, 0, 0),
    "f_y": (0, 1, 0),
    "f_p": (0, 0, 1),
    "f_pp": (0, 0, 2),
    "f_ppp": (0, 0, 3),
    "f_pppp": (0, 0, 4),
    "f_xp": (1, 0, 1),
    "f_xpp": (1, 0, 2),
    "f_yp": (0, 1, 1),
    "f_ypp": (0, 1, 2),
}


def jet_fd_disagreement(expressions: int = 20, points: int = 10, seed: int = 17) -> float:
    """Largest relative gap between jet partials and finite differences."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(expressions):
        tree = parse(random_expression(rng))
        geom = to_geometry(tree)

        def value(x: float, y: float, p: float, tree=tree) -> float:
            return float_value(tree, x, y, p)

        for point in rng.uniform(-1.0, 1.0, size=(points, 3)):
            partials = eval_jet(geom, *point).partials()
            for name, orders in PARTIAL_ORDERS.items():
                exact = partials[name]
                approx = fd_partial(value, point, orders)
                gap = abs(exact - approx) / max(1.0, abs(exact), abs(approx), abs(partials["f"]))
                worst = max(worst, gap)
    return worst


def parser_fuzz_crashes(inputs: int = 60, seed: int = 18) -> int:
    """Number of fuzzed inputs (up to 4 KiB of ASCII) on which parse raised a non-library error."""
    rng = np.random.default_rng(seed)
    alphabet = list("xyp0123456789.+-*/^() eE\t,_abcsintaqrlogexp")
    printable = [chr(i) for i in range(32, 127)]
    crashes = 0
    for k in range(inputs):
        length = int(rng.integers(0, 4097))
        pool = alphabet if k % 2 else printable
        source = "".join(rng.choice(pool, size=length))
        try:
            parse(source)
        except ChaincraftError:
            pass
        except Exception as e:
            crashes += 1
            logger.error(f"parser crashed on fuzz input {k}: {type(e).__name__}: {e}")
    for source in ("(" * 4096, "-" * 4096 + "x", "x^" * 2048, "1" * 4096, "sin(" * 1000):
        try:
            parse(source)
        except ChaincraftError:
            pass
        except Exception as e:
            crashes += 1
            logger.error(f"parser crashed on {source[:16]!r}...: {type(e).__name__}: {e}")
    return crashes


@check("infrastructure", "integrator order, parser robustness and jet accuracy")
def _infrastructure(result: CheckResult, scale: float):
    result.within("rk4_order", rk4_order(), 3.7, 4.3)
    result.below("parser_crashes", parser_fuzz_crashes(), 0.5, 1.0)
    result.below("jet_vs_fd", jet_fd_disagreement(), 1e-6, scale)
