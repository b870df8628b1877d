"""Model runs behind ``homog``: a table, a summary and a figure per registry key."""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from ..config.settings import CirclesConfig, IntegrationConfig, RunConfig
from ..core.errors import ChaincraftError
from ..core.types import GroupTrajectory, IntegrationStatus, Registry
from ..output.svg import Figure, complex_points
from ..output.writers import Table, curve_table
from .circles import circles_chain, circles_energy, circles_momentum, circles_probe
from .flat import (
    concurrency_residual,
    heisenberg_chain_momentum,
    heisenberg_coordinates,
    heisenberg_flat_chain,
    se2_chain_momentum,
    se2_chain_z,
)
from .hooke import hooke_euler_chain
from .horocycles import (
    horocycle_point_mobius,
    horocycle_projection,
    normalized_quartic_residual,
)
from .lie import MOMENTUM_NAMES, reconstruct
from .models import CIRCLES_SE2, FLAT_HEISENBERG, FLAT_SE2

logger = logging.getLogger(__name__)

# points of a horocycle chain farther than this from the origin are left out of the figure
FIGURE_RADIUS = 10.0


@dataclass
class ModelRun:
    """Result of one homogeneous model run."""
    table: Table
    status: IntegrationStatus = IntegrationStatus.REACHED_T1
    summary: Dict[str, float] = field(default_factory=dict)
    figure: Optional[Figure] = None


@dataclass(frozen=True)
class ModelRunner:
    run: Callable[[RunConfig, IntegrationConfig, CirclesConfig], ModelRun]
    default_t1: float
    description: str


RUNNERS: Registry[ModelRunner] = Registry("model")


def _trajectory_table(traj: GroupTrajectory, columns: Dict[str, np.ndarray]) -> Table:
    names = ["t", *columns, *MOMENTUM_NAMES, *traj.diagnostics]
    parts = [traj.t[:, None]]
    parts += [np.asarray(v, dtype=float)[:, None] for v in columns.values()]
    parts.append(traj.momenta)
    parts += [traj.diagnostics[k][:, None] for k in traj.diagnostics]
    return Table(columns=names, rows=np.hstack(parts).tolist())


def _every(n: int, target: int = 60) -> int:
    return max(1, n // target)


def _flat_heisenberg(run: RunConfig, integration: IntegrationConfig, _) -> ModelRun:
    a, b, c = run.a, run.b, run.c
    t1 = run.t1 or RUNNERS.get("flat-heisenberg").default_t1
    traj = reconstruct(FLAT_HEISENBERG, heisenberg_chain_momentum(a, b, c), t1, config=integration)
    xyz = np.array([heisenberg_coordinates(g) for g in traj.matrices])
    columns = {
        "x": xyz[:, 0],
        "y": xyz[:, 1],
        "z": xyz[:, 2],
        "concurrency": np.array([concurrency_residual(b, *row) for row in xyz]),
    }
    summary = {"max_abs_concurrency": float(np.max(np.abs(columns["concurrency"])))}
    if run.compare:
        closed = heisenberg_flat_chain(a, b, c, traj.t)
        columns["closed_dist"] = np.max(np.abs(xyz - closed), axis=1)
        summary["sup_distance"] = float(np.max(columns["closed_dist"]))

    figure = Figure(title=f"flat Heisenberg chain a={a} b={b} c={c}")
    figure.polyline(xyz[:, :2])
    figure.whiskers(xyz[:, :2], np.arctan(xyz[:, 2]), every=_every(len(xyz)))
    return ModelRun(_trajectory_table(traj, columns), traj.status, summary, figure)


def _flat_se2(run: RunConfig, integration: IntegrationConfig, _) -> ModelRun:
    c, r, phi0 = run.c, run.r, run.phi0
    t1 = run.t1 or RUNNERS.get("flat-se2").default_t1
    traj = reconstruct(FLAT_SE2, se2_chain_momentum(c, r, phi0), t1, config=integration)
    g = traj.matrices
    theta = np.arctan2(g[:, 1, 0], g[:, 0, 0])
    columns = {"theta": theta, "zx": g[:, 0, 2], "zy": g[:, 1, 2]}
    summary: Dict[str, float] = {}
    if run.compare:
        z = g[:, 0, 2] + 1j * g[:, 1, 2]
        phi = np.arctan2(traj.momenta[:, 2], traj.momenta[:, 1])
        closed = np.array([se2_chain_z(c, r, phi0, float(f)) for f in phi])
        columns["closed_dist"] = np.abs(z - closed)
        summary["sup_distance"] = float(np.max(columns["closed_dist"]))

    figure = Figure(title=f"flat SE2 chain c={c} r={r}")
    xy = np.column_stack([columns["zx"], columns["zy"]])
    figure.polyline(xy)
    figure.whiskers(xy, theta, every=_every(len(xy)))
    return ModelRun(_trajectory_table(traj, columns), traj.status, summary, figure)


def _circles(run: RunConfig, integration: IntegrationConfig, circles: CirclesConfig) -> ModelRun:
    c = run.c
    t1 = run.t1 or RUNNERS.get("circles-se2").default_t1
    curve = circles_chain(c, t1, circles.model_copy(update={"integration": integration}))
    table = curve_table(curve)
    summary = {
        "amplitude": float(np.max(np.abs(curve.column("theta")))),
        "max_excess": float(np.max(curve.column("excess"))),
        "max_abs_energy": curve.max_abs("energy"),
    }
    z = curve.column("zx") + 1j * curve.column("zy")
    figure = Figure(title=f"circle chain c={c}")
    figure.polyline(complex_points(z))
    figure.whiskers(complex_points(z), curve.column("theta"), every=_every(len(z)))

    if run.compare:
        if c > 0.0:
            momentum = circles_momentum(c, 0.0, -math.sqrt(circles_energy(0.0, c)))
            g = reconstruct(CIRCLES_SE2, momentum, curve.final_t, config=integration).matrices[-1]
            angle = math.atan2(g[1, 0], g[0, 0])
            end = curve.final_state
            summary["end_distance"] = max(
                abs(complex(g[0, 2], g[1, 2]) - complex(end[1], end[2])),
                abs(math.remainder(angle - end[0], 2.0 * math.pi)),
            )
        else:
            logger.warning("circle chain c=0 starts at θ=π/2; Euler comparison skipped")
    if run.probe:
        probe = circles_probe(curve, c)
        dual = probe["dual"]
        summary["inflection_changes"] = float(probe["inflection_changes"])
        table = Table(
            columns=[*table.columns, "dual_x", "dual_y"],
            rows=np.column_stack([table.array(), dual.real, dual.imag]).tolist(),
        )
        figure.polyline(complex_points(dual), stroke="#2f8f2f", width=1.0)
    return ModelRun(table, curve.status, summary, figure)


def _hooke(run: RunConfig, integration: IntegrationConfig, _) -> ModelRun:
    b, c = run.b, run.c
    t1 = run.t1 or RUNNERS.get("hooke-sl2").default_t1
    curve = hooke_euler_chain(b, c, run.phi0, t1, integration)
    summary = {"max_abs_det_drift": curve.max_abs("det_drift")}
    if run.compare:
        summary["sup_distance"] = curve.max_abs("closed_dist")
    figure = Figure(title=f"Hooke chain b={b} c={c}")
    figure.polyline(np.column_stack([curve.column("rx"), curve.column("ry")]))
    figure.polyline(
        np.column_stack([curve.column("hx"), curve.column("hy")]), stroke="#1f4fbf", width=1.0
    )
    return ModelRun(curve_table(curve), curve.status, summary, figure)


def _split_runs(xy: np.ndarray, keep: np.ndarray) -> List[np.ndarray]:
    runs, start = [], None
    for k, flag in enumerate(list(keep) + [False]):
        if flag and start is None:
            start = k
        elif not flag and start is not None:
            runs.append(xy[start:k])
            start = None
    return runs


def _horocycle(run: RunConfig, *_) -> ModelRun:
    c = run.c
    phis = np.linspace(-math.pi, math.pi, run.samples, endpoint=False)
    rows = []
    for phi in phis:
        try:
            x, y = horocycle_projection(c, float(phi))
        except ChaincraftError:
            x, y = math.nan, math.nan
        row = [float(phi), x, y, normalized_quartic_residual(c, x, y)]
        if run.compare:
            try:
                mx, my = horocycle_point_mobius(c, float(phi))
                row.append(math.hypot(mx - x, my - y))
            except ChaincraftError:
                row.append(math.nan)
        rows.append(row)
    columns = ["phi", "x", "y", "quartic"] + (["mobius_gap"] if run.compare else [])
    table = Table(columns=columns, rows=rows)

    quartic = np.abs(table.column("quartic"))
    finite = quartic[np.isfinite(quartic)]
    summary = {
        "samples": float(len(finite)),
        "max_abs_quartic": float(np.max(finite)) if len(finite) else math.nan,
        "mean_abs_quartic": float(np.mean(finite)) if len(finite) else math.nan,
    }
    if run.compare:
        gaps = table.column("mobius_gap")
        gaps = gaps[np.isfinite(gaps)]
        summary["max_mobius_gap"] = float(np.max(gaps)) if len(gaps) else math.nan

    xy = table.array()[:, 1:3]
    keep = np.all(np.isfinite(xy), axis=1) & (np.hypot(xy[:, 0], xy[:, 1]) < FIGURE_RADIUS)
    figure = Figure(title=f"horocycle chain c={c}")
    for segment in _split_runs(xy, keep):
        figure.polyline(segment)
    return ModelRun(table, IntegrationStatus.REACHED_T1, summary, figure)


RUNNERS.register(
    "flat-heisenberg", ModelRunner(_flat_heisenberg, 2.0, "reconstructed Heisenberg chain")
)
RUNNERS.register("flat-se2", ModelRunner(_flat_se2, 1.0, "reconstructed Euclidean line chain"))
RUNNERS.register("circles-se2", ModelRunner(_circles, 10.0, "normalized circle chain z(t), θ(t)"))
RUNNERS.register("hooke-sl2", ModelRunner(_hooke, 1.5, "Hooke chain by its Euler flow"))
RUNNERS.register("horocycle", ModelRunner(_horocycle, 0.0, "horocycle chain quartic"))


def run_model(
    run: RunConfig,
    integration: Optional[IntegrationConfig] = None,
    circles: Optional[CirclesConfig] = None,
) -> ModelRun:
    """Run the model named by ``run.model``; raises KeyError for unknown names."""
    runner = RUNNERS.get(run.model or "")
    result = runner.run(run, integration or IntegrationConfig(), circles or CirclesConfig())
    logger.info(f"homog {run.model} c={run.c}: {result.status.value}, summary {result.summary}")
    return result
