"""Main entry point for the chaincraft command line."""

import argparse
import logging
import sys
from contextlib import contextmanager
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from .chains.chain_ode import integrate_chain
from .config.config import ConfigManager
from .config.settings import (
    ChainConfig,
    CirclesConfig,
    GeodesicConfig,
    IntegrationConfig,
    RunConfig,
    VerifyConfig,
)
from .core.errors import (
    ChaincraftError,
    ExprSyntaxError,
    NonFiniteStateError,
    NumericalError,
    TangencyError,
    UnboundParameterError,
    UnknownIdentifierError,
    UsageError,
)
from .core.types import ChainState, CurveSample, GeodesicState, IntegrationStatus
from .fefferman.geodesics import (
    geodesic_rhs_explicit,
    geodesic_rhs_generic,
    integrate_null_geodesic,
)
from .fefferman.metric import null_lift
from .geometry.geometry import SecondOrderODE, builtin
from .homogeneous.runs import RUNNERS, run_model
from .output.writers import Table, build_document, curve_table, summarize, write_csv, write_json
from .parser.expr import parse, to_geometry
from .verify.checks import CHECKS
from .verify.suite import format_report, run_suite

logger = logging.getLogger("chaincraft.cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NUMERICAL = 2
EXIT_USAGE = 64

DEFAULT_GEODESIC_T1 = 2.0
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EPILOG = """\
CSV columns:
  chain      x,y,p,yp,pp,delta,resid
  geodesic   t,x,y,p,tau,xdot,ydot,pdot,taudot,nullity,delta,resid,chain_dist[,oracle_gap]
  homog      per model; see --list
Exit codes: 0 ok, 1 verification failed, 2 numerical failure, 64 usage error
(including a tangent --init).
"""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose errors surface as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _params(pairs: Optional[Sequence[str]]) -> Dict[str, float]:
    params = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--param expects name=value, got {pair!r}")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--param {name.strip()}: {value!r} is not a number") from None
    return params


def _add_geometry(p: argparse.ArgumentParser):
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--geometry", help="built-in geometry name")
    source.add_argument("--expr", help="f(x, y, p) in the expression grammar")
    p.add_argument("--param", action="append", metavar="K=V", help="parameter value")


def _add_integration(p: argparse.ArgumentParser):
    p.add_argument("--method", choices=["rk4", "dp54"])
    p.add_argument("--h", type=float, help="fixed step for rk4")
    p.add_argument("--abs-tol", type=float)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--max-step", type=float)


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str] = ("csv", "json")):
    p.add_argument("--format", choices=list(formats), default="csv")
    p.add_argument("--out", default="-", help="output path, - for stdout")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="chaincraft",
        description="Chains of 2D path geometries via the Fefferman metric",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="cmd")

    chain = sub.add_parser("chain", help="integrate the chain of a geometry as a graph over x")
    _add_geometry(chain)
    chain.add_argument("--init", required=True, help="x,y,p,yp,pp")
    chain.add_argument("--xmax", type=float, required=True)
    _add_integration(chain)
    _add_output(chain)

    geo = sub.add_parser("geodesic", help="integrate a null geodesic of the Fefferman metric")
    _add_geometry(geo)
    geo.add_argument("--init", required=True, help="x,y,p,xdot,ydot,pdot (tau starts at 0)")
    geo.add_argument("--t1", type=float, default=DEFAULT_GEODESIC_T1)
    geo.add_argument("--x-stop", type=float)
    geo.add_argument("--oracle", choices=["explicit", "generic"], default="explicit")
    geo.add_argument("--cross-check", action="store_true", help="compare both oracles per sample")
    _add_integration(geo)
    _add_output(geo)

    homog = sub.add_parser("homog", help="homogeneous models: Euler flows and closed forms")
    homog.add_argument("--list", action="store_true", help="list model keys")
    homog.add_argument("--model")
    homog.add_argument("--c", type=float, default=1.0)
    homog.add_argument("--a", type=float, default=1.0)
    homog.add_argument("--b", type=float, default=1.0)
    homog.add_argument("--r", type=float, default=1.0)
    homog.add_argument("--phi0", type=float, default=0.0)
    homog.add_argument("--t1", type=float)
    homog.add_argument("--samples", type=int, default=400)
    homog.add_argument("--compare", action="store_true", help="closed form vs integrated")
    homog.add_argument("--probe", action="store_true", help="exploratory diagnostics")
    homog.add_argument("--svg", help="also write a figure here")
    _add_integration(homog)
    _add_output(homog, ("csv", "json", "svg"))

    verify = sub.add_parser("verify", help="run the acceptance suite")
    verify.add_argument("--threads", type=int)
    verify.add_argument("--tol-scale", type=float)
    verify.add_argument("--only", help="comma-separated check name filters")
    verify.add_argument("--list", action="store_true", help="list check names")
    return parser


@contextmanager
def _initial_data():
    # a tangent start is a usage error
    try:
        yield
    except TangencyError as e:
        raise UsageError(f"--init: {e}") from e


@contextmanager
def _destination(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as f:
            yield f


class ChaincraftApp:
    """Runs one parsed command line against a ConfigManager."""

    def __init__(self, args: argparse.Namespace, manager: Optional[ConfigManager] = None):
        self.args = args
        self.manager = manager or ConfigManager(getattr(args, "config", None))

    def integration(self) -> IntegrationConfig:
        a = self.args
        overrides = {
            "method": a.method,
            "h": a.h,
            "abs_tol": a.abs_tol,
            "rel_tol": a.rel_tol,
            "max_steps": a.max_steps,
            "max_step": a.max_step,
        }
        base = IntegrationConfig.from_manager(self.manager)
        return base.with_updates(**{k: v for k, v in overrides.items() if v is not None})

    def run_config(self) -> RunConfig:
        a = self.args
        data = {"command": a.cmd}
        if a.cmd in ("chain", "geodesic"):
            data.update(
                geometry=a.geometry, expr=a.expr, params=_params(a.param), init=_floats(a.init)
            )
        for name in (
            "xmax", "t1", "x_stop", "oracle", "cross_check", "model", "a", "b", "c", "r",
            "phi0", "samples", "compare", "probe", "format", "out", "svg",
        ):
            value = getattr(a, name, None)
            if value is not None:
                data[name] = value
        return RunConfig(**data)

    def geometry(self, run: RunConfig) -> SecondOrderODE:
        if run.expr is not None:
            return to_geometry(parse(run.expr, run.params.keys() or None), run.params)
        return builtin(run.geometry, run.params)

    def emit(self, run: RunConfig, table: Table, status: str, summary: Dict) -> None:
        if run.format == "json":
            echo = run.model_dump(mode="json", exclude_none=True)
            document = build_document(run.command, table, status, echo, summary)
            with _destination(run.out) as out:
                write_json(document, out)
        else:
            with _destination(run.out) as out:
                write_csv(table, out)

    def _finish(self, run: RunConfig, curve: CurveSample, summary: Dict) -> int:
        table = curve_table(curve, index="x" if run.command == "chain" else "t")
        summary = {**summarize(table, list(curve.diagnostics)), **summary}
        self.emit(run, table, curve.status.value, summary)
        if curve.status is IntegrationStatus.MAX_STEPS:
            logger.error(f"{run.command}: step limit reached at {curve.final_t}")
            return EXIT_NUMERICAL
        return EXIT_OK

    def _partial(self, run: RunConfig, error: NonFiniteStateError) -> int:
        logger.error(f"{run.command}: {error}")
        if error.partial is not None and len(error.partial):
            self._finish(run, error.partial.with_status(IntegrationStatus.NONFINITE), {})
        return EXIT_NUMERICAL

    def cmd_chain(self) -> int:
        run = self.run_config()
        geom = self.geometry(run)
        config = ChainConfig(integration=self.integration(), **self.manager.section("chain"))
        try:
            with _initial_data():
                curve = integrate_chain(geom, ChainState(*run.init), run.xmax, config)
        except NonFiniteStateError as e:
            return self._partial(run, e)
        return self._finish(run, curve, {})

    def cmd_geodesic(self) -> int:
        run = self.run_config()
        x, y, p, xdot, ydot, pdot = run.init
        if xdot == 0.0:
            raise UsageError("chains need non-vertical directions: xdot must be nonzero")
        geom = self.geometry(run)
        config = GeodesicConfig.from_manager(
            self.manager, integration=self.integration(), oracle=run.oracle, x_stop=run.x_stop
        )
        with _initial_data():
            start = null_lift(geom, x, y, p, (xdot, ydot, pdot), delta_min=config.delta_min)
        try:
            curve = integrate_null_geodesic(geom, start, run.t1, config)
        except NonFiniteStateError as e:
            return self._partial(run, e)
        summary = {}
        if run.cross_check:
            gap = oracle_gap(geom, curve, config.fd_step)
            curve = curve.with_diagnostics({"oracle_gap": gap})
            summary["cross_check_oracle"] = _finite_max(gap)
            summary["cross_check_chain"] = curve.max_abs("chain_dist")
        return self._finish(run, curve, summary)

    def cmd_homog(self) -> int:
        if self.args.list:
            for name in RUNNERS.names():
                print(f"{name:16s} {RUNNERS.get(name).description}")
            return EXIT_OK
        run = self.run_config()
        if run.model is None:
            raise UsageError("homog needs --model (or --list)")
        circles = CirclesConfig(**self.manager.section("circles"))
        result = run_model(run, self.integration(), circles)
        if run.svg and result.figure is not None:
            result.figure.save(run.svg)
        if run.format == "svg":
            if result.figure is None:
                raise UsageError(f"model {run.model!r} has no figure")
            with _destination(run.out) as out:
                out.write(result.figure.render())
        else:
            self.emit(run, result.table, result.status.value, result.summary)
        if result.status is IntegrationStatus.MAX_STEPS:
            return EXIT_NUMERICAL
        return EXIT_OK

    def cmd_verify(self) -> int:
        a = self.args
        if a.list:
            for name in CHECKS.names():
                print(f"{name:24s} {CHECKS.get(name).description}")
            return EXIT_OK
        config = VerifyConfig.from_manager(
            self.manager, threads=a.threads, tol_scale=a.tol_scale, only=a.only
        )
        report = run_suite(config)
        print(format_report(report), end="")
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.args.cmd}")
        return handler()


def oracle_gap(geom: SecondOrderODE, curve: CurveSample, fd_step: float) -> np.ndarray:
    """Per-sample max difference between the explicit and generic accelerations."""
    gap = np.full(len(curve), np.nan)
    for k, u in enumerate(curve.states):
        state = GeodesicState.from_array(u)
        try:
            explicit = geodesic_rhs_explicit(geom, state)
            generic = geodesic_rhs_generic(geom, state, fd_step)[:3]
        except NumericalError:
            continue
        gap[k] = float(np.max(np.abs(explicit - generic)))
    return gap


def _finite_max(values: np.ndarray) -> float:
    finite = np.abs(values[np.isfinite(values)])
    return float(np.max(finite)) if len(finite) else float("nan")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the command and map errors onto exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"chaincraft: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.cmd is None:
        parser.print_help()
        return EXIT_USAGE

    manager = ConfigManager(args.config)
    logging.basicConfig(
        level=args.log_level or manager.get("system.log_level", "WARNING"), format=LOG_FORMAT
    )
    try:
        return ChaincraftApp(args, manager).run()
    except (
        UsageError, ExprSyntaxError, UnknownIdentifierError, UnboundParameterError
    ) as e:
        print(f"chaincraft: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"chaincraft: invalid arguments:\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as e:
        print(f"chaincraft: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as e:
        logger.error(f"numerical failure: {e}")
        print(f"chaincraft: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ChaincraftError as e:
        print(f"chaincraft: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        print(f"chaincraft: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
