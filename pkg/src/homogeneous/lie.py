"""Euler–Arnold dynamics on 4-dimensional matrix Lie algebras.

A model is a basis E₁..E₄ of square matrices closed under the commutator,
an inertia matrix A (the left-invariant metric, g(X, Y) = (AX)·Y) and an
ad* sign. Momenta P ∈ 𝔤* evolve by

    Ṗⱼ = sign · Σᵢₖ xⁱ cᵏᵢⱼ Pₖ,   x = A⁻¹P,

where [Eᵢ, Eⱼ] = Σₖ cᵏᵢⱼ Eₖ, and a group element follows ġ = g·X with
X = Σ xⁱ Eᵢ.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Union

import numpy as np

from ..config.settings import IntegrationConfig
from ..core.types import CurveSample, EulerState, GroupTrajectory
from ..integrators.runge_kutta import IvpProblem, integrate

logger = logging.getLogger(__name__)

MOMENTUM_NAMES = ("P1", "P2", "P3", "P4")
Invariants = Callable[[np.ndarray], Dict[str, float]]
DisplayedSystem = Callable[[np.ndarray], np.ndarray]
Momenta = Union[EulerState, np.ndarray, Callable[[float], np.ndarray]]


def structure_constants(basis: np.ndarray) -> np.ndarray:
    """c[k, i, j] with [Eᵢ, Eⱼ] = Σₖ c[k, i, j] Eₖ.

    Raises:
        ValueError: the span of the basis is not closed under the bracket.
    """
    basis = np.asarray(basis, dtype=float)
    dim = len(basis)
    columns = basis.reshape(dim, -1).T
    c = np.zeros((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            bracket = basis[i] @ basis[j] - basis[j] @ basis[i]
            coeffs, *_ = np.linalg.lstsq(columns, bracket.reshape(-1), rcond=None)
            if np.max(np.abs(columns @ coeffs - bracket.reshape(-1))) > 1e-12:
                raise ValueError(f"[E{i + 1}, E{j + 1}] leaves the span of the basis")
            c[:, i, j] = coeffs
    return c


def jacobi_residual(c: np.ndarray) -> float:
    """Largest violation of the Jacobi identity by structure constants c."""
    # [[Eᵢ,Eⱼ],Eₖ] has Eₗ-coefficient Σₘ cᵐᵢⱼ cˡₘₖ
    term = np.einsum("mij,lmk->lijk", c, c)
    cyclic = term + np.transpose(term, (0, 2, 3, 1)) + np.transpose(term, (0, 3, 1, 2))
    return float(np.max(np.abs(cyclic)))


@dataclass(frozen=True)
class LieAlgebraModel:
    """Left-invariant metric on a matrix Lie group, reduced to 𝔤*.

    Attributes:
        basis: (4, n, n) matrices embedding x ↦ Σ xⁱ Eᵢ.
        inertia: symmetric A with P = A x.
        sign: ad* convention, +1 or −1.
        invariants: model-specific conserved quantities beyond H and P₄.
        displayed: hand-written component form of the Euler equations.
        block: size of the leading block whose determinant is monitored.
        rotation: whether the leading 2×2 block is a rotation.
    """
    name: str
    basis: np.ndarray
    inertia: np.ndarray
    sign: int = 1
    invariants: Optional[Invariants] = None
    displayed: Optional[DisplayedSystem] = None
    block: int = 2
    rotation: bool = False
    description: str = ""
    structure: np.ndarray = field(init=False, repr=False)
    inertia_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        inertia = np.asarray(self.inertia, dtype=float)
        if basis.shape[0] != 4 or basis.shape[1] != basis.shape[2]:
            raise ValueError(f"basis must be 4 square matrices, got shape {basis.shape}")
        if inertia.shape != (4, 4) or not np.allclose(inertia, inertia.T, atol=0.0):
            raise ValueError("inertia must be a symmetric 4×4 matrix")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be ±1, got {self.sign}")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "inertia", inertia)
        object.__setattr__(self, "structure", structure_constants(basis))
        object.__setattr__(self, "inertia_inv", np.linalg.inv(inertia))

    @property
    def matrix_size(self) -> int:
        return self.basis.shape[1]

    def with_sign(self, sign: int) -> "LieAlgebraModel":
        return LieAlgebraModel(
            self.name, self.basis, self.inertia, sign, self.invariants,
            self.displayed, self.block, self.rotation, self.description,
        )

    def embed(self, x) -> np.ndarray:
        """Matrix Σ xⁱ Eᵢ."""
        return np.tensordot(np.asarray(x, dtype=float), self.basis, axes=1)

    def velocity(self, P) -> np.ndarray:
        """x = A⁻¹P."""
        return self.inertia_inv @ _momentum(P)


def _momentum(P) -> np.ndarray:
    if isinstance(P, EulerState):
        return P.as_array()
    return np.asarray(P, dtype=float)


def euler_rhs(model: LieAlgebraModel, P) -> np.ndarray:
    """Ṗ = ad*_{A⁻¹P} P from the structure constants."""
    P = _momentum(P)
    x = model.inertia_inv @ P
    return model.sign * np.einsum("i,kij,k->j", x, model.structure, P)


def hamiltonian(model: LieAlgebraModel, P) -> float:
    """H = ½(P, A⁻¹P); null geodesics have H = 0."""
    P = _momentum(P)
    return 0.5 * float(P @ model.inertia_inv @ P)


def conserved(model: LieAlgebraModel, P) -> Dict[str, float]:
    """H, P₄ and the model's extra invariants at P."""
    P = _momentum(P)
    values = {"H": hamiltonian(model, P), "P4": float(P[3])}
    if model.invariants is not None:
        values.update(model.invariants(P))
    return values


def calibrate_sign(model: LieAlgebraModel, samples: int = 8, seed: int = 0) -> int:
    """ad* sign under which euler_rhs reproduces the model's displayed system.

    Raises:
        ValueError: the model has no displayed system, or neither sign matches.
    """
    if model.displayed is None:
        raise ValueError(f"model {model.name!r} has no displayed system to calibrate against")
    rng = np.random.default_rng(seed)
    points = rng.uniform(-1.0, 1.0, size=(samples, 4))
    for sign in (1, -1):
        trial = model.with_sign(sign)
        if all(np.allclose(euler_rhs(trial, P), model.displayed(P), atol=1e-12) for P in points):
            return sign
    raise ValueError(f"no ad* sign reproduces the displayed system of {model.name!r}")


def displayed_mismatch(model: LieAlgebraModel, P) -> float:
    """max |euler_rhs − displayed system| at P."""
    if model.displayed is None:
        return float("nan")
    P = _momentum(P)
    return float(np.max(np.abs(euler_rhs(model, P) - model.displayed(P))))


def integrate_euler(
    model: LieAlgebraModel, P0, t1: float, config: Optional[IntegrationConfig] = None
) -> CurveSample:
    """Integrate the Euler equations from P0 over [0, t1].

    Every conserved quantity is recorded as a diagnostic of the same name.
    """
    problem = IvpProblem(lambda t, u: euler_rhs(model, u), 0.0, _momentum(P0), t1, MOMENTUM_NAMES)
    names = list(conserved(model, problem.y0))
    probes = {name: (lambda t, u, n=name: conserved(model, u)[n]) for name in names}
    curve = integrate(problem, config, probes)
    logger.info(
        f"euler flow of {model.name!r}: {curve.status.value} at t={curve.final_t}, "
        f"drift {conservation_drift(curve, names)}"
    )
    return curve


def conservation_drift(curve: CurveSample, names=None) -> Dict[str, float]:
    """max |q(t) − q(0)| for each recorded conserved quantity."""
    names = names if names is not None else list(curve.diagnostics)
    drift = {}
    for name in names:
        values = curve.column(name)
        drift[name] = float(np.max(np.abs(values - values[0])))
    return drift


def _group_probes(model: LieAlgebraModel, n: int, det0: float) -> Dict[str, Callable]:
    b = model.block

    def det_drift(t: float, u: np.ndarray) -> float:
        g = u[-n * n:].reshape(n, n)
        return float(np.linalg.det(g[:b, :b]) - det0)

    probes = {"det_drift": det_drift}
    if model.rotation:

        def orth_drift(t: float, u: np.ndarray) -> float:
            R = u[-n * n:].reshape(n, n)[:2, :2]
            return float(np.max(np.abs(R.T @ R - np.eye(2))))

        probes["orth_drift"] = orth_drift
    return probes


def reconstruct(
    model: LieAlgebraModel,
    momenta: Momenta,
    t1: float,
    g0: Optional[np.ndarray] = None,
    config: Optional[IntegrationConfig] = None,
) -> GroupTrajectory:
    """Solve ġ = g·X(t), X = A⁻¹P(t), from g(0) = g0 (identity by default).

    ``momenta`` is either an initial momentum, co-integrated with the Euler
    equations, or a function t ↦ P(t) such as a closed-form solution.
    Diagnostics: ``det_drift`` of the leading block, ``orth_drift`` for
    rotation blocks, and ``H`` when momenta are co-integrated.
    """
    n = model.matrix_size
    g0 = np.eye(n) if g0 is None else np.asarray(g0, dtype=float)
    if g0.shape != (n, n):
        raise ValueError(f"g0 must be {n}×{n}, got {g0.shape}")
    det0 = float(np.linalg.det(g0[: model.block, : model.block]))
    probes = _group_probes(model, n, det0)

    if callable(momenta):
        P_of = momenta

        def rhs(t: float, u: np.ndarray) -> np.ndarray:
            g = u.reshape(n, n)
            return (g @ model.embed(model.velocity(P_of(t)))).reshape(-1)

        y0 = g0.reshape(-1)
    else:

        def rhs(t: float, u: np.ndarray) -> np.ndarray:
            P, g = u[:4], u[4:].reshape(n, n)
            dg = g @ model.embed(model.velocity(P))
            return np.concatenate([euler_rhs(model, P), dg.reshape(-1)])

        y0 = np.concatenate([_momentum(momenta), g0.reshape(-1)])
        probes["H"] = lambda t, u: hamiltonian(model, u[:4])

    curve = integrate(IvpProblem(rhs, 0.0, y0, t1), config, probes)
    matrices = curve.states[:, -n * n:].reshape(-1, n, n)
    if callable(momenta):
        P = np.array([_momentum(momenta(t)) for t in curve.t])
    else:
        P = curve.states[:, :4]
    logger.info(
        f"reconstructed {model.name!r} over [0, {curve.final_t}]: "
        f"max |det drift|={curve.max_abs('det_drift'):.3e}"
    )
    return GroupTrajectory(curve.t, matrices, curve.diagnostics, curve.status, P)
