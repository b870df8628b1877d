import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config.settings import IntegrationConfig
from src.homogeneous.lie import (
    conservation_drift,
    conserved,
    displayed_mismatch,
    euler_rhs,
    hamiltonian,
    integrate_euler,
    jacobi_residual,
    reconstruct,
    structure_constants,
)
from src.homogeneous.models import (
    CIRCLES_SE2,
    FLAT_HEISENBERG,
    FLAT_SE2,
    HOOKE_SL2,
    MODEL_REGISTRY,
    SL2_BASIS,
    get_model,
)

MODELS = [FLAT_HEISENBERG, FLAT_SE2, CIRCLES_SE2, HOOKE_SL2]
TIGHT = IntegrationConfig(abs_tol=1e-12, rel_tol=1e-12)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
def test_structure_constants_satisfy_jacobi(model):
    assert jacobi_residual(model.structure) < 1e-12


def test_sl2_brackets():
    c = structure_constants(SL2_BASIS)
    # [H, E] = 2E, [H, F] = −2F, [E, F] = H
    assert c[:, 0, 1] == pytest.approx([0.0, 2.0, 0.0, 0.0])
    assert c[:, 0, 2] == pytest.approx([0.0, 0.0, -2.0, 0.0])
    assert c[:, 1, 2] == pytest.approx([1.0, 0.0, 0.0, 0.0])


def test_non_closed_basis_rejected():
    basis = np.zeros((4, 2, 2))
    basis[0] = [[0.0, 1.0], [0.0, 0.0]]
    basis[1] = [[0.0, 0.0], [1.0, 0.0]]
    with pytest.raises(ValueError):
        structure_constants(basis)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
def test_euler_matches_displayed_system(model):
    rng = np.random.default_rng(5)
    for P in rng.uniform(-1.0, 1.0, size=(50, 4)):
        assert displayed_mismatch(model, P) < 1e-13


def test_hooke_momentum_examples():
    assert euler_rhs(HOOKE_SL2, [0.0, 1.0, 0.0, 0.0]) == pytest.approx([8.0, 0.0, 0.0, 0.0])
    assert hamiltonian(HOOKE_SL2, [0.0, 1.0, 0.0, 0.0]) == pytest.approx(-2.0)
    assert hamiltonian(HOOKE_SL2, [1.0, 0.0, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    assert conserved(HOOKE_SL2, [1.0, 0.0, 0.0, 0.0])["k"] == 1.0
    assert np.allclose(euler_rhs(HOOKE_SL2, [1.0, 0.0, 0.0, 0.0]), 0.0)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
def test_invariants_conserved(model):
    P0 = np.array([0.08, -0.05, 0.1, 0.03])
    curve = integrate_euler(model, P0, 10.0, TIGHT)
    drift = conservation_drift(curve)
    assert set(drift) >= {"H", "P4"}
    assert max(drift.values()) < 1e-9


def test_reconstruct_keeps_group_structure():
    traj = reconstruct(HOOKE_SL2, np.array([0.3, 0.2, -0.1, 0.05]), 2.0, config=TIGHT)
    assert traj.momenta.shape == (len(traj), 4)
    assert np.max(np.abs(traj.diagnostics["det_drift"])) < 1e-9
    rotation = reconstruct(FLAT_SE2, np.array([0.1, 0.4, 0.2, 0.1]), 2.0, config=TIGHT)
    assert np.max(np.abs(rotation.diagnostics["orth_drift"])) < 1e-9


def test_reconstruct_with_momentum_function():
    traj = reconstruct(FLAT_SE2, lambda t: np.array([0.5, 0.0, 0.0, 0.0]), 1.0, config=TIGHT)
    assert "H" not in traj.diagnostics
    # x = A⁻¹P = (0, 1, 0, 0) is a unit translation along the first axis
    assert traj.matrices[-1][0, 2] == pytest.approx(1.0)
    assert traj.matrices[-1][1, 2] == pytest.approx(0.0, abs=1e-12)


def test_reconstruct_rejects_wrong_shape():
    with pytest.raises(ValueError):
        reconstruct(HOOKE_SL2, np.zeros(4), 1.0, g0=np.eye(4))


def test_registry():
    assert MODEL_REGISTRY.names() == [
        "circles-se2", "flat-heisenberg", "flat-se2", "hooke-sl2", "horocycle"
    ]
    assert get_model("horocycle") is HOOKE_SL2
    with pytest.raises(KeyError):
        get_model("klein-bottle")
