"""Homogeneous path geometries: Euler–Arnold flows and closed-form chains."""

from .circles import (
    circles_amplitude,
    circles_chain,
    circles_energy,
    circles_momentum,
    circles_newton,
    circles_newton_rhs,
    circles_pendulum_rhs,
    circles_probe,
    circles_theta_max,
    fit_circle,
)
from .flat import (
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
from .hooke import (
    chain_matrix,
    gchain,
    hooke_chain,
    hooke_chain_derivative,
    hooke_chain_residual,
    hooke_euler_chain,
    hooke_momentum,
    hooke_p,
    hooke_phi,
    hooke_r_second_residual,
)
from .horocycles import (
    ellipse_parameters,
    hooke_ellipse_residual,
    horocycle_of_point,
    horocycle_point_mobius,
    horocycle_projection,
    horocycle_quartic_residual,
    mobius,
    normalized_quartic_residual,
    on_horocycle,
    uhp_to_hyperboloid,
)
from .lie import (
    LieAlgebraModel,
    calibrate_sign,
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
from .models import (
    CIRCLES_SE2,
    FLAT_HEISENBERG,
    FLAT_SE2,
    HOOKE_SL2,
    MODEL_REGISTRY,
    get_model,
)

__all__ = [
    "circles_amplitude",
    "circles_chain",
    "circles_energy",
    "circles_momentum",
    "circles_newton",
    "circles_newton_rhs",
    "circles_pendulum_rhs",
    "circles_probe",
    "circles_theta_max",
    "fit_circle",
    "concurrency_residual",
    "flat_chain_se2",
    "heisenberg_chain_momentum",
    "heisenberg_coordinates",
    "heisenberg_flat_chain",
    "line_distance",
    "normalize_se2_chain",
    "se2_chain_momentum",
    "se2_chain_z",
    "se2_pencil_point",
    "chain_matrix",
    "gchain",
    "hooke_chain",
    "hooke_chain_derivative",
    "hooke_chain_residual",
    "hooke_euler_chain",
    "hooke_momentum",
    "hooke_p",
    "hooke_phi",
    "hooke_r_second_residual",
    "ellipse_parameters",
    "hooke_ellipse_residual",
    "horocycle_of_point",
    "horocycle_point_mobius",
    "horocycle_projection",
    "horocycle_quartic_residual",
    "mobius",
    "normalized_quartic_residual",
    "on_horocycle",
    "uhp_to_hyperboloid",
    "LieAlgebraModel",
    "calibrate_sign",
    "conservation_drift",
    "conserved",
    "displayed_mismatch",
    "euler_rhs",
    "hamiltonian",
    "integrate_euler",
    "jacobi_residual",
    "reconstruct",
    "structure_constants",
    "CIRCLES_SE2",
    "FLAT_HEISENBERG",
    "FLAT_SE2",
    "HOOKE_SL2",
    "MODEL_REGISTRY",
    "get_model",
]
