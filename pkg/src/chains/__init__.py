"""Chain equations of path geometries."""

from .chain_ode import (
    CHAIN_STATE_NAMES,
    chain_rhs,
    cubic_taylor,
    integrate_chain,
    path_rhs,
    projectivity_defect,
    projectivity_residual,
    resample_chain,
)

__all__ = [
    "CHAIN_STATE_NAMES",
    "chain_rhs",
    "cubic_taylor",
    "integrate_chain",
    "path_rhs",
    "projectivity_defect",
    "projectivity_residual",
    "resample_chain",
]
