"""ODE integrators."""

from .runge_kutta import DP54, RK4, ButcherTableau, IvpProblem, integrate, rk_step

__all__ = ["DP54", "RK4", "ButcherTableau", "IvpProblem", "integrate", "rk_step"]
