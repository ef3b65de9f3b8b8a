"""
Giant-component thresholds of the higher cascade levels by shooting in the
Pruefer angle, and the r-core emergence constants they are compared with.
"""
from .core import core3_threshold, core_objective, core_threshold
from .phi import PhiDomainError, PhiFunction, phi_formal_identity, phi_from_grid, phi_k2
from .theta import ShootingError, ThresholdResult, solve_theta_ode, threshold_chain

__all__ = [
    "PhiDomainError",
    "PhiFunction",
    "ShootingError",
    "ThresholdResult",
    "core3_threshold",
    "core_objective",
    "core_threshold",
    "phi_formal_identity",
    "phi_from_grid",
    "phi_k2",
    "solve_theta_ode",
    "threshold_chain",
]
