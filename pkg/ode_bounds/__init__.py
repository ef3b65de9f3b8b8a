"""
Upper bounds on the successive tree costs.

- gsystem: occupancy ODEs g_1..g_K and the improved bounds Gamma_bar_k
- closed: closed-form bounds on gamma_k and Gamma_k, conjecture flags
"""
from .closed import BoundsError, BoundsRow, BoundsTable, build_bounds_table, closed_bounds, conjecture_checks, default_ell
from .gsystem import INTEGRATORS, GSystem, default_horizon, gamma_bar, solve_g_system

__all__ = [
    "BoundsError",
    "BoundsRow",
    "BoundsTable",
    "GSystem",
    "INTEGRATORS",
    "build_bounds_table",
    "closed_bounds",
    "conjecture_checks",
    "default_ell",
    "default_horizon",
    "gamma_bar",
    "solve_g_system",
]
