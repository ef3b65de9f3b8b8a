"""
Limit curves rho_k(t) of the scaled largest component at each cascade level.

rho_1 has a closed form; rho_k for k >= 2 comes from the survival profile of a
multi-type branching process whose type law is rho_{k-1}. Integrals of the
curves give the tree costs gamma_k, the edge-count limits and the mass check.
"""
from .align import ANCHOR_LEVEL, ANCHOR_TIME, align_translate, rho_infinity_diagnostics
from .closed_form import rho1_closed_form, rho1_inverse, rho1_value
from .family import RhoFamily, RhoWindowError, compute_family, next_rho
from .fixed_point import (
    FixedPointNotConverged,
    TypeMeasure,
    apply_kernel,
    iterate_survival,
    survival_fixed_point,
)
from .grid import GridFunction, sup_distance
from .integrals import (
    IntegralEstimate,
    edge_count_at,
    edge_count_curve,
    gamma_from_rho,
    gamma_table,
    mass_check,
    w_integral,
)

__all__ = [
    "ANCHOR_LEVEL",
    "ANCHOR_TIME",
    "FixedPointNotConverged",
    "GridFunction",
    "IntegralEstimate",
    "RhoFamily",
    "RhoWindowError",
    "TypeMeasure",
    "align_translate",
    "apply_kernel",
    "compute_family",
    "edge_count_at",
    "edge_count_curve",
    "gamma_from_rho",
    "gamma_table",
    "iterate_survival",
    "mass_check",
    "next_rho",
    "rho1_closed_form",
    "rho1_inverse",
    "rho1_value",
    "rho_infinity_diagnostics",
    "sup_distance",
    "survival_fixed_point",
    "w_integral",
]
