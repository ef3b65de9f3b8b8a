import math
from typing import List, Tuple

from rho_numerics.family import RhoFamily, RhoWindowError
from rho_numerics.grid import GridFunction, sup_distance

ANCHOR_TIME = 4.0
ANCHOR_LEVEL = 1.0 - math.exp(-1.0)


def align_translate(rho: GridFunction, anchor_time: float = ANCHOR_TIME, level: float = ANCHOR_LEVEL) -> GridFunction:
    """Shift rho in time so that it reaches ``level`` exactly at ``anchor_time``."""
    crossing = rho.crossing_time(level)
    if crossing is None:
        raise RhoWindowError(f"Curve never reaches {level:.6f} (max {rho.values.max():.6f})")
    return rho.shifted(anchor_time - crossing)


def rho_infinity_diagnostics(family: RhoFamily) -> List[Tuple[int, float, float]]:
    """
    For k = 2..k_max: (k, applied shift, sup distance between aligned rho_k and
    aligned rho_{k-1}). Shrinking distances indicate convergence to a single
    translated limit curve.
    """
    rows = []
    aligned_prev = align_translate(family.level(1))
    for k in range(2, family.k_max + 1):
        rho_k = family.level(k)
        aligned = align_translate(rho_k)
        rows.append((k, aligned.t0 - rho_k.t0, sup_distance(aligned, aligned_prev)))
        aligned_prev = aligned
    return rows
