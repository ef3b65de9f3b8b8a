import logging

import numpy as np
from scipy.optimize import bisect

from rho_numerics.grid import GridFunction

logger = logging.getLogger(__name__)

BISECT_XTOL = 1e-12
MIN_WINDOW = 10.0


def rho1_value(t: float) -> float:
    """
    Largest root of rho = 1 - exp(-t rho) in [0, 1).

    Zero up to the threshold t = 1. Above it the root lies in
    [(t-1)/t^2, 1], where the left end keeps bisection off the trivial root.
    """
    if t <= 1.0:
        return 0.0

    def gap(rho):
        return 1.0 - np.exp(-t * rho) - rho

    lo = (t - 1.0) / (t * t)
    return float(bisect(gap, lo, 1.0, xtol=BISECT_XTOL))


def rho1_closed_form(dt: float = 0.01, window: float = MIN_WINDOW, t0: float = 0.0) -> GridFunction:
    if t0 + window < MIN_WINDOW:
        raise ValueError(f"Closed-form rho_1 grid must reach t={MIN_WINDOW}, ends at {t0 + window}")
    count = int(round(window / dt)) + 1
    times = t0 + dt * np.arange(count, dtype=np.float64)
    values = np.array([rho1_value(t) for t in times])
    logger.debug(f"Closed-form rho_1 on [{t0}, {t0 + window}] with {count} points, end value {values[-1]:.8f}")
    return GridFunction(t0=t0, dt=dt, values=values)


def rho1_inverse(rho):
    """t(rho) = -log(1 - rho) / rho, the inverse of rho_1 on (0, 1)."""
    rho = np.asarray(rho, dtype=np.float64)
    return -np.log1p(-rho) / rho
