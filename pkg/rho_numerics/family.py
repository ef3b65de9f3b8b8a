import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from config import RHO_MAX_ITER, RHO_THRESHOLD_CUTOFF, RHO_TOL
from rho_numerics.closed_form import rho1_closed_form
from rho_numerics.fixed_point import FixedPointNotConverged, TypeMeasure, integrate_profile, iterate_survival
from rho_numerics.grid import GridFunction

logger = logging.getLogger(__name__)

# Budget multiplier for grid points next to a threshold, where the iteration
# slows down like a critical branching process.
CRITICAL_RETRY_FACTOR = 20
MONOTONE_TOL = 1e-7


class RhoWindowError(ValueError):
    """Raised when a translated window does not contain the regime it should."""
    pass


@dataclass
class RhoFamily:
    k_max: int
    dt: float
    window: float
    rho: List[GridFunction] = field(default_factory=list)
    translation: List[float] = field(default_factory=list)
    xi_hat: List[Optional[float]] = field(default_factory=list)
    start: str = "closed"

    def level(self, k: int) -> GridFunction:
        """rho_k for k >= 0 (k = 0 is the unit step at time 0)."""
        if k == 0:
            return GridFunction.step_at_zero(self.dt, self.window)
        return self.rho[k - 1]


def _solve_point(t: float, measure: TypeMeasure, init: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    try:
        profile, iterations = iterate_survival(t, measure, init, tol=tol, max_iter=max_iter)
    except FixedPointNotConverged as exc:
        logger.warning(
            f"Slow convergence at t={t:.4f} (residual {exc.residual:.2e} after {exc.iterations}); "
            f"retrying with {CRITICAL_RETRY_FACTOR}x budget"
        )
        profile, iterations = iterate_survival(
            t, measure, exc.last, tol=tol, max_iter=max_iter * CRITICAL_RETRY_FACTOR
        )
    logger.debug(f"t={t:.4f}: {iterations} iterations")
    return profile


def next_rho(
    mu: GridFunction,
    dt: float,
    window: float,
    t0: float,
    tol: float = RHO_TOL,
    max_iter: int = RHO_MAX_ITER,
) -> Tuple[GridFunction, Optional[float]]:
    """
    rho_k on [t0, t0 + window] from mu = rho_{k-1}.

    Sweeps t downward from the top of the window: the top point starts from
    f = 1, each lower point from the profile found one step later (survival
    is monotone in t, so that profile lies above the new one). Returns the
    curve and xi_hat, the first grid time where it exceeds 1e-6.
    """
    offset = (t0 - mu.t0) / dt
    if offset < -1e-9 or abs(offset - round(offset)) > 1e-6:
        raise RhoWindowError(f"Window start {t0} is not on mu's grid (t0={mu.t0}, dt={dt})")
    offset = int(round(offset))
    count = offset + int(round(window / dt)) + 1
    measure = TypeMeasure.from_grid(mu, mu.t0, dt, count)

    values = np.zeros(count - offset)
    profile = np.ones(count)
    for i in range(count - 1, offset - 1, -1):
        t = float(measure.x[i])
        profile = _solve_point(t, measure, profile, tol, max_iter)
        values[i - offset] = integrate_profile(measure, profile)

    rho = GridFunction(t0=t0, dt=dt, values=values)
    if values[0] > RHO_THRESHOLD_CUTOFF:
        raise RhoWindowError(
            f"rho is already {values[0]:.3g} at the window start t0={t0}; use a smaller translation"
        )
    if not rho.is_nondecreasing(MONOTONE_TOL):
        logger.warning(f"rho on [{t0}, {rho.t_end}] is not monotone within {MONOTONE_TOL}")
    xi_hat = rho.first_exceedance(RHO_THRESHOLD_CUTOFF)
    logger.info(f"Computed rho on [{t0:g}, {rho.t_end:g}]: xi_hat={xi_hat}, end value {rho.end_value:.6f}")
    return rho, xi_hat


def compute_family(
    k_max: int,
    dt: float = 0.01,
    window: float = 10.0,
    shift: float = 2.0,
    start: str = "closed",
    tol: float = RHO_TOL,
    max_iter: int = RHO_MAX_ITER,
) -> RhoFamily:
    """
    rho_1..rho_{k_max}, rho_k on the window [shift (k-1), shift (k-1) + window].

    ``start`` picks rho_1: "closed" from the closed form, "step" from the
    fixed-point recursion over rho_0.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if start not in ("closed", "step"):
        raise ValueError(f"start must be 'closed' or 'step', got {start!r}")
    family = RhoFamily(k_max=k_max, dt=dt, window=window, start=start)

    if start == "closed":
        rho1 = rho1_closed_form(dt=dt, window=window)
        xi1 = rho1.first_exceedance(RHO_THRESHOLD_CUTOFF)
    else:
        rho1, xi1 = next_rho(GridFunction.step_at_zero(dt, window), dt, window, 0.0, tol, max_iter)
    family.rho.append(rho1)
    family.translation.append(0.0)
    family.xi_hat.append(xi1)

    for k in range(2, k_max + 1):
        t0 = shift * (k - 1)
        rho_k, xi_k = next_rho(family.rho[-1], dt, window, t0, tol, max_iter)
        family.rho.append(rho_k)
        family.translation.append(t0)
        family.xi_hat.append(xi_k)
    return family
