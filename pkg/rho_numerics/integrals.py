"""Cost, mass and edge-count integrals over the rho_k curves."""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from rho_numerics.grid import GridFunction

logger = logging.getLogger(__name__)

TAIL_TOL = 1e-4


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    approximate: bool = False
    # Heuristic size of the neglected tail, (1 - rho_end^2) * t_end * window.
    truncation: float = 0.0


def _tail(rho: GridFunction) -> IntegralEstimate:
    end = rho.end_value
    window = rho.t_end - rho.t0
    return IntegralEstimate(
        value=0.0,
        approximate=(1.0 - end) >= TAIL_TOL,
        truncation=(1.0 - end * end) * rho.t_end * window,
    )


def w_integral(rho: GridFunction) -> IntegralEstimate:
    """
    1/2 int_0^inf t (1 - rho(t)^2) dt: the limit of the total cost of the
    first k trees when rho = rho_k. rho vanishes before its window, which
    contributes t0^2 / 4 exactly; past the window the integrand is taken as 0.
    """
    t = rho.times()
    body = 0.5 * trapezoid(t * (1.0 - rho.values ** 2), t) if rho.values.size > 1 else 0.0
    tail = _tail(rho)
    return IntegralEstimate(value=0.25 * rho.t0 ** 2 + body, approximate=tail.approximate, truncation=tail.truncation)


def gamma_from_rho(rho_prev: GridFunction, rho_k: GridFunction) -> IntegralEstimate:
    """gamma_k = 1/2 int (rho_{k-1}^2 - rho_k^2) t dt, as a difference of w integrals."""
    upper = w_integral(rho_k)
    lower = w_integral(rho_prev)
    estimate = IntegralEstimate(
        value=upper.value - lower.value,
        approximate=upper.approximate or lower.approximate,
        truncation=upper.truncation + lower.truncation,
    )
    if estimate.approximate:
        logger.warning(
            f"Tail not covered (rho ends at {rho_prev.end_value:.6f} / {rho_k.end_value:.6f}); "
            f"gamma={estimate.value:.5f} is approximate, truncation heuristic {estimate.truncation:.2e}"
        )
    return estimate


def mass_check(rho_k: GridFunction, k: int) -> float:
    """1/2 int (1 - rho_k^2) dt, which should come out close to k."""
    t = rho_k.times()
    body = 0.5 * trapezoid(1.0 - rho_k.values ** 2, t) if rho_k.values.size > 1 else 0.0
    value = 0.5 * rho_k.t0 + body
    logger.debug(f"Mass integral for k={k}: {value:.6f} (deviation {value - k:+.2e})")
    return float(value)


def edge_count_curve(rho_prev: GridFunction) -> GridFunction:
    """Running 1/2 int_0^t rho_{k-1}(s)^2 ds: the limit of e(G_k(t)) / n."""
    t = rho_prev.times()
    running = 0.5 * cumulative_trapezoid(rho_prev.values ** 2, t, initial=0.0)
    return GridFunction(t0=rho_prev.t0, dt=rho_prev.dt, values=running, left=0.0)


def edge_count_at(rho_prev: GridFunction, t: float) -> float:
    """Edge-count limit at t, growing at rate rho_end^2 / 2 past the grid."""
    curve = edge_count_curve(rho_prev)
    if t <= curve.t_end:
        return float(curve.value_at(t))
    return curve.end_value + 0.5 * rho_prev.end_value ** 2 * (t - curve.t_end)


def gamma_table(family) -> np.ndarray:
    """gamma_1..gamma_{k_max} for a RhoFamily."""
    return np.array([
        gamma_from_rho(family.level(k - 1), family.level(k)).value for k in range(1, family.k_max + 1)
    ])
