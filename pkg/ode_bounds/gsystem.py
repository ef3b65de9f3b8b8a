"""
Occupancy functions of the single-component bound process.

    g_k' = (g_{k-1}^2 - g_k^2) / 2,  g_k(0) = 0,  g_0 = 1

g_1 = tanh(t/2). The bound Gamma_k <= 1/2 int t (1 - g_k^2) dt is accumulated
with the trapezoid rule on the integration grid while stepping, so the full
fine-grid trajectories never have to be kept; curves are recorded every
``record_dt`` for output.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.integrate import trapezoid

from config import ODE_MIN_HORIZON, ODE_RECORD_DT, ODE_TAIL_TOL
from rho_numerics.grid import GridFunction

logger = logging.getLogger(__name__)

INTEGRATORS = ("euler", "rk4")


@dataclass
class GSystem:
    K: int
    dt: float
    horizon: float
    integrator: str
    g: List[GridFunction] = field(default_factory=list)
    gamma_bar: List[float] = field(default_factory=list)
    t_end: float = 0.0
    tail_met: bool = False
    ordering_violations: int = 0

    @property
    def flagged(self) -> bool:
        return not self.tail_met

    def gaps(self) -> List[float]:
        return [gb - (k + 1) ** 2 for k, gb in enumerate(self.gamma_bar)]

    def plateau_gap(self) -> float:
        """Mean gap over the upper half of the levels, where the gaps level off."""
        gaps = self.gaps()
        return float(np.mean(gaps[len(gaps) // 2:]))


def default_horizon(K: int) -> float:
    return max(ODE_MIN_HORIZON, 2.0 * K + 30.0)


def _rate(g: np.ndarray) -> np.ndarray:
    prev = np.empty_like(g)
    prev[0] = 1.0
    prev[1:] = g[:-1]
    return 0.5 * (prev * prev - g * g)


def _euler_step(g: np.ndarray, dt: float) -> np.ndarray:
    return g + dt * _rate(g)


def _rk4_step(g: np.ndarray, dt: float) -> np.ndarray:
    k1 = _rate(g)
    k2 = _rate(g + 0.5 * dt * k1)
    k3 = _rate(g + 0.5 * dt * k2)
    k4 = _rate(g + dt * k3)
    return g + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def solve_g_system(
    K: int,
    dt: float = 1e-4,
    horizon: Optional[float] = None,
    integrator: str = "euler",
    tail_tol: float = ODE_TAIL_TOL,
    record_dt: float = ODE_RECORD_DT,
) -> GSystem:
    """
    Step g_1..g_K until 1 - g_K < tail_tol or the horizon is reached (flagged).
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if integrator not in INTEGRATORS:
        raise ValueError(f"Unknown integrator {integrator!r}; expected one of {INTEGRATORS}")
    horizon = default_horizon(K) if horizon is None else horizon
    step = _euler_step if integrator == "euler" else _rk4_step
    record_every = max(1, int(round(record_dt / dt)))

    g = np.zeros(K)
    t = 0.0
    integrand = np.zeros(K)
    area = np.zeros(K)
    recorded = [g.copy()]
    violations = 0
    max_steps = int(np.ceil(horizon / dt))
    tail_met = False

    for i in range(1, max_steps + 1):
        g = step(g, dt)
        t = i * dt
        if g[0] > 1.0 or np.any(g[1:] > g[:-1]):
            violations += 1
        new_integrand = t * (1.0 - g * g)
        area += 0.5 * dt * (integrand + new_integrand)
        integrand = new_integrand
        if i % record_every == 0:
            recorded.append(g.copy())
        if 1.0 - g[-1] < tail_tol:
            tail_met = True
            break

    if violations:
        logger.warning(f"g ordering violated at {violations} steps (dt={dt})")
    if not tail_met:
        logger.warning(f"Horizon {horizon} reached with 1 - g_K = {1.0 - g[-1]:.2e}; Gamma bars are flagged")

    trajectory = np.array(recorded)
    record_step = record_every * dt
    system = GSystem(
        K=K,
        dt=dt,
        horizon=horizon,
        integrator=integrator,
        g=[GridFunction(t0=0.0, dt=record_step, values=trajectory[:, k]) for k in range(K)],
        gamma_bar=[float(a) for a in 0.5 * area],
        t_end=t,
        tail_met=tail_met,
        ordering_violations=violations,
    )
    logger.info(
        f"g-system K={K} dt={dt} ({integrator}) stopped at t={t:.3f}; "
        f"Gamma_bar_K - K^2 = {system.gaps()[-1]:.5f}"
    )
    return system


def gamma_bar(g_k: GridFunction) -> float:
    """1/2 int t (1 - g_k^2) dt over a recorded curve; the integrand past its end is dropped."""
    t = g_k.times()
    return float(0.5 * trapezoid(t * (1.0 - g_k.values ** 2), t))
