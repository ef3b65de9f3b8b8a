"""
Threshold of the next level from the inverse phi of the previous curve.

With x(theta) the inverse of the Pruefer angle,

    dx/dtheta = 1 / (cos^2 theta + phi'(x) sin^2 theta),  x(0) = 0,

the root is s = x(pi/2) and the threshold is sigma = phi(s).
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

from config import THETA_STEPS
from thresholds.phi import PhiDomainError, PhiFunction, phi_from_grid, phi_k2

logger = logging.getLogger(__name__)

CHAIN_GAP_TOL = 0.02


class ShootingError(RuntimeError):
    """Raised when x(theta) leaves the domain of phi before theta = pi/2."""
    pass


@dataclass(frozen=True)
class ThresholdResult:
    k: int
    s_k: float
    sigma_k: float
    step: float
    steps: int
    # True where the result relies on the unproven smoothness of rho_{k-1} (k >= 3).
    assumption_flag: bool = False
    kind: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _rate(phi: PhiFunction, theta: float, x: float) -> float:
    try:
        slope = phi.slope(x)
    except PhiDomainError as exc:
        raise ShootingError(f"x={x:.8f} left the domain of phi at theta={theta:.6f}") from exc
    c = math.cos(theta)
    s = math.sin(theta)
    return 1.0 / (c * c + slope * s * s)


def solve_theta_ode(phi: PhiFunction, steps: int = THETA_STEPS, k: int = 2) -> ThresholdResult:
    """Fixed-step classical RK4 from theta = 0 to pi/2."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    h = 0.5 * math.pi / steps
    x = 0.0
    for i in range(steps):
        theta = i * h
        k1 = _rate(phi, theta, x)
        k2 = _rate(phi, theta + 0.5 * h, x + 0.5 * h * k1)
        k3 = _rate(phi, theta + 0.5 * h, x + 0.5 * h * k2)
        k4 = _rate(phi, theta + h, x + h * k3)
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not 0.0 < x < phi.x_max:
        raise ShootingError(f"x(pi/2) = {x} is outside (0, {phi.x_max})")

    result = ThresholdResult(
        k=k,
        s_k=x,
        sigma_k=phi.value(x),
        step=h,
        steps=steps,
        assumption_flag=k > 2,
        kind=phi.kind,
    )
    logger.info(f"Threshold k={k} ({phi.kind}): s={result.s_k:.6f}, sigma={result.sigma_k:.6f}")
    return result


def threshold_chain(family, steps: int = THETA_STEPS, k_max: Optional[int] = None) -> List[ThresholdResult]:
    """
    sigma_2..sigma_{k_max}: k = 2 from the closed-form phi, later levels from
    the inverse of the computed rho_{k-1} in ``family``.
    """
    k_max = family.k_max + 1 if k_max is None else k_max
    results = []
    for k in range(2, k_max + 1):
        phi = phi_k2() if k == 2 else phi_from_grid(family.level(k - 1))
        result = solve_theta_ode(phi, steps=steps, k=k)
        if results and result.sigma_k < results[-1].sigma_k + 1.0 - CHAIN_GAP_TOL:
            logger.warning(
                f"sigma_{k}={result.sigma_k:.5f} is less than sigma_{k - 1} + 1 = {results[-1].sigma_k + 1.0:.5f}"
            )
        results.append(result)
    return results
