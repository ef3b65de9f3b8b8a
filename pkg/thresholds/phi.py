"""
Inverse functions phi = rho_{k-1}^{-1} on (0, 1), with derivatives.

For k = 2 the inverse of rho_1 is explicit; for larger k it is read off a
computed rho_{k-1} grid, above that curve's threshold.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from rho_numerics.closed_form import rho1_inverse
from rho_numerics.grid import GridFunction

logger = logging.getLogger(__name__)

KIND_CLOSED_K2 = "closed-form-k2"
KIND_GRID = "grid-inverse"
KIND_FORMAL = "formal"

SERIES_CUTOFF = 1e-4
DERIVATIVE_SERIES_CUTOFF = 1e-3
MONOTONE_TOL = 1e-7
PLATEAU_CUTOFF = 1e-6


class PhiDomainError(ValueError):
    """Raised when phi is evaluated outside its domain or built from a non-monotone curve."""
    pass


@dataclass(frozen=True)
class PhiFunction:
    evaluate: Callable[[float], float]
    derivative: Callable[[float], float]
    kind: str
    x_max: float = 1.0

    def check(self, x: float):
        if not 0.0 <= x < self.x_max:
            raise PhiDomainError(f"phi ({self.kind}) evaluated at x={x}, outside [0, {self.x_max})")

    def value(self, x: float) -> float:
        self.check(x)
        return float(self.evaluate(x))

    def slope(self, x: float) -> float:
        self.check(x)
        return float(self.derivative(x))


def _phi2(x: float) -> float:
    if x < SERIES_CUTOFF:
        return 1.0 + x / 2.0 + x * x / 3.0 + x ** 3 / 4.0
    return float(rho1_inverse(x))


def _phi2_prime(x: float) -> float:
    if x < DERIVATIVE_SERIES_CUTOFF:
        return 0.5 + 2.0 * x / 3.0 + 0.75 * x * x + 0.8 * x ** 3
    return (x / (1.0 - x) + math.log1p(-x)) / (x * x)


def phi_k2() -> PhiFunction:
    """phi(x) = -log(1-x)/x, the inverse of rho_1; phi(0+) = 1, phi'(0+) = 1/2."""
    return PhiFunction(evaluate=_phi2, derivative=_phi2_prime, kind=KIND_CLOSED_K2)


def phi_formal_identity() -> PhiFunction:
    """phi(x) = 1 + x on the whole half-line, so phi' = 1. Used to check the shooting integrator."""
    return PhiFunction(evaluate=lambda x: 1.0 + x, derivative=lambda x: 1.0, kind=KIND_FORMAL, x_max=math.inf)


def phi_from_grid(rho_prev: GridFunction) -> PhiFunction:
    """
    Invert a gridded rho_{k-1} above its threshold.

    The zero plateau is cut at its last grid point, which becomes phi(0).
    phi' = 1 / rho'(phi(x)) with rho' from one-sided differences at the ends
    of the kept range and centred differences inside.
    """
    values = rho_prev.values
    times = rho_prev.times()
    positive = np.nonzero(values > PLATEAU_CUTOFF)[0]
    if positive.size < 3:
        raise PhiDomainError("rho grid has too few points above its threshold to invert")
    start = max(int(positive[0]) - 1, 0)
    rho = values[start:].copy()
    t = times[start:]
    rho[0] = 0.0

    steps = np.diff(rho)
    if np.any(steps < -MONOTONE_TOL):
        worst = int(np.argmin(steps))
        raise PhiDomainError(f"rho grid decreases by {-steps[worst]:.2e} at t={t[worst]:.4f}; cannot invert")
    keep = np.concatenate(([True], steps > 0))
    rho, t = rho[keep], t[keep]
    if rho.size < 3:
        raise PhiDomainError("rho grid is flat above its threshold")

    slope = np.gradient(rho, t)
    x_max = float(rho[-1])
    logger.debug(f"Inverted rho grid: phi(0)={t[0]:.4f}, domain [0, {x_max:.6f})")

    def evaluate(x: float) -> float:
        return float(np.interp(x, rho, t))

    def derivative(x: float) -> float:
        return float(1.0 / np.interp(evaluate(x), t, slope))

    return PhiFunction(evaluate=evaluate, derivative=derivative, kind=KIND_GRID, x_max=x_max)
