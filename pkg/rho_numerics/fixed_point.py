"""
Survival profile of the multi-type branching process at time t.

For the kernel kappa_t(x, y) = (t - max(x, y))_+ and type measure mu = rho_{k-1},

    (T f)(x) = (t - x) * int_{y <= x} f dmu + int_{x < y < t} (t - y) f(y) dmu(y)

for x < t and 0 otherwise. The x-derivative of (T f)(x) is -int_{y <= x} f dmu,
so one forward cumulative sum and one backward cumulative sum give T f at
every grid point. The survival profile is the largest fixed point of
f = 1 - exp(-T f), reached by iterating from any f above it.

Discretisation: the mass mu(x_j) - mu(x_{j-1}) sits at the cell midpoint
x_j - dt/2 with f averaged over the cell; the jump of mu at the first grid
point (rho_0's unit atom) sits at that point.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from rho_numerics.grid import GridFunction

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 1000


class FixedPointNotConverged(RuntimeError):
    """Raised when the survival iteration exceeds its iteration budget."""

    def __init__(self, t: float, iterations: int, residual: float, last: Optional[np.ndarray] = None):
        super().__init__(
            f"Survival iteration at t={t:.4f} did not converge in {iterations} iterations "
            f"(last sup change {residual:.3e})"
        )
        self.t = t
        self.iterations = iterations
        self.residual = residual
        self.last = last


@dataclass(frozen=True)
class TypeMeasure:
    """Point masses of mu on an x grid: positions and weights of each cell."""

    x: np.ndarray
    positions: np.ndarray
    masses: np.ndarray

    @classmethod
    def from_grid(cls, mu: GridFunction, x0: float, dt: float, count: int) -> "TypeMeasure":
        x = x0 + dt * np.arange(count, dtype=np.float64)
        values = mu.value_at(x)
        masses = np.diff(values, prepend=mu.left if x0 <= mu.t0 else float(mu.value_at(x0 - dt)))
        positions = x - 0.5 * dt
        positions[0] = x[0]
        return cls(x=x, positions=positions, masses=masses)

    def active_cells(self, t: float) -> int:
        """Number of leading cells whose mass sits strictly before t."""
        return int(np.searchsorted(self.positions, t, side="left"))


def _cell_average(f: np.ndarray) -> np.ndarray:
    fbar = np.empty_like(f)
    fbar[0] = f[0]
    fbar[1:] = 0.5 * (f[:-1] + f[1:])
    return fbar


def apply_kernel(t: float, measure: TypeMeasure, f: np.ndarray) -> np.ndarray:
    """T_kappa f at the first len(f) grid points."""
    J = f.size
    if J == 0:
        return f.copy()
    weights = measure.masses[:J] * _cell_average(f)
    below = np.cumsum(weights)
    tail = weights * (t - measure.positions[:J])
    above = tail.sum() - np.cumsum(tail)
    return np.maximum(t - measure.x[:J], 0.0) * below + above


def integrate_profile(measure: TypeMeasure, f: np.ndarray) -> float:
    """int rho_t dmu for a profile supported on the first len(f) cells."""
    J = f.size
    if J == 0:
        return 0.0
    return float(np.dot(measure.masses[:J], _cell_average(f)))


def iterate_survival(
    t: float,
    measure: TypeMeasure,
    init: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Tuple[np.ndarray, int]:
    """
    Iterate f <- 1 - exp(-T f) from ``init`` (truncated or padded to the active
    cells) until the sup change is at most ``tol``.

    A converged profile with sup T f <= sup f belongs to a subcritical
    process; the largest fixed point is then zero and is returned exactly.
    """
    J = measure.active_cells(t)
    if J == 0:
        return np.zeros(0), 0
    f = np.ones(J)
    n_init = min(J, init.size)
    f[:n_init] = init[:n_init]

    residual = np.inf
    for iteration in range(1, max_iter + 1):
        updated = -np.expm1(-apply_kernel(t, measure, f))
        residual = float(np.max(np.abs(updated - f)))
        f = updated
        if residual <= tol:
            if np.max(apply_kernel(t, measure, f)) <= np.max(f):
                return np.zeros(J), iteration
            return f, iteration
    raise FixedPointNotConverged(t, max_iter, residual, last=f)


def survival_fixed_point(
    t: float,
    mu: GridFunction,
    init: Optional[GridFunction] = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> GridFunction:
    """
    Survival profile x -> rho_t(x) on mu's grid, extended to cover t.

    ``init`` must dominate the answer pointwise (f = 1 always does).
    """
    count = max(mu.values.size, int(np.ceil((t - mu.t0) / mu.dt)) + 2)
    measure = TypeMeasure.from_grid(mu, mu.t0, mu.dt, count)
    start = np.ones(count) if init is None else np.asarray(init.value_at(measure.x))
    profile, iterations = iterate_survival(t, measure, start, tol=tol, max_iter=max_iter)
    values = np.zeros(count)
    values[:profile.size] = profile
    logger.debug(f"Survival profile at t={t:.4f}: {iterations} iterations, rho_t(x0)={values[0]:.6f}")
    return GridFunction(t0=mu.t0, dt=mu.dt, values=values)
