import logging

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import poisson

logger = logging.getLogger(__name__)

GOLDEN_TOL = 1e-10


def core_objective(lam: float, r: int = 3) -> float:
    """lambda / P(Po(lambda) >= r - 1)."""
    return float(lam / poisson.sf(r - 2, lam))


def core_threshold(r: int = 3) -> float:
    """
    Emergence threshold of the r-core of a random graph with edge density c/n:
    the minimum over lambda > 0 of lambda / P(Po(lambda) >= r - 1).
    """
    if r < 3:
        raise ValueError(f"r-core threshold needs r >= 3, got {r}")
    grid = np.linspace(0.05, 4.0 * r + 10.0, 400)
    i = int(np.argmin([core_objective(lam, r) for lam in grid]))
    i = min(max(i, 1), grid.size - 2)
    result = minimize_scalar(
        core_objective,
        bracket=(grid[i - 1], grid[i], grid[i + 1]),
        args=(r,),
        method="golden",
        tol=GOLDEN_TOL,
    )
    logger.debug(f"{r}-core threshold {result.fun:.10f} at lambda={result.x:.8f}")
    return float(result.fun)


def core3_threshold() -> float:
    return core_threshold(3)
