from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class GridFunction:
    """
    A function sampled at t0, t0 + dt, ..., t0 + (len-1) dt.

    ``left`` is the value assumed before t0 (0 for every rho_k, which vanish
    below their window); after the last point the function is held flat.
    """

    t0: float
    dt: float
    values: np.ndarray
    left: float = 0.0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"Grid step must be positive, got {self.dt}")
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("Grid values must be a non-empty 1-d sequence")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, t0: float, dt: float, length: float, value: float, left: float = 0.0) -> "GridFunction":
        count = int(round(length / dt)) + 1
        return cls(t0=t0, dt=dt, values=np.full(count, value, dtype=np.float64), left=left)

    @classmethod
    def step_at_zero(cls, dt: float, length: float) -> "GridFunction":
        """rho_0: zero before 0, one from 0 on (a unit mass at time 0)."""
        return cls.constant(0.0, dt, length, 1.0, left=0.0)

    def __len__(self) -> int:
        return self.values.size

    @property
    def t_end(self) -> float:
        return self.t0 + (self.values.size - 1) * self.dt

    @property
    def end_value(self) -> float:
        return float(self.values[-1])

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size, dtype=np.float64)

    def value_at(self, t):
        """Linear interpolation; ``left`` before t0, last value after the end."""
        return np.interp(t, self.times(), self.values, left=self.left, right=self.values[-1])

    def shifted(self, delta: float) -> "GridFunction":
        return GridFunction(t0=self.t0 + delta, dt=self.dt, values=self.values.copy(), left=self.left)

    def increments(self) -> np.ndarray:
        """Stieltjes masses: the jump from ``left`` at t0, then successive differences."""
        return np.diff(self.values, prepend=self.left)

    def is_nondecreasing(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.diff(self.values) >= -tol))

    def within_unit_interval(self, tol: float = 0.0) -> bool:
        return bool(self.values.min() >= -tol and self.values.max() <= 1.0 + tol)

    def first_exceedance(self, level: float) -> Optional[float]:
        """First grid time with value > level, or None."""
        above = np.nonzero(self.values > level)[0]
        if above.size == 0:
            return None
        return self.t0 + self.dt * int(above[0])

    def crossing_time(self, level: float) -> Optional[float]:
        """First time the linear interpolant reaches ``level``, or None."""
        values = self.values
        if values[0] >= level:
            return self.t0
        above = np.nonzero(values >= level)[0]
        if above.size == 0:
            return None
        i = int(above[0])
        lo, hi = values[i - 1], values[i]
        frac = (level - lo) / (hi - lo)
        return self.t0 + self.dt * (i - 1 + frac)


def sup_distance(a: GridFunction, b: GridFunction, dt: Optional[float] = None) -> float:
    """Sup-norm distance of two grid functions over the union of their spans."""
    step = dt or min(a.dt, b.dt)
    start = min(a.t0, b.t0)
    stop = max(a.t_end, b.t_end)
    count = int(round((stop - start) / step)) + 1
    t = start + step * np.arange(count, dtype=np.float64)
    return float(np.max(np.abs(a.value_at(t) - b.value_at(t))))
