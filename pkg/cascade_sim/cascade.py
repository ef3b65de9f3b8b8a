"""The Kruskal forest cascade F_1, ..., F_K."""
import logging
from typing import List, Optional

from cascade_sim.forest import DisjointSetForest

logger = logging.getLogger(__name__)

ORACLE_MAX_N = 10_000


class CascadeState:
    """
    Stack of K forests plus per-level accumulators.

    Levels are numbered 1..K in the public API; the lists are indexed from 0.
    ``cost_sum[k-1]`` accumulates t/n over edges accepted at level k,
    ``accepted_edges[k-1]`` counts them, ``completion_time[k-1]`` is set when
    level k reaches n-1 edges. ``index_sum`` adds up the 1-based arrival
    indices of accepted edges (used by the cheapest-edges lower bound).
    """

    def __init__(self, n: int, K: int, record_edges: bool = False):
        if n < 2:
            raise ValueError(f"Cascade needs n >= 2, got {n}")
        if K < 1:
            raise ValueError(f"Cascade needs K >= 1, got {K}")
        if record_edges and n > ORACLE_MAX_N:
            raise ValueError(f"Edge lists are only kept for n <= {ORACLE_MAX_N}, got n={n}")
        self.n = n
        self.K = K
        self.forests: List[DisjointSetForest] = [DisjointSetForest(n) for _ in range(K)]
        self.cost_sum: List[float] = [0.0] * K
        self.accepted_edges: List[int] = [0] * K
        self.completion_time: List[Optional[float]] = [None] * K
        self.index_sum: List[int] = [0] * K
        self.arrivals = 0
        self.rejected = 0
        self.last_time = 0.0
        self.edge_sets: Optional[List[List[int]]] = [[] for _ in range(K)] if record_edges else None
        self._spanning_levels = 0

    @property
    def all_spanning(self) -> bool:
        return self._spanning_levels == self.K

    def is_spanning(self, level: int) -> bool:
        return self.accepted_edges[level - 1] == self.n - 1

    def largest_fraction(self, level: int) -> float:
        return self.forests[level - 1].max_component / self.n

    def edge_fraction(self, level: int) -> float:
        return self.accepted_edges[level - 1] / self.n

    def insert(self, u: int, v: int, t: float) -> Optional[int]:
        """
        Offer edge (u, v) arriving at time t.

        Returns the level (1-based) that accepted it, or None when u and v are
        already connected at every level.
        """
        if t < self.last_time:
            raise ValueError(f"Arrival times must be nondecreasing: {t} after {self.last_time}")
        self.last_time = t
        self.arrivals += 1
        for i, forest in enumerate(self.forests):
            if forest.union(u, v):
                self.cost_sum[i] += t / self.n
                self.accepted_edges[i] += 1
                self.index_sum[i] += self.arrivals
                if self.edge_sets is not None:
                    self.edge_sets[i].append(self.arrivals - 1)
                if self.accepted_edges[i] == self.n - 1:
                    self.completion_time[i] = t
                    self._spanning_levels += 1
                    logger.debug(f"Level {i + 1} spans at t={t:.4f}")
                return i + 1
        self.rejected += 1
        return None


def cascade_insert(state: CascadeState, u: int, v: int, t: float) -> Optional[int]:
    return state.insert(u, v, t)
