"""Edge arrival streams for the Poisson multigraph model."""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)

MODE_DETERMINISTIC = "det"
MODE_POISSON = "poisson"

BATCH_SIZE = 1 << 16

Edge = Tuple[int, int, float]


@dataclass(frozen=True)
class EdgeStreamConfig:
    n: int
    mode: str = MODE_DETERMINISTIC
    seed: int = 0
    replicate: int = 0
    t_max: Optional[float] = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"Edge stream needs n >= 2, got {self.n}")
        if self.mode not in (MODE_DETERMINISTIC, MODE_POISSON):
            raise ValueError(f"Unknown stream mode: {self.mode!r}")
        if self.t_max is not None and self.t_max <= 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")


def make_rng(seed: int, replicate: int) -> np.random.Generator:
    """Generator keyed by (seed, replicate), independent of scheduling order."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(replicate,)))


def _endpoint_batch(rng: np.random.Generator, n: int, size: int) -> Tuple[np.ndarray, np.ndarray]:
    # v is uniform over the n-1 vertices other than u, so loops never appear.
    u = rng.integers(0, n, size=size)
    v = (u + 1 + rng.integers(0, n - 1, size=size)) % n
    return u, v


def edge_stream(cfg: EdgeStreamConfig) -> Iterator[Edge]:
    """
    Yield (u, v, t) in arrival order.

    Deterministic mode places the i-th edge at t = 2i/n; Poisson mode uses
    exponential gaps with total rate (n-1)/2. Endpoints are two distinct
    uniform vertices, repeats allowed. Stops after t_max when one is set.
    """
    rng = make_rng(cfg.seed, cfg.replicate)
    n = cfg.n
    index = 0
    clock = 0.0
    rate = (n - 1) / 2.0
    while True:
        u, v = _endpoint_batch(rng, n, BATCH_SIZE)
        if cfg.mode == MODE_DETERMINISTIC:
            times = 2.0 * np.arange(index + 1, index + BATCH_SIZE + 1, dtype=np.float64) / n
        else:
            times = clock + np.cumsum(rng.exponential(1.0 / rate, size=BATCH_SIZE))
            clock = float(times[-1])
        index += BATCH_SIZE
        for a, b, t in zip(u.tolist(), v.tolist(), times.tolist()):
            if cfg.t_max is not None and t > cfg.t_max:
                return
            yield a, b, t


def realize_stream(cfg: EdgeStreamConfig, max_edges: int) -> List[Edge]:
    """Materialize the first ``max_edges`` arrivals (oracle replays, small n only)."""
    edges: List[Edge] = []
    for edge in edge_stream(cfg):
        if len(edges) >= max_edges:
            break
        edges.append(edge)
    return edges


def simple_graph_instance(n: int, distribution: str, rng: np.random.Generator) -> List[Edge]:
    """
    Complete simple graph K_n with i.i.d. Exp(1) or U(0,1) costs, one edge per pair.

    Returned as (u, v, weight) sorted by weight; scaled time is n * weight.
    """
    if distribution == "exponential":
        draw = rng.exponential
    elif distribution == "uniform":
        draw = rng.random
    else:
        raise ValueError(f"Unknown cost distribution: {distribution!r}")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    weights = draw(size=len(pairs))
    edges = [(u, v, float(w)) for (u, v), w in zip(pairs, weights)]
    edges.sort(key=lambda e: e[2])
    return edges
