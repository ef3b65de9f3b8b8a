import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from cascade_sim.cascade import CascadeState
from cascade_sim.forest import compute_susceptibility, pair_connectivity
from cascade_sim.stream import EdgeStreamConfig, edge_stream

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_DT = 0.05


@dataclass(frozen=True)
class TraceRow:
    t: float
    c1_frac: Tuple[float, ...]
    edges_frac: Tuple[float, ...]
    chi_frac: Optional[Tuple[float, ...]] = None
    chi_hat_frac: Optional[Tuple[float, ...]] = None
    pair_conn: Optional[Tuple[float, ...]] = None


@dataclass
class CascadeTrace:
    sample_dt: float
    rows: List[TraceRow] = field(default_factory=list)

    def times(self) -> List[float]:
        return [row.t for row in self.rows]

    def level_series(self, level: int, column: str = "c1_frac") -> List[float]:
        out = []
        for row in self.rows:
            values = getattr(row, column)
            if values is None:
                raise ValueError(f"Trace column {column} was not sampled")
            out.append(values[level - 1])
        return out


@dataclass
class SimSummary:
    config: Dict[str, Any]
    K: int
    gamma_hat: List[float]
    completed: List[bool]
    completion_times: List[Optional[float]]
    trace: CascadeTrace
    arrivals: int
    rejected: int
    index_sum: List[int]
    wall_time: float = 0.0
    edge_sets: Optional[List[List[int]]] = None

    @property
    def censored(self) -> List[bool]:
        return [not c for c in self.completed]

    def gamma_monotone(self) -> bool:
        done = [g for g, c in zip(self.gamma_hat, self.completed) if c]
        return all(a <= b for a, b in zip(done, done[1:]))

    def to_json_dict(self) -> Dict[str, Any]:
        """Deterministic JSON payload (wall time is kept out on purpose)."""
        return {
            "config": self.config,
            "seed": self.config.get("seed"),
            "replicate": self.config.get("replicate"),
            "K": self.K,
            "arrivals": self.arrivals,
            "rejected": self.rejected,
            "levels": [
                {
                    "k": k + 1,
                    "gamma_hat": self.gamma_hat[k],
                    "completed": self.completed[k],
                    "censored": not self.completed[k],
                    "completion_time": self.completion_times[k],
                }
                for k in range(self.K)
            ],
        }


def _sample(state: CascadeState, t: float, with_chi: bool) -> TraceRow:
    levels = range(1, state.K + 1)
    chi = chi_hat = pair_conn = None
    if with_chi:
        pairs = [compute_susceptibility(f) for f in state.forests]
        chi = tuple(c / state.n for c, _ in pairs)
        chi_hat = tuple(h / state.n for _, h in pairs)
        pair_conn = tuple(pair_connectivity(c, state.n) for c, _ in pairs)
    return TraceRow(
        t=t,
        c1_frac=tuple(state.largest_fraction(k) for k in levels),
        edges_frac=tuple(state.edge_fraction(k) for k in levels),
        chi_frac=chi,
        chi_hat_frac=chi_hat,
        pair_conn=pair_conn,
    )


def run_cascade(
    cfg: EdgeStreamConfig,
    K: int,
    sample_dt: float = DEFAULT_SAMPLE_DT,
    with_chi: bool = False,
    record_edges: bool = False,
) -> SimSummary:
    """
    Feed the edge stream through K cascade levels until level K spans or the
    stream passes cfg.t_max. Levels still short of n-1 edges are censored and
    their gamma_hat is the partial cost, a lower bound.
    """
    if sample_dt <= 0:
        raise ValueError(f"sample_dt must be positive, got {sample_dt}")
    started = time.perf_counter()
    state = CascadeState(cfg.n, K, record_edges=record_edges)
    trace = CascadeTrace(sample_dt=sample_dt)
    sample_index = 0
    next_sample = 0.0

    for u, v, t in edge_stream(cfg):
        while next_sample < t:
            trace.rows.append(_sample(state, next_sample, with_chi))
            sample_index += 1
            next_sample = round(sample_index * sample_dt, 12)
        state.insert(u, v, t)
        if state.all_spanning:
            break

    end_time = state.last_time if state.all_spanning or cfg.t_max is None else cfg.t_max
    while next_sample <= end_time:
        trace.rows.append(_sample(state, next_sample, with_chi))
        sample_index += 1
        next_sample = round(sample_index * sample_dt, 12)

    completed = [state.is_spanning(k) for k in range(1, K + 1)]
    if not completed[-1]:
        missing = [k for k in range(1, K + 1) if not completed[k - 1]]
        logger.warning(
            f"Censored run (seed={cfg.seed}, replicate={cfg.replicate}): levels {missing} "
            f"did not span by t={state.last_time:.3f}"
        )

    config_echo = asdict(cfg)
    config_echo.update({"K": K, "sample_dt": sample_dt, "with_chi": with_chi})
    summary = SimSummary(
        config=config_echo,
        K=K,
        gamma_hat=list(state.cost_sum),
        completed=completed,
        completion_times=list(state.completion_time),
        trace=trace,
        arrivals=state.arrivals,
        rejected=state.rejected,
        index_sum=list(state.index_sum),
        wall_time=time.perf_counter() - started,
        edge_sets=state.edge_sets,
    )
    logger.debug(
        f"Cascade n={cfg.n} K={K} seed={cfg.seed}/{cfg.replicate}: "
        f"{state.arrivals} arrivals, gamma_hat={[round(g, 4) for g in summary.gamma_hat]}"
    )
    return summary
