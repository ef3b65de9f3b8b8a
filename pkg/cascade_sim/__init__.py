"""
Forest-cascade simulation of successive minimum spanning trees.

- forest: DisjointSetForest and susceptibility
- stream: edge arrival streams (deterministic spacing or Poisson process)
- cascade: CascadeState and cascade_insert
- runner: run_cascade, traces and per-run summaries
- oracle: repeated Kruskal with deletion, for small-n equivalence checks
"""
from .cascade import CascadeState, cascade_insert
from .forest import (
    DisjointSetForest,
    VertexRangeError,
    compute_susceptibility,
    dsf_find,
    dsf_union,
    pair_connectivity,
)
from .oracle import OracleResult, oracle_successive_msts, replay_cascade
from .runner import CascadeTrace, SimSummary, TraceRow, run_cascade
from .stream import (
    MODE_DETERMINISTIC,
    MODE_POISSON,
    EdgeStreamConfig,
    edge_stream,
    make_rng,
    realize_stream,
    simple_graph_instance,
)

__all__ = [
    "CascadeState",
    "CascadeTrace",
    "DisjointSetForest",
    "EdgeStreamConfig",
    "MODE_DETERMINISTIC",
    "MODE_POISSON",
    "OracleResult",
    "SimSummary",
    "TraceRow",
    "VertexRangeError",
    "cascade_insert",
    "compute_susceptibility",
    "dsf_find",
    "dsf_union",
    "edge_stream",
    "make_rng",
    "oracle_successive_msts",
    "pair_connectivity",
    "realize_stream",
    "replay_cascade",
    "run_cascade",
    "simple_graph_instance",
]
