"""
Reference successive MSTs by repeated Kruskal with deletion.

Used to check the forest cascade on small instances: T_1 is the minimum
spanning forest of the whole edge list, its edges are deleted, and the next
tree is taken from what remains. Edges are identified by their position in
the input so parallel edges stay distinct.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from cascade_sim.cascade import CascadeState

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    trees: List[FrozenSet[int]] = field(default_factory=list)
    failed_level: Optional[int] = None
    partial: FrozenSet[int] = frozenset()

    def forests(self) -> List[FrozenSet[int]]:
        """Spanning trees followed by the partial forest of the failing level, if any."""
        if self.failed_level is None:
            return list(self.trees)
        return list(self.trees) + [self.partial]


def oracle_successive_msts(
    edges: Sequence[Tuple[int, int, float]],
    K: int,
    n: Optional[int] = None,
) -> OracleResult:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if n is None:
        n = 1 + max((max(u, v) for u, v, _ in edges), default=0)

    graph = nx.MultiGraph()
    graph.add_nodes_from(range(n))
    for index, (u, v, weight) in enumerate(edges):
        graph.add_edge(u, v, key=index, weight=weight)

    result = OracleResult()
    for level in range(1, K + 1):
        chosen = list(nx.minimum_spanning_edges(graph, algorithm="kruskal", weight="weight", keys=True, data=False))
        keys = frozenset(key for _, _, key in chosen)
        if len(keys) < n - 1:
            result.failed_level = level
            result.partial = keys
            logger.debug(f"Residual graph disconnected at level {level} ({len(keys)} of {n - 1} edges)")
            break
        result.trees.append(keys)
        graph.remove_edges_from(chosen)
    return result


def replay_cascade(edges: Sequence[Tuple[int, int, float]], K: int, n: int) -> List[FrozenSet[int]]:
    """Push the edge list through a cascade and return each level's edge positions."""
    state = CascadeState(n, K, record_edges=True)
    for u, v, t in edges:
        state.insert(u, v, t)
    return [frozenset(level) for level in state.edge_sets]
