import numpy as np
import pytest

from cascade_sim import (
    MODE_DETERMINISTIC,
    MODE_POISSON,
    EdgeStreamConfig,
    oracle_successive_msts,
    realize_stream,
    replay_cascade,
    simple_graph_instance,
)


def _compare(edges, K, n):
    oracle = oracle_successive_msts(edges, K, n)
    cascade = replay_cascade(edges, K, n)
    expected = oracle.forests()
    return expected == cascade[:len(expected)], oracle


def test_cascade_matches_repeated_kruskal_on_random_streams():
    picker = np.random.default_rng(2024)
    mismatches = 0
    for instance in range(200):
        n = int(picker.integers(2, 51))
        K = int(picker.integers(1, 6))
        mode = MODE_DETERMINISTIC if instance % 2 == 0 else MODE_POISSON
        cfg = EdgeStreamConfig(n=n, mode=mode, seed=instance, replicate=0)
        edges = realize_stream(cfg, n * (2 * K + 10))
        same, _ = _compare(edges, K, n)
        mismatches += not same
    assert mismatches == 0


@pytest.mark.parametrize("distribution", ["exponential", "uniform"])
def test_cascade_matches_oracle_on_simple_graphs(distribution):
    rng = np.random.default_rng(99)
    for _ in range(20):
        n = int(rng.integers(4, 25))
        edges = simple_graph_instance(n, distribution, rng)
        same, _ = _compare(edges, 4, n)
        assert same


def test_simple_graph_may_run_out_of_trees():
    # a star is forced as T_1 when its edges are the cheapest; K_4 minus a star is a triangle plus an isolated centre
    edges = [(0, 1, 0.1), (0, 2, 0.2), (0, 3, 0.3), (1, 2, 0.4), (2, 3, 0.5), (1, 3, 0.6)]
    result = oracle_successive_msts(edges, 2, 4)
    assert result.trees == [frozenset({0, 1, 2})]
    assert result.failed_level == 2
    assert result.partial == frozenset({3, 4})
    assert replay_cascade(edges, 2, 4)[:2] == result.forests()


def test_simple_graph_instance_shape(rng):
    edges = simple_graph_instance(6, "uniform", rng)
    assert len(edges) == 15
    assert [w for _, _, w in edges] == sorted(w for _, _, w in edges)
    with pytest.raises(ValueError):
        simple_graph_instance(6, "normal", rng)
