import pytest

from utils.stats import AggregateStats, mean_stderr


def _payload(values, completed):
    return {
        "levels": [
            {"k": k + 1, "gamma_hat": v, "completed": c, "completion_time": None}
            for k, (v, c) in enumerate(zip(values, completed))
        ]
    }


def test_single_sample_has_no_stderr():
    assert mean_stderr([1.2]) == (1.2, None)
    assert mean_stderr([]) == (None, None)


def test_mean_and_stderr():
    mean, err = mean_stderr([1.0, 2.0, 3.0])
    assert mean == pytest.approx(2.0)
    assert err == pytest.approx(1.0 / 3 ** 0.5)


def test_censored_runs_are_excluded_and_counted():
    payloads = [
        _payload([1.1, 3.0], [True, True]),
        _payload([1.3, 2.0], [True, False]),
        _payload([1.2, 3.2], [True, True]),
    ]
    stats = AggregateStats.from_payloads(2, payloads, failed_seeds=1)
    assert stats.means[0] == pytest.approx(1.2)
    assert stats.means[1] == pytest.approx(3.1)
    assert stats.completed == [3, 2]
    assert stats.censored == [0, 1]
    assert stats.gamma_minus_2km1() == [pytest.approx(0.2), pytest.approx(0.1)]
    assert stats.to_dict()["failed_seeds"] == 1
    assert all(err >= 0 for err in stats.stderrs)
