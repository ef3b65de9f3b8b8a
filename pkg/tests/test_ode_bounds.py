import math

import numpy as np
import pytest

from ode_bounds import BoundsError, build_bounds_table, closed_bounds, conjecture_checks, default_horizon, gamma_bar, solve_g_system


@pytest.fixture(scope="module")
def g_system():
    return solve_g_system(7, dt=1e-3, integrator="rk4")


def test_first_occupancy_is_tanh():
    system = solve_g_system(1, dt=1e-3)
    g1 = system.g[0]
    assert np.max(np.abs(g1.values - np.tanh(g1.times() / 2.0))) <= 5e-3
    assert system.tail_met


def test_initial_conditions_and_ordering(g_system):
    assert all(g.values[0] == 0.0 for g in g_system.g)
    assert g_system.ordering_violations == 0
    for k in range(1, 7):
        assert np.all(g_system.g[k].values <= g_system.g[k - 1].values + 1e-12)
    for g in g_system.g:
        assert g.is_nondecreasing(1e-12)


def test_seventh_occupancy_rises_near_ten(g_system):
    assert 8.0 < g_system.g[6].first_exceedance(0.01) < 12.0


def test_gamma_bar_values(g_system):
    assert g_system.gamma_bar[0] == pytest.approx(2 * math.log(2), abs=1e-3)
    assert g_system.gamma_bar[1] == pytest.approx(4.5542, abs=2e-3)
    assert g_system.gamma_bar[4] == pytest.approx(25.7045, abs=5e-3)
    assert all(0.0 < gap <= 1.0 for gap in g_system.gaps())


def test_gamma_bar_from_recorded_curve(g_system):
    assert gamma_bar(g_system.g[0]) == pytest.approx(g_system.gamma_bar[0], abs=1e-3)


def test_horizon_flag():
    system = solve_g_system(3, dt=1e-2, horizon=2.0)
    assert system.flagged
    assert default_horizon(5) == 60.0
    assert default_horizon(50) == 130.0


def test_unknown_integrator():
    with pytest.raises(ValueError):
        solve_g_system(2, integrator="midpoint")


@pytest.mark.parametrize("k,ell,lower,upper", [(2, 1, 2.0, 5.0), (3, 2, 3.5, 8.0)])
def test_closed_gamma_bounds(k, ell, lower, upper):
    row = closed_bounds(k, ell)
    assert row.gamma_lower == pytest.approx(lower)
    assert row.gamma_upper == pytest.approx(upper)


def test_closed_cumulative_bounds_and_defaults():
    row = closed_bounds(1)
    assert (row.Gamma_lower, row.Gamma_upper) == (1.0, 2.0)
    assert closed_bounds(10).ell == 4
    row = closed_bounds(4, n=10)
    assert row.expected_W_lower == pytest.approx(16 * 0.9)
    assert row.expected_W_upper == pytest.approx(20 * 0.9)
    assert row.gamma_lower_sqrt == pytest.approx(4.0)
    assert row.gamma_upper_sqrt == pytest.approx(12.0)


@pytest.mark.parametrize("ell", [0, 4])
def test_ell_out_of_range(ell):
    with pytest.raises(BoundsError):
        closed_bounds(3, ell)


def test_bounds_rows_are_consistent(g_system):
    table = build_bounds_table(7, g_system.gamma_bar)
    for row in table.rows:
        assert row.is_consistent()
    assert table.row(2).gamma_upper_from_bar == pytest.approx(4.5542 - 1.2020569, abs=2e-3)


def test_conjecture_checks(g_system):
    checks = conjecture_checks(g_system.gamma_bar, [1.202, 3.095])
    assert all(entry["gap_below_one"] for entry in checks)
    assert checks[1]["above_mu2_reference"]
    assert checks[1]["gamma_in_band"]
    assert "gamma" not in checks[2]


def test_plateau_gap_averages_the_upper_levels(g_system):
    gaps = g_system.gaps()
    assert g_system.plateau_gap() == pytest.approx(np.mean(gaps[3:]))
    assert min(gaps[3:]) <= g_system.plateau_gap() <= max(gaps[3:])


@pytest.mark.slow
def test_gaps_stay_below_one_up_to_fifty_levels():
    system = solve_g_system(50, dt=1e-5)
    assert system.tail_met
    gaps = system.gaps()
    assert all(0.0 < gap <= 1.0 for gap in gaps)
    assert system.gamma_bar[4] == pytest.approx(25.7045, abs=5e-3)
    assert system.plateau_gap() == pytest.approx(0.743, abs=0.05)
