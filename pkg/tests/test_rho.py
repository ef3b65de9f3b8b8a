import math

import numpy as np
import pytest

from config import ZETA3
from rho_numerics import (
    ANCHOR_LEVEL,
    FixedPointNotConverged,
    GridFunction,
    RhoWindowError,
    TypeMeasure,
    align_translate,
    apply_kernel,
    compute_family,
    edge_count_at,
    gamma_from_rho,
    gamma_table,
    iterate_survival,
    mass_check,
    next_rho,
    rho1_closed_form,
    rho1_inverse,
    rho1_value,
    rho_infinity_diagnostics,
    sup_distance,
    survival_fixed_point,
    w_integral,
)


def test_rho1_value_solves_its_equation():
    assert rho1_value(0.5) == 0.0
    assert rho1_value(1.0) == 0.0
    for t in (1.2, 2.0, 5.0):
        rho = rho1_value(t)
        assert rho == pytest.approx(1.0 - math.exp(-t * rho), abs=1e-10)
    assert rho1_value(2.0) == pytest.approx(0.7968, abs=1e-4)


def test_rho1_inverse_round_trip():
    for t in (1.5, 2.0, 4.0):
        assert float(rho1_inverse(rho1_value(t))) == pytest.approx(t, abs=1e-8)


def test_closed_form_needs_the_full_window():
    with pytest.raises(ValueError):
        rho1_closed_form(dt=0.01, window=5.0)


def test_grid_function_basics():
    g = GridFunction(t0=1.0, dt=0.5, values=[0.0, 0.5, 1.0])
    assert g.t_end == 2.0
    assert g.value_at(0.0) == 0.0
    assert g.value_at(1.25) == pytest.approx(0.25)
    assert g.value_at(5.0) == 1.0
    assert g.crossing_time(0.75) == pytest.approx(1.75)
    assert g.first_exceedance(0.4) == 1.5
    assert g.crossing_time(2.0) is None
    assert sup_distance(g, g.shifted(0.5)) == pytest.approx(0.5)


def test_kernel_of_an_atom():
    mu = GridFunction.step_at_zero(0.1, 2.0)
    measure = TypeMeasure.from_grid(mu, 0.0, 0.1, len(mu))
    f = np.ones(measure.active_cells(1.5))
    Tf = apply_kernel(1.5, measure, f)
    # all mass at 0: (T f)(x) = (t - x) f(0) for x < t
    assert Tf[0] == pytest.approx(1.5)
    assert Tf[5] == pytest.approx(1.0)


def test_subcritical_profile_is_exactly_zero():
    mu = GridFunction.step_at_zero(0.01, 10.0)
    profile = survival_fixed_point(0.8, mu)
    assert np.all(profile.values == 0.0)


def test_supercritical_profile_at_the_atom_is_rho1():
    mu = GridFunction.step_at_zero(0.01, 10.0)
    profile = survival_fixed_point(2.0, mu)
    assert profile.values[0] == pytest.approx(rho1_value(2.0), abs=1e-6)


def test_iteration_budget_exhaustion_keeps_the_last_iterate():
    mu = GridFunction.step_at_zero(0.01, 10.0)
    measure = TypeMeasure.from_grid(mu, 0.0, 0.01, len(mu))
    with pytest.raises(FixedPointNotConverged) as excinfo:
        iterate_survival(1.001, measure, np.ones(200), tol=1e-14, max_iter=3)
    assert excinfo.value.iterations == 3
    assert excinfo.value.last is not None


def test_fixed_point_route_recovers_zeta3():
    step = GridFunction.step_at_zero(0.01, 10.0)
    rho1, xi1 = next_rho(step, 0.01, 10.0, 0.0)
    assert sup_distance(rho1, rho1_closed_form(0.01, 10.0)) < 1e-4
    assert xi1 == pytest.approx(1.0, abs=0.02)
    assert gamma_from_rho(step, rho1).value == pytest.approx(1.2021, abs=5e-3)


def test_closed_form_gamma_and_mass(rho1):
    assert w_integral(rho1).value == pytest.approx(ZETA3, abs=5e-3)
    assert not w_integral(rho1).approximate
    assert mass_check(rho1, 1) == pytest.approx(1.0, abs=0.02)


def test_family_levels(rho_family):
    assert rho_family.translation == [0.0, 2.0, 4.0]
    for k in (1, 2, 3):
        rho = rho_family.level(k)
        assert rho.within_unit_interval(1e-9)
        assert rho.is_nondecreasing(1e-6)
        assert mass_check(rho, k) == pytest.approx(k, abs=0.02)


def test_family_gamma_values(rho_family):
    gammas = gamma_table(rho_family)
    assert gammas[0] == pytest.approx(1.202, abs=0.01)
    assert gammas[1] == pytest.approx(3.095, abs=0.01)
    assert gammas[2] == pytest.approx(5.057, abs=0.03)


def test_domination_and_threshold_gaps(rho_family):
    for k in (2, 3):
        upper = rho_family.level(k - 1)
        lower = rho_family.level(k)
        t = lower.times()
        inside = t <= upper.t_end
        assert np.all(lower.values[inside] <= upper.value_at(t[inside]) + 1e-6)
        assert rho_family.xi_hat[k - 1] >= rho_family.xi_hat[k - 2] + 1.0 - 0.02
    assert rho_family.xi_hat[1] == pytest.approx(2.695, abs=0.02)


def test_edge_count_limit_of_first_level():
    step = GridFunction.step_at_zero(0.01, 10.0)
    assert edge_count_at(step, 3.0) == pytest.approx(1.5)
    assert edge_count_at(step, 12.0) == pytest.approx(6.0)


def test_alignment(rho_family):
    aligned = align_translate(rho_family.level(2))
    assert aligned.value_at(4.0) == pytest.approx(ANCHOR_LEVEL, abs=1e-9)
    rows = rho_infinity_diagnostics(rho_family)
    assert [k for k, _, _ in rows] == [2, 3]
    assert all(0.0 <= distance < 0.5 for _, _, distance in rows)
    assert rows[1][2] < rows[0][2]
    with pytest.raises(RhoWindowError):
        align_translate(GridFunction(t0=0.0, dt=0.1, values=[0.0, 0.1, 0.2]))


def test_window_that_starts_too_late_is_rejected(rho1):
    with pytest.raises(RhoWindowError):
        next_rho(rho1, 0.01, 10.0, 3.0)


def test_survival_grows_with_time(rho1):
    for t in (3.0, 4.0, 6.0):
        now = survival_fixed_point(t, rho1)
        later = survival_fixed_point(t + 0.01, rho1)
        m = min(len(now), len(later))
        assert np.all(later.values[:m] >= now.values[:m] - 1e-7)
        assert later.values[0] > now.values[0]


def test_profile_is_a_fixed_point_and_a_stable_start(rho1):
    t = 5.0
    measure = TypeMeasure.from_grid(rho1, rho1.t0, rho1.dt, len(rho1))
    profile, _ = iterate_survival(t, measure, np.ones(len(rho1)), tol=1e-11, max_iter=5000)
    image = -np.expm1(-apply_kernel(t, measure, profile))
    assert np.max(np.abs(profile - image)) <= 1e-8
    assert profile[0] > 0.5

    again, iterations = iterate_survival(t, measure, profile, tol=1e-9)
    assert iterations == 1
    assert np.max(np.abs(again - profile)) <= 1e-9


@pytest.mark.slow
def test_analytic_gamma_table_matches_long_simulations():
    # sample means of 100 runs at n = 100000
    simulated = [1.2026, 3.0913, 5.0469, 7.0299, 9.0159]
    wide = gamma_table(compute_family(5, dt=0.01, window=18.0))
    for k in range(5):
        assert wide[k] == pytest.approx(simulated[k], abs=5e-3)

    narrower = gamma_table(compute_family(5, dt=0.01, window=14.0))
    assert np.max(np.abs(narrower - wide)) <= 5e-3
    finer = gamma_table(compute_family(3, dt=0.005, window=18.0))
    assert np.max(np.abs(finer - wide[:3])) <= 3e-3


@pytest.mark.slow
def test_aligned_curves_approach_a_common_limit():
    family = compute_family(6, dt=0.01, window=10.0)
    distances = [distance for _, _, distance in rho_infinity_diagnostics(family)]
    assert len(distances) == 5
    assert all(b < a for a, b in zip(distances, distances[1:]))
    assert distances[-1] < distances[0] / 10
