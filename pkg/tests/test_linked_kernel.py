"""Linked-boundary kernel, density estimate, and stationary profile."""

import numpy as np
import pytest

from linkedkde import (
    EvaluationGrid,
    SampleSet,
    SeriesConfig,
    SummationControl,
    estimate_density,
    eval_K1,
    eval_linked_kernel,
    eval_series_solution,
    point_mass_transforms,
    stationary_density,
    truncation_bound,
)

RATIOS = [0.0, 0.5, 1.0, 2.0, 10.0]


def test_reduces_to_periodic_kernel_at_unit_ratio():
    assert eval_linked_kernel(1.0, 0.3, 0.7, 0.05) == pytest.approx(
        eval_K1(-0.4, 0.05), abs=1e-14
    )


def test_left_boundary_closed_form():
    # K(r; 0, y, t) = 2r/(1+r) K1(y, t)
    assert eval_linked_kernel(2.0, 0.0, 0.4, 0.05) == pytest.approx(
        (4.0 / 3.0) * eval_K1(0.4, 0.05), abs=1e-13
    )


def test_kernel_column_has_unit_mass():
    xs = np.linspace(0.0, 1.0, 4001)
    mass = np.trapezoid(eval_linked_kernel(2.0, xs, 0.37, 0.05), xs)
    assert mass == pytest.approx(1.0, abs=1e-8)


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        eval_linked_kernel(-0.5, 0.3, 0.4, 0.05)
    with pytest.raises(ValueError):
        eval_linked_kernel(1.0, 0.3, 0.4, -0.05)
    with pytest.raises(ValueError):
        eval_linked_kernel(1.0, 1.3, 0.4, 0.05)


def test_single_sample_periodic_estimate_is_shifted_kernel():
    grid = EvaluationGrid.uniform(1001)
    est = estimate_density([0.5], 1.0, 0.05, grid)
    assert est.values == pytest.approx(eval_K1(grid.points - 0.5, 0.05), abs=1e-14)


def test_estimate_boundary_ratio_holds():
    rng = np.random.default_rng(11)
    est = estimate_density(rng.random(40), 2.0, 0.01)
    assert est.values[0] == pytest.approx(2.0 * est.values[-1], rel=1e-10)


def test_estimate_matches_series_oracle_for_point_mass():
    ctl = SummationControl(tol=1e-12)
    tr = point_mass_transforms(0.5, truncation_bound(0.02, ctl.tol))
    grid = EvaluationGrid.uniform(101)
    series = eval_series_solution(tr, SeriesConfig(r=2.0, truncation=ctl), 0.02, grid.points)
    est = estimate_density([0.5], 2.0, 0.02, grid)
    assert np.abs(est.values - series).max() < 1e-9


def test_empty_sample_rejected():
    with pytest.raises(ValueError):
        estimate_density([], 1.0, 0.05)


@pytest.mark.parametrize("r", RATIOS)
def test_mass_positivity_boundary_for_random_samples(r):
    rng = np.random.default_rng(hash(r) % 2**32)
    grid = EvaluationGrid.uniform(2001)
    for t in (1e-3, 0.03, 1.0):
        n = int(rng.integers(1, 501))
        est = estimate_density(rng.random(n), r, t, grid)
        assert abs(est.mass() - 1.0) <= 1e-5
        assert est.values.min() >= -1e-12
        assert abs(est.boundary_residual()) <= 1e-10 * np.abs(est.values).max()


def test_max_principle_bounds_for_compatible_data():
    # f0 = 6/11 (-2x^2 + x + 2) is continuous with f0(0) = 2 f0(1); its
    # evolution stays inside the linked-boundary comparison bounds.
    r = 2.0
    lo_factor = min(2.0 * r / (1.0 + r), 2.0 / (1.0 + r))
    hi_factor = max(2.0 * r / (1.0 + r), 2.0 / (1.0 + r))
    a = 6.0 / 11.0
    b = (6.0 / 11.0) * 2.125  # maximum of f0, attained at x = 1/4

    def c0(k):
        out = np.ones_like(k)
        out[1:] = -24.0 / (11.0 * k[1:] ** 2)
        return out

    def s0(k):
        out = np.zeros_like(k)
        out[1:] = 6.0 / (11.0 * k[1:])
        return out

    def s1(k):
        out = np.zeros_like(k)
        out[1:] = -6.0 / (11.0 * k[1:]) - 72.0 / (11.0 * k[1:] ** 3)
        return out

    from linkedkde import transforms_from_functions

    ctl = SummationControl(tol=1e-12)
    xs = np.linspace(0.0, 1.0, 501)
    for t in (1e-3, 0.01, 0.1, 1.0, 10.0):
        tr = transforms_from_functions(c0, s0, s1, truncation_bound(t, ctl.tol))
        vals = eval_series_solution(tr, SeriesConfig(r=r, truncation=ctl), t, xs)
        assert vals.min() >= lo_factor * a - 1e-9
        assert vals.max() <= hi_factor * b + 1e-9


@pytest.mark.parametrize("r", [0.5, 2.0])
def test_oversmoothing_limit_is_affine_stationary(r):
    rng = np.random.default_rng(5)
    est = estimate_density(rng.random(64), r, 50.0)
    intercept, slope = stationary_density(r, 1.0)
    stationary = intercept + slope * est.grid.points
    assert np.abs(est.values - stationary).max() <= 1e-10


def test_stationary_density_examples():
    assert stationary_density(1.0, 1.0) == pytest.approx((1.0, 0.0))
    assert stationary_density(2.0, 1.0) == pytest.approx((4.0 / 3.0, -2.0 / 3.0))
    assert stationary_density(0.0, 1.0) == pytest.approx((0.0, 2.0))


def test_stationary_density_integrates_to_mass():
    for r in RATIOS:
        intercept, slope = stationary_density(r, 0.7)
        assert intercept + slope / 2.0 == pytest.approx(0.7, abs=1e-14)
        # endpoint ratio
        assert intercept == pytest.approx(r * (intercept + slope), abs=1e-12)


def test_samples_at_exact_endpoints_accepted():
    est = estimate_density([0.0, 1.0, 0.5], 2.0, 0.05)
    assert abs(est.mass() - 1.0) <= 1e-6


def test_sample_set_validation():
    with pytest.raises(ValueError):
        SampleSet(np.array([0.2, 1.4]))
    with pytest.raises(ValueError):
        SampleSet(np.array([-0.1]))
    s = SampleSet.coerce([0.1, 0.9])
    assert s.n == 2
