"""Synthetic targets and inverse-CDF sampling."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from linkedkde import (
    SyntheticTarget,
    TargetDensityInfo,
    beta_mixture,
    cosine_bump,
    parabolic,
    parse_target,
    sample_synthetic,
    trimodal,
)


@pytest.mark.parametrize(
    "target", [beta_mixture(2.0), beta_mixture(1.3), cosine_bump(0.5), parabolic(), trimodal()]
)
def test_density_normalized_and_cdf_consistent(target):
    # trapezoid mass tolerance allows for the unbounded slope of the
    # beta-mixture density at the left endpoint when 1 < a < 2
    xs = np.linspace(0.0, 1.0, 4001)
    pdf = target.pdf(xs)
    assert pdf.min() >= 0.0
    assert np.trapezoid(pdf, xs) == pytest.approx(1.0, abs=2e-5)
    cdf = target.cdf(xs)
    assert cdf[0] == pytest.approx(0.0, abs=1e-12)
    assert cdf[-1] == pytest.approx(1.0, abs=1e-9)
    # CDF differentiates back to the density; the first cells are excluded
    # because the finite difference degrades where the slope is unbounded
    mid = 0.5 * (xs[1:] + xs[:-1])
    gap = np.abs(np.diff(cdf) / np.diff(xs) - target.pdf(mid))
    assert gap[mid > 0.01].max() < 1e-4
    assert gap.max() < 5e-3


def test_beta_mixture_a2_is_affine():
    target = beta_mixture(2.0)
    xs = np.linspace(0.0, 1.0, 9)
    assert target.pdf(xs) == pytest.approx((2.0 + 2.0 * xs) / 3.0, abs=1e-15)
    assert target.info.r_true == 0.5
    assert target.info.fprime_gap == 0.0
    assert target.info.f_second_norm_sq == 0.0


def test_cosine_bump_info():
    target = cosine_bump(0.5)
    assert target.info.f_second_norm_sq == pytest.approx(2.0 * math.pi**4, rel=1e-14)
    assert target.info.r_true == 1.0
    assert target.info.fprime_gap == 0.0


def test_parabolic_info_against_quadrature():
    target = parabolic()
    norm_sq = quad(lambda x: (24.0 / 11.0) ** 2, 0.0, 1.0)[0]
    assert target.info.f_second_norm_sq == pytest.approx(norm_sq, rel=1e-14)
    assert target.info.r_true == 2.0
    assert target.pdf(np.array(0.0)) == pytest.approx(2.0 * target.pdf(np.array(1.0)))
    h = 1e-7
    fd0 = (target.pdf(np.array(h)) - target.pdf(np.array(0.0))) / h
    fd1 = (target.pdf(np.array(1.0)) - target.pdf(np.array(1.0 - h))) / h
    assert fd0 == pytest.approx(target.info.fprime0, abs=1e-5)
    assert fd1 == pytest.approx(target.info.fprime1, abs=1e-5)


def test_trimodal_has_three_modes_and_unit_ratio():
    target = trimodal()
    xs = np.linspace(0.0, 1.0, 2001)
    pdf = target.pdf(xs)
    interior_peaks = [
        i
        for i in range(1, xs.size - 1)
        if pdf[i] > pdf[i - 1] and pdf[i] > pdf[i + 1] and pdf[i] > 0.5
    ]
    assert len(interior_peaks) == 3
    assert target.pdf(np.array(0.0)) == pytest.approx(target.pdf(np.array(1.0)), rel=1e-9)
    assert target.info.f_second_norm_sq > 0.0


def test_parse_target_round_trip():
    assert parse_target("beta_mixture:a=1.5").name == "beta_mixture:a=1.5"
    assert parse_target("cosine_bump:amp=0.25").name == "cosine_bump:amp=0.25"
    assert parse_target("parabolic").name == "parabolic"
    with pytest.raises(ValueError):
        parse_target("does_not_exist")
    with pytest.raises(ValueError):
        parse_target("beta_mixture:a")


def test_sampling_is_deterministic():
    target = beta_mixture(2.0)
    a = sample_synthetic(target, 100, seed=5)
    b = sample_synthetic(target, 100, seed=5)
    assert a.values == pytest.approx(b.values, abs=0.0)
    c = sample_synthetic(target, 100, seed=6)
    assert not np.array_equal(a.values, c.values)


def test_inverse_cdf_accuracy():
    target = parabolic()
    samples = sample_synthetic(target, 1000, seed=2)
    u = np.random.default_rng(2).random(1000)
    assert np.abs(target.cdf(samples.values) - u).max() < 1e-10


def test_empirical_cdf_within_dkw_band():
    target = beta_mixture(2.0)
    n = 10**5
    samples = sample_synthetic(target, n, seed=9)
    xs = np.linspace(0.0, 1.0, 201)
    ecdf = np.searchsorted(np.sort(samples.values), xs, side="right") / n
    assert np.abs(ecdf - target.cdf(xs)).max() <= 2.0 / math.sqrt(n)


def test_non_monotone_cdf_rejected():
    broken = SyntheticTarget(
        name="broken",
        pdf=lambda x: np.ones_like(x),
        cdf=lambda x: np.sin(3.0 * x),
        info=TargetDensityInfo(f_second_norm_sq=1.0, fprime0=0.0, fprime1=0.0, r_true=1.0),
    )
    with pytest.raises(ValueError):
        sample_synthetic(broken, 10, seed=0)


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        beta_mixture(0.5)
    with pytest.raises(ValueError):
        cosine_bump(1.0)
    with pytest.raises(ValueError):
        sample_synthetic(parabolic(), 0, seed=0)
