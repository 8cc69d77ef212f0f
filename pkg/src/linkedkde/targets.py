"""Synthetic target densities on [0, 1] and inverse-CDF sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import betainc
from scipy.stats import beta as beta_dist

from .bandwidth import TargetDensityInfo
from .types import SampleSet

_BISECTION_STEPS = 48  # interval width 2^-48 < 1e-12 after the loop
_MONOTONE_PROBE = 1001


@dataclass(frozen=True)
class SyntheticTarget:
    """Analytic density/CDF pair with the facts the oracle rules need."""

    name: str
    pdf: Callable[[np.ndarray], np.ndarray]
    cdf: Callable[[np.ndarray], np.ndarray]
    info: TargetDensityInfo


def beta_mixture(a: float) -> SyntheticTarget:
    """Mixture (b(1,2;x) + 2 b(a,1;x)) / 3 of Beta densities, a >= 1.

    b(1,2;x) = 2(1-x) and b(a,1;x) = a x^{a-1}; the parameter a controls the
    smoothness near x = 0. At a = 2 the density is the straight line
    (2 + 2x)/3 with boundary ratio 1/2 and matching derivatives.
    """
    a = float(a)
    if a < 1.0:
        raise ValueError("shape parameter a must be >= 1")

    def pdf(x):
        x = np.asarray(x, dtype=float)
        return (2.0 * (1.0 - x) + 2.0 * a * x ** (a - 1.0)) / 3.0

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return (2.0 * x - x * x + 2.0 * x ** a) / 3.0

    # f'(x) = (-2 + 2a(a-1) x^{a-2})/3; the x^{a-2} factor at x = 0 is 0 for
    # a > 2, 1 at a = 2, and divergent in between (the a = 1 term is constant).
    if a == 1.0 or a > 2.0:
        fp0 = -2.0 / 3.0
    elif a == 2.0:
        fp0 = 2.0 / 3.0
    else:
        fp0 = math.inf
    fp1 = (-2.0 + 2.0 * a * (a - 1.0)) / 3.0
    if a in (1.0, 2.0):
        curvature = 0.0
    elif a > 2.5:
        curvature = (2.0 * a * (a - 1.0) * (a - 2.0) / 3.0) ** 2 / (2.0 * a - 5.0)
    else:
        curvature = math.inf
    r_true = 2.0 if a == 1.0 else 1.0 / a
    info = TargetDensityInfo(
        f_second_norm_sq=curvature, fprime0=fp0, fprime1=fp1, r_true=r_true
    )
    return SyntheticTarget(name=f"beta_mixture:a={a:g}", pdf=pdf, cdf=cdf, info=info)


def cosine_bump(amplitude: float) -> SyntheticTarget:
    """Density 1 + amplitude * cos(2 pi x): periodic, matching derivatives, r = 1."""
    amp = float(amplitude)
    if not (0.0 <= amp < 1.0):
        raise ValueError("amplitude must lie in [0, 1) for positivity")

    def pdf(x):
        x = np.asarray(x, dtype=float)
        return 1.0 + amp * np.cos(2.0 * math.pi * x)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return x + amp * np.sin(2.0 * math.pi * x) / (2.0 * math.pi)

    info = TargetDensityInfo(
        f_second_norm_sq=8.0 * math.pi ** 4 * amp * amp,
        fprime0=0.0,
        fprime1=0.0,
        r_true=1.0,
    )
    return SyntheticTarget(name=f"cosine_bump:amp={amp:g}", pdf=pdf, cdf=cdf, info=info)


def parabolic() -> SyntheticTarget:
    """Density 6/11 (-2x^2 + x + 2): boundary ratio 2, non-matching derivatives."""

    def pdf(x):
        x = np.asarray(x, dtype=float)
        return (6.0 / 11.0) * (-2.0 * x * x + x + 2.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return (6.0 / 11.0) * (-2.0 * x ** 3 / 3.0 + x * x / 2.0 + 2.0 * x)

    info = TargetDensityInfo(
        f_second_norm_sq=(24.0 / 11.0) ** 2,
        fprime0=6.0 / 11.0,
        fprime1=-18.0 / 11.0,
        r_true=2.0,
    )
    return SyntheticTarget(name="parabolic", pdf=pdf, cdf=cdf, info=info)


_TRIMODAL_WEIGHTS = (0.1, 0.3, 0.3, 0.3)
_TRIMODAL_SHAPES = ((20.0, 50.0), (45.0, 45.0), (50.0, 20.0))


def trimodal() -> SyntheticTarget:
    """Three Beta bumps over a thin uniform floor; modes near 0.28, 0.5, 0.72.

    A custom-coefficient stand-in for a trimodal shape: the uniform floor
    keeps the endpoint values positive and equal (r = 1), and every bump
    vanishes to second order at the boundary.
    """

    def pdf(x):
        x = np.asarray(x, dtype=float)
        out = _TRIMODAL_WEIGHTS[0] * np.ones_like(x)
        for w, (al, be) in zip(_TRIMODAL_WEIGHTS[1:], _TRIMODAL_SHAPES):
            out = out + w * beta_dist.pdf(x, al, be)
        return out

    def cdf(x):
        x = np.asarray(x, dtype=float)
        out = _TRIMODAL_WEIGHTS[0] * x
        for w, (al, be) in zip(_TRIMODAL_WEIGHTS[1:], _TRIMODAL_SHAPES):
            out = out + w * betainc(al, be, x)
        return out

    def second_derivative(x):
        out = 0.0
        for w, (al, be) in zip(_TRIMODAL_WEIGHTS[1:], _TRIMODAL_SHAPES):
            p = beta_dist.pdf(x, al, be)
            lp = (al - 1.0) / x - (be - 1.0) / (1.0 - x)
            lpp = -(al - 1.0) / x**2 - (be - 1.0) / (1.0 - x) ** 2
            out += w * p * (lp * lp + lpp)
        return out

    curvature = quad(lambda x: second_derivative(x) ** 2, 0.0, 1.0, limit=200)[0]
    info = TargetDensityInfo(
        f_second_norm_sq=curvature, fprime0=0.0, fprime1=0.0, r_true=1.0
    )
    return SyntheticTarget(name="trimodal", pdf=pdf, cdf=cdf, info=info)


def parse_target(spec: str) -> SyntheticTarget:
    """Parse CLI target descriptions like ``beta_mixture:a=2`` or ``parabolic``."""
    kind, _, args = spec.partition(":")
    params = {}
    if args:
        for item in args.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"malformed target parameter {item!r}")
            params[key.strip()] = float(value)
    if kind == "beta_mixture":
        return beta_mixture(params.pop("a", 2.0))
    if kind == "cosine_bump":
        return cosine_bump(params.pop("amp", 0.5))
    if kind == "parabolic":
        return parabolic()
    if kind == "trimodal":
        return trimodal()
    raise ValueError(f"unknown target kind {kind!r}")


def sample_synthetic(target: SyntheticTarget, n: int, seed: int) -> SampleSet:
    """Draw n samples by inverse-CDF bisection, deterministic for a given seed.

    The CDF is bisected to an interval of width below 1e-12. A probe grid
    guards against a non-monotone CDF evaluator.
    """
    if n < 1:
        raise ValueError("sample size must be positive")
    probe = target.cdf(np.linspace(0.0, 1.0, _MONOTONE_PROBE))
    if np.any(np.diff(probe) < -1e-12) or abs(probe[0]) > 1e-9 or abs(probe[-1] - 1.0) > 1e-9:
        raise ValueError(f"target {target.name!r} does not supply a monotone unit CDF")

    u = np.random.default_rng(seed).random(n)
    lo = np.zeros(n)
    hi = np.ones(n)
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = target.cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return SampleSet(0.5 * (lo + hi))
