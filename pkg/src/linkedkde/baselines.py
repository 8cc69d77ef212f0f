"""Baseline estimators the linked model is compared against.

``gaussian_kde_baseline`` is the whole-line Gaussian KDE with no boundary
correction; by design it leaks probability mass outside [0, 1] when samples
sit near a boundary. ``cosine_kde`` solves the heat equation with reflecting
ends (zero endpoint slopes), the cosine-expansion comparison model.
"""

from __future__ import annotations

import math

import numpy as np

from .types import EvaluationGrid, GridDensity, SampleSet, validate_time

_CHUNK = 2048


def gaussian_kde_baseline(samples, t: float, grid: EvaluationGrid | None = None) -> GridDensity:
    """Whole-line Gaussian KDE with bandwidth sqrt(t); no boundary correction."""
    samples = SampleSet.coerce(samples)
    t = validate_time(t)
    if grid is None:
        grid = EvaluationGrid.uniform(1001)
    pts = grid.points
    bw = math.sqrt(t)
    norm = 1.0 / (samples.n * bw * math.sqrt(2.0 * math.pi))

    acc = np.zeros_like(pts)
    vals = samples.values
    for start in range(0, vals.size, _CHUNK):
        block = vals[start : start + _CHUNK]
        z = (pts[None, :] - block[:, None]) / bw
        acc += np.exp(-0.5 * z * z).sum(axis=0)
    return GridDensity(grid=grid, values=norm * acc, r=None, t=t)


def cosine_mode_count(t: float, tol: float = 1e-12) -> int:
    """Modes kept in the cosine expansion: exp(-k^2 pi^2 t / 2) >= tol."""
    return max(int(math.ceil(math.sqrt(2.0 * math.log(1.0 / tol) / (math.pi * math.pi * t)))), 1)


def cosine_kde(
    samples, t: float, grid: EvaluationGrid | None = None, tol: float = 1e-12
) -> GridDensity:
    """Heat-equation estimate with zero endpoint slopes (cosine expansion).

    f_c(x, t) = a_0 + 2 sum_k exp(-k^2 pi^2 t / 2) a_k cos(k pi x) with
    a_k the sample means of cos(k pi X); the estimate always has unit mass.
    """
    samples = SampleSet.coerce(samples)
    t = validate_time(t)
    if grid is None:
        grid = EvaluationGrid.uniform(1001)
    pts = grid.points
    n_modes = cosine_mode_count(t, tol)

    k = np.arange(1, n_modes + 1)
    coef = np.cos(math.pi * k[:, None] * samples.values[None, :]).mean(axis=1)
    decay = np.exp(-0.5 * (k * math.pi) ** 2 * t)
    values = 1.0 + 2.0 * (decay * coef) @ np.cos(math.pi * np.outer(k, pts))
    return GridDensity(grid=grid, values=values, r=None, t=t)
