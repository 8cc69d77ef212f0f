"""Kernel density estimation on [0, 1] with linked boundary conditions.

The estimate solves the heat equation started from the empirical measure,
subject to f(0, t) = r f(1, t) and equal endpoint slopes; sqrt(t) plays the
role of the bandwidth. The package provides the exact kernel/series
evaluators, a binned finite-difference solver, bandwidth selection rules,
a boundary-ratio estimator, and a benchmark harness.
"""

from .bandwidth import (
    BandwidthSelection,
    TargetDensityInfo,
    amise_value,
    boundary_bias_factor,
    estimate_r,
    lscv_bandwidth,
    lscv_objective,
    oracle_amise_bandwidth,
    silverman_bandwidth,
)
from .baselines import cosine_kde, gaussian_kde_baseline
from .binned_solver import (
    BinnedDensity,
    BinnedGrid,
    FourCornersMatrix,
    SpectralData,
    backward_euler_evolve,
    bin_samples,
    build_four_corners,
    ghost_values,
    matrix_exponential_evolve,
    spectral_data,
)
from .experiments import (
    ExperimentRow,
    expected_cosine_density,
    expected_linked_density,
    linked_series_estimate,
    rows_to_csv,
    run_mise_experiment,
)
from .heat_kernels import T_SWITCH, eval_K1, eval_K1_dx
from .linked_kernel import estimate_density, eval_linked_kernel, stationary_density
from .metrics import ErrorReport, error_metrics, rate_fit
from .series_solver import (
    EmpiricalTransforms,
    SeriesConfig,
    empirical_transforms,
    eval_series_solution,
    point_mass_transforms,
    transforms_from_functions,
    truncation_bound,
)
from .targets import SyntheticTarget, beta_mixture, cosine_bump, parabolic, parse_target, sample_synthetic, trimodal
from .types import (
    DegenerateSampleError,
    EvaluationGrid,
    FlatDensityError,
    GridDensity,
    RatioEstimationError,
    SampleSet,
    SummationControl,
    TruncationError,
)

__version__ = "0.1.0"

__all__ = [
    "BandwidthSelection",
    "BinnedDensity",
    "BinnedGrid",
    "DegenerateSampleError",
    "EmpiricalTransforms",
    "ErrorReport",
    "EvaluationGrid",
    "ExperimentRow",
    "FlatDensityError",
    "FourCornersMatrix",
    "GridDensity",
    "RatioEstimationError",
    "SampleSet",
    "SeriesConfig",
    "SpectralData",
    "SummationControl",
    "SyntheticTarget",
    "T_SWITCH",
    "TargetDensityInfo",
    "TruncationError",
    "amise_value",
    "backward_euler_evolve",
    "beta_mixture",
    "bin_samples",
    "boundary_bias_factor",
    "build_four_corners",
    "cosine_bump",
    "cosine_kde",
    "empirical_transforms",
    "error_metrics",
    "estimate_density",
    "estimate_r",
    "eval_K1",
    "eval_K1_dx",
    "eval_linked_kernel",
    "eval_series_solution",
    "expected_cosine_density",
    "expected_linked_density",
    "gaussian_kde_baseline",
    "ghost_values",
    "linked_series_estimate",
    "lscv_bandwidth",
    "lscv_objective",
    "matrix_exponential_evolve",
    "oracle_amise_bandwidth",
    "parabolic",
    "parse_target",
    "point_mass_transforms",
    "rate_fit",
    "rows_to_csv",
    "run_mise_experiment",
    "sample_synthetic",
    "silverman_bandwidth",
    "spectral_data",
    "stationary_density",
    "transforms_from_functions",
    "trimodal",
    "truncation_bound",
]
