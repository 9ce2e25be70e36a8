"""Regression with a normalized Green's-function kernel on the unit interval.

The kernel is the Green's function of -u'' + a^2 u = f with zero
Dirichlet data, rescaled so every section integrates to one.  Sections
of the rescaled kernel serve double duty: probability densities (with
moments and central-interval masses) and covariance entries for
noise-free Bayesian prediction with mean, variance and a 2-sigma band.
"""

from .density import DensityStats, density_stats
from .kernel import (
    KernelParams,
    green_closed,
    green_series,
    l1_norm,
    normalized_green,
    rkhs_inner_product,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    SingularMatrixError,
    integrate,
    solve_linear,
)
from .regression import (
    CovarianceBlocks,
    Prediction,
    QueryGrid,
    SampleSet,
    build_cov_matrix,
    build_joint_blocks,
    discretized_solution,
    predict,
    predictive_covariance,
)

__version__ = "0.1.0"

__all__ = [
    "CovarianceBlocks",
    "DEFAULT_QUADRATURE",
    "DensityStats",
    "KernelParams",
    "Prediction",
    "QuadratureSpec",
    "QueryGrid",
    "SampleSet",
    "SingularMatrixError",
    "build_cov_matrix",
    "build_joint_blocks",
    "density_stats",
    "discretized_solution",
    "green_closed",
    "green_series",
    "integrate",
    "l1_norm",
    "normalized_green",
    "predict",
    "predictive_covariance",
    "rkhs_inner_product",
    "solve_linear",
]
