"""Interpolating Bayesian regression with the normalized kernel.

The observed ordinates are modeled as jointly Gaussian with covariances
given by normalized kernel evaluations, and prediction conditions the
query values on the data.  No noise term: the posterior mean passes
through every sample exactly and the posterior variance vanishes there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernel import KernelParams, green_closed, normalized_green
from .numerics import SingularMatrixError, solve_linear

# abscissae closer than this make the covariance matrix numerically singular
MIN_ABSCISSA_GAP = 1e-9

# negative predictive variances no worse than this are rounding noise and
# are zeroed silently; anything worse is zeroed too but counted
VARIANCE_CLAMP_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Observed data: abscissae ``xi`` with ordinates ``eta``.

    Abscissae must be finite, strictly increasing, strictly inside (0, 1)
    and pairwise separated by at least ``MIN_ABSCISSA_GAP``.
    """

    xi: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        xi = np.atleast_1d(np.asarray(self.xi, dtype=float))
        eta = np.atleast_1d(np.asarray(self.eta, dtype=float))
        if xi.ndim != 1 or eta.ndim != 1 or xi.size != eta.size:
            raise ValueError("xi and eta must be one-dimensional and equally long")
        if xi.size == 0:
            raise ValueError("at least one sample is required")
        if not np.all(np.isfinite(xi)) or np.any(xi <= 0.0) or np.any(xi >= 1.0):
            raise ValueError("sample abscissae must lie strictly inside (0, 1)")
        gaps = np.diff(xi)
        if np.any(gaps <= 0.0):
            raise ValueError("sample abscissae must be strictly increasing")
        if np.any(gaps < MIN_ABSCISSA_GAP):
            k = int(np.flatnonzero(gaps < MIN_ABSCISSA_GAP)[0])
            raise ValueError(
                f"sample abscissae {xi[k]!r} and {xi[k + 1]!r} are closer than"
                f" {MIN_ABSCISSA_GAP:g}; the covariance matrix would be singular"
            )
        if not np.all(np.isfinite(eta)):
            raise ValueError("sample ordinates must be finite")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eta", eta)

    def __len__(self) -> int:
        return self.xi.size


@dataclass(frozen=True, eq=False)
class QueryGrid:
    """Query abscissae, all strictly inside (0, 1)."""

    x_star: np.ndarray
    delta: float = 0.01

    def __post_init__(self):
        x_star = np.atleast_1d(np.asarray(self.x_star, dtype=float))
        if x_star.ndim != 1 or x_star.size == 0:
            raise ValueError("at least one query abscissa is required")
        if not np.all(np.isfinite(x_star)) or np.any(x_star <= 0.0) or np.any(x_star >= 1.0):
            raise ValueError("query abscissae must lie strictly inside (0, 1)")
        if not self.delta > 0.0:
            raise ValueError(f"delta must be positive, got {self.delta!r}")
        object.__setattr__(self, "x_star", x_star)

    @classmethod
    def uniform(cls, delta: float = 0.01) -> "QueryGrid":
        """Interior grid i * delta for i = 1 .. ceil(1/delta) - 1.

        Endpoints are excluded: the normalized kernel is undefined there.
        """
        if not delta > 0.0:
            raise ValueError(f"delta must be positive, got {delta!r}")
        m = math.ceil(1.0 / delta)
        if m < 2:
            raise ValueError(f"delta {delta!r} leaves no interior grid points")
        return cls(x_star=np.arange(1, m) * delta, delta=delta)

    def __len__(self) -> int:
        return self.x_star.size


@dataclass(frozen=True, eq=False)
class CovarianceBlocks:
    """The three covariance blocks of the joint (data, query) model.

    data_cov : (N, N), entry (i, j) = H(xi_i, xi_j)
    cross_cov : (N, M), entry (i, j) = H(x*_j, xi_i)
    query_cov : (M, M), entry (i, j) = H(x*_i, x*_j)
    """

    data_cov: np.ndarray
    cross_cov: np.ndarray
    query_cov: np.ndarray


@dataclass(frozen=True, eq=False)
class Prediction:
    """Predictive summary at the query abscissae.

    ``band_lo``/``band_hi`` bracket mean -+ 2 std; ``clamped_count`` says
    how many variances were negative beyond rounding noise before being
    clamped to zero.
    """

    x_star: np.ndarray
    mean: np.ndarray
    variance: np.ndarray
    std: np.ndarray
    band_lo: np.ndarray
    band_hi: np.ndarray
    clamped_count: int


def build_cov_matrix(params: KernelParams, samples: SampleSet) -> np.ndarray:
    """Data covariance matrix with entry (i, j) = H(xi_i, xi_j).

    Not symmetric in general: the normalization acts on the second
    argument only.
    """
    return normalized_green(params, samples.xi[:, None], samples.xi[None, :])


def build_joint_blocks(
    params: KernelParams, samples: SampleSet, grid: QueryGrid
) -> CovarianceBlocks:
    """Covariance blocks coupling the data abscissae with the query grid.

    The cross block anchors the kernel section at the data site:
    ``cross_cov[i, j] = H(x*_j, xi_i)``, so each row i is the impulse
    response of data site i sampled along the query grid.  The predictive
    mean then superposes those per-site responses, which is what makes it
    reproduce the data exactly wherever a query hits a sample abscissa.
    """
    return CovarianceBlocks(
        data_cov=build_cov_matrix(params, samples),
        cross_cov=normalized_green(params, grid.x_star[None, :], samples.xi[:, None]),
        query_cov=normalized_green(params, grid.x_star[:, None], grid.x_star[None, :]),
    )


def _clamp_variances(raw: np.ndarray) -> tuple[np.ndarray, int]:
    """Zero out negative variances; count those beyond rounding noise."""
    clamped = int(np.count_nonzero(raw < -VARIANCE_CLAMP_TOLERANCE))
    return np.where(raw < 0.0, 0.0, raw), clamped


def _solve_data_system(samples: SampleSet, data_cov: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return solve_linear(data_cov, rhs)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            exc.pivot_index,
            exc.pivot,
            detail=f"covariance column of sample abscissa {float(samples.xi[exc.pivot_index])!r}",
        ) from exc


def predict(params: KernelParams, samples: SampleSet, grid: QueryGrid) -> Prediction:
    """Predictive mean, variance and 2-sigma band on the query grid.

    mean = cross_cov^T data_cov^{-1} eta, and per-query variance
    query_cov[j, j] - cross_cov[:, j]^T data_cov^{-1} cross_cov[:, j].
    Both go through the pivoted LU solver; the matrix inverse is never
    formed.  Because the covariance matrix is asymmetric the variances
    can come out a hair negative, see ``VARIANCE_CLAMP_TOLERANCE``.
    """
    blocks = build_joint_blocks(params, samples, grid)
    weights = _solve_data_system(samples, blocks.data_cov, samples.eta)
    mean = blocks.cross_cov.T @ weights
    solved_cross = _solve_data_system(samples, blocks.data_cov, blocks.cross_cov)
    raw_variance = np.diagonal(blocks.query_cov) - np.einsum(
        "nm,nm->m", blocks.cross_cov, solved_cross
    )
    variance, clamped_count = _clamp_variances(raw_variance)
    std = np.sqrt(variance)
    return Prediction(
        x_star=grid.x_star,
        mean=mean,
        variance=variance,
        std=std,
        band_lo=mean - 2.0 * std,
        band_hi=mean + 2.0 * std,
        clamped_count=clamped_count,
    )


def predictive_covariance(
    params: KernelParams, samples: SampleSet, grid: QueryGrid
) -> np.ndarray:
    """Full M x M predictive covariance, diagonal unclamped.

    query_cov - cross_cov^T data_cov^{-1} cross_cov; its diagonal matches
    the raw (pre-clamp) variances of :func:`predict`.
    """
    blocks = build_joint_blocks(params, samples, grid)
    solved_cross = _solve_data_system(samples, blocks.data_cov, blocks.cross_cov)
    return blocks.query_cov - blocks.cross_cov.T @ solved_cross


def discretized_solution(params: KernelParams, samples: SampleSet, delta: float, x):
    """Superposed impulse responses delta * sum_i G(x, xi_i) eta_i.

    Riemann-sum surrogate for the source integral of G against a forcing
    term sampled by the ordinates on a grid of step ``delta``.  Inherits
    the boundary zeros of G.  ``x`` may be a scalar or an array anywhere
    in [0, 1].
    """
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    xv = np.asarray(x, dtype=float)
    g = green_closed(params, xv[..., None], samples.xi)
    out = delta * (g @ samples.eta)
    return out if np.ndim(x) else float(out)
