"""Sample validation, covariance blocks and noise-free prediction."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import refvals
from greenreg.kernel import KernelParams, green_series, normalized_green
from greenreg.numerics import SingularMatrixError
from greenreg.regression import (
    QueryGrid,
    SampleSet,
    _clamp_variances,
    _solve_data_system,
    build_cov_matrix,
    build_joint_blocks,
    discretized_solution,
    predict,
    predictive_covariance,
)

A1 = KernelParams(a=1.0)
A10 = KernelParams(a=10.0)


@pytest.fixture
def samples():
    return SampleSet(xi=refvals.XI, eta=refvals.ETA)


class TestSampleSet:
    def test_valid(self, samples):
        assert len(samples) == 5
        assert samples.xi.dtype == np.float64

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            SampleSet(xi=[0.3, 0.1], eta=[1.0, 2.0])

    def test_rejects_near_duplicates_naming_both(self):
        with pytest.raises(ValueError, match="0.3"):
            SampleSet(xi=[0.1, 0.3, 0.3 + 1e-10], eta=[1.0, 2.0, 3.0])

    @pytest.mark.parametrize("x", [0.0, 1.0, -0.5, 1.5])
    def test_rejects_abscissae_outside_open_interval(self, x):
        with pytest.raises(ValueError, match="strictly inside"):
            SampleSet(xi=[x], eta=[1.0])

    def test_rejects_length_mismatch_and_empty(self):
        with pytest.raises(ValueError, match="equally long"):
            SampleSet(xi=[0.1, 0.2], eta=[1.0])
        with pytest.raises(ValueError, match="at least one"):
            SampleSet(xi=[], eta=[])

    def test_rejects_nonfinite_ordinates(self):
        with pytest.raises(ValueError, match="finite"):
            SampleSet(xi=[0.5], eta=[np.inf])


class TestQueryGrid:
    def test_uniform_default_is_interior_percent_grid(self):
        grid = QueryGrid.uniform()
        assert len(grid) == 99
        assert grid.x_star[0] == pytest.approx(0.01)
        assert grid.x_star[-1] == pytest.approx(0.99)
        assert np.all(grid.x_star > 0.0) and np.all(grid.x_star < 1.0)

    def test_uniform_coarse(self):
        grid = QueryGrid.uniform(0.25)
        assert_allclose(grid.x_star, [0.25, 0.5, 0.75], rtol=1e-15)

    def test_uniform_non_divisor_step(self):
        grid = QueryGrid.uniform(0.3)
        assert_allclose(grid.x_star, [0.3, 0.6, 0.9], rtol=1e-15)

    @pytest.mark.parametrize("delta", [0.0, -0.1])
    def test_rejects_bad_delta(self, delta):
        with pytest.raises(ValueError, match="delta"):
            QueryGrid.uniform(delta)

    def test_rejects_endpoint_queries(self):
        with pytest.raises(ValueError, match="strictly inside"):
            QueryGrid(x_star=[0.5, 1.0])


class TestCovarianceBlocks:
    def test_data_cov_matches_three_decimal_reference(self, samples):
        assert_allclose(build_cov_matrix(A1, samples), refvals.COV_A1, atol=5e-4)
        assert_allclose(build_cov_matrix(A10, samples), refvals.COV_A10, atol=5e-4)

    def test_data_cov_entries_are_anchored_at_second_argument(self, samples):
        cov = build_cov_matrix(A1, samples)
        assert_allclose(cov[2, 0], refvals.EXACT["h_51_a1"], rtol=1e-13)
        assert_allclose(cov[0, 1], refvals.EXACT["h_13_a1"], rtol=1e-13)
        assert cov[0, 1] != pytest.approx(cov[1, 0], abs=0.1)

    def test_cross_block_anchors_sections_at_data_sites(self, samples):
        grid = QueryGrid(x_star=[0.2, 0.4, 0.6])
        blocks = build_joint_blocks(A1, samples, grid)
        assert blocks.cross_cov.shape == (5, 3)
        assert_allclose(
            blocks.cross_cov[1, 2],
            normalized_green(A1, 0.6, samples.xi[1]),
            rtol=1e-15,
        )
        assert blocks.query_cov.shape == (3, 3)
        assert_allclose(
            blocks.query_cov[0, 1], normalized_green(A1, 0.2, 0.4), rtol=1e-15
        )


class TestPredict:
    @pytest.mark.parametrize("params", [A1, A10], ids=["a1", "a10"])
    def test_interpolates_data_exactly(self, params, samples):
        pred = predict(params, samples, QueryGrid(x_star=samples.xi))
        assert_allclose(pred.mean, samples.eta, atol=1e-12)
        assert np.all(pred.variance <= 1e-12)
        assert np.all(pred.variance >= 0.0)

    def test_frozen_point_prediction(self, samples):
        grid = QueryGrid(x_star=[0.4])
        pred1 = predict(A1, samples, grid)
        assert_allclose(pred1.mean[0], refvals.EXACT["mean04_a1"], rtol=1e-12)
        assert_allclose(pred1.variance[0], refvals.EXACT["var04_a1"], rtol=1e-12)
        pred10 = predict(A10, samples, grid)
        assert_allclose(pred10.mean[0], refvals.EXACT["mean04_a10"], rtol=1e-12)
        assert_allclose(pred10.variance[0], refvals.EXACT["var04_a10"], rtol=1e-12)

    @pytest.mark.parametrize(
        "params, first_key, quad_key",
        [(A1, "first_term_a1", "quad_term_a1"), (A10, "first_term_a10", "quad_term_a10")],
        ids=["a1", "a10"],
    )
    def test_variance_decomposition_terms(self, params, first_key, quad_key, samples):
        # variance = prior term H(x*, x*) minus the data-explained term
        grid = QueryGrid(x_star=[0.4])
        first = normalized_green(params, 0.4, 0.4)
        explained = first - predict(params, samples, grid).variance[0]
        assert_allclose(first, refvals.EXACT[first_key], rtol=1e-12)
        assert_allclose(explained, refvals.EXACT[quad_key], rtol=1e-11)

    def test_band_is_two_sigma(self, samples):
        pred = predict(A1, samples, QueryGrid.uniform(0.1))
        assert_allclose(pred.band_lo, pred.mean - 2.0 * pred.std, rtol=1e-15)
        assert_allclose(pred.band_hi, pred.mean + 2.0 * pred.std, rtol=1e-15)
        assert_allclose(pred.std, np.sqrt(pred.variance), rtol=1e-15)

    def test_default_grid_run_is_clean(self, samples):
        pred = predict(A1, samples, QueryGrid.uniform())
        assert pred.clamped_count == 0
        assert np.all(pred.variance >= 0.0)
        away = np.abs(pred.x_star[:, None] - samples.xi[None, :]).min(axis=1) > 0.05
        assert np.all(pred.variance[away] > 1e-4)

    def test_single_sample(self):
        one = SampleSet(xi=[0.5], eta=[2.0])
        pred = predict(A1, one, QueryGrid(x_star=[0.5]))
        assert_allclose(pred.mean[0], 2.0, atol=1e-12)
        assert pred.variance[0] <= 1e-12


class TestVarianceClamp:
    def test_noise_level_negatives_are_silent(self):
        values, count = _clamp_variances(np.array([-1e-10, 0.3, -1e-12]))
        assert count == 0
        assert_allclose(values, [0.0, 0.3, 0.0])

    def test_large_negatives_are_counted(self):
        values, count = _clamp_variances(np.array([-1e-6, 0.3, -2e-9]))
        assert count == 2
        assert_allclose(values, [0.0, 0.3, 0.0])


class TestPredictiveCovariance:
    def test_diagonal_matches_unclamped_variances(self, samples):
        grid = QueryGrid(x_star=[0.15, 0.4, 0.62, 0.88])
        full = predictive_covariance(A1, samples, grid)
        assert full.shape == (4, 4)
        pred = predict(A1, samples, grid)
        diag = np.diagonal(full)
        assert_allclose(pred.variance, np.where(diag < 0.0, 0.0, diag), atol=1e-12)

    def test_singular_data_matrix_names_abscissa(self, samples):
        bad = build_cov_matrix(A1, samples).copy()
        bad[:, 3] = bad[:, 1]
        with pytest.raises(SingularMatrixError, match="sample abscissa 0.7"):
            _solve_data_system(samples, bad, samples.eta)


class TestDiscretizedSolution:
    def test_boundary_zeros_exact(self, samples):
        assert discretized_solution(A1, samples, 0.01, 0.0) == 0.0
        assert discretized_solution(A1, samples, 0.01, 1.0) == 0.0

    def test_scalar_and_array_forms_agree(self, samples):
        xs = np.linspace(0.0, 1.0, 7)
        arr = discretized_solution(A10, samples, 0.01, xs)
        assert arr.shape == xs.shape
        for i, x in enumerate(xs):
            assert_allclose(discretized_solution(A10, samples, 0.01, x), arr[i], rtol=1e-15)

    def test_linear_in_ordinates(self, samples):
        doubled = SampleSet(xi=samples.xi, eta=2.0 * samples.eta)
        x = np.linspace(0.1, 0.9, 5)
        assert_allclose(
            discretized_solution(A1, doubled, 0.01, x),
            2.0 * discretized_solution(A1, samples, 0.01, x),
            rtol=1e-14,
        )

    def test_matches_series_form_superposition(self, samples):
        # same superposition with the series kernel is an independent oracle
        series_params = KernelParams(a=1.0, series_terms=100_000)
        x = 0.5
        oracle = 0.01 * float(
            green_series(series_params, x, samples.xi) @ samples.eta
        )
        assert abs(discretized_solution(A1, samples, 0.01, x) - oracle) <= 1e-6

    def test_rejects_bad_delta(self, samples):
        with pytest.raises(ValueError, match="delta"):
            discretized_solution(A1, samples, 0.0, 0.5)
