"""Unit tests for regressors, the spline baseline, evaluation and benchmarks."""

import warnings

import numpy as np
import pytest

from src.models.eim import CoefficientDataset, build_dataset, column_statistics
from src.models.nnet import NetworkSpec, RegressionNetwork, TrainConfig, evaluate_loss
from src.models.surrogate import (
    MismatchReport,
    activation_bytes_per_row,
    benchmark,
    compare_architectures,
    estimate_max_batch,
    evaluate,
    evaluate_exact_coefficients,
    fit_spline_baseline,
    nearest_rank_percentile,
    paired_specs,
    predict_coefficients,
    predict_spline_coefficients,
    predict_standardized,
    train_regressor,
)
from src.utils.errors import DomainError, GridMismatchError, ShapeMismatchError


def _quick_config(epochs=20, seed=0):
    return TrainConfig(epochs=epochs, batch_size=16, lr0=1e-3, schedule_gamma=0.95,
                       schedule_step_epochs=150, seed=seed)


@pytest.fixture(scope='module')
def regressor(dataset, heldout_dataset):
    return train_regressor(dataset, 'S-8', _quick_config(), validation=heldout_dataset)


@pytest.fixture(scope='module')
def spline(dataset):
    return fit_spline_baseline(dataset)


# ============================================================================
# REGRESSOR
# ============================================================================

def test_spiral_spec_layer_chain():
    """Test S-32-64: spiral -> dense(2->32) -> dense(32->64) -> dense(64->2m)."""
    net = RegressionNetwork(NetworkSpec.parse('S-32-64', output_dim=22), 1.0, 2.0)
    assert net.spiral is not None
    assert [(l.in_features, l.out_features) for l in net.dense.linears] == [(2, 32), (32, 64), (64, 22)]
    assert len(net.dense.activations) == 2


def test_plain_spec_layer_chain():
    """Test 128: dense(1->128) -> PReLU -> dense(128->2m), no spiral."""
    net = RegressionNetwork(NetworkSpec.parse('128', output_dim=22), 1.0, 2.0)
    assert net.spiral is None
    assert [(l.in_features, l.out_features) for l in net.dense.linears] == [(1, 128), (128, 22)]
    assert len(net.dense.activations) == 1


def test_spec_width_mismatch(dataset):
    """Test a spec whose output width differs from the dataset is rejected."""
    with pytest.raises(ShapeMismatchError):
        train_regressor(dataset, NetworkSpec.parse('8', output_dim=dataset.width + 2), _quick_config(1))


def test_regressor_records_history(regressor, dataset):
    """Test the regressor keeps its history, statistics and spiral parameters."""
    assert len(regressor.history.train) == 20
    assert all(np.isfinite(regressor.history.val))
    np.testing.assert_array_equal(regressor.mean, dataset.mean)
    assert regressor.q_range == (1.0, 2.0)
    assert set(regressor.spiral_params()) == {'w', 'b', 'alpha', 'beta'}
    assert regressor.label == 'S-8'


def test_prediction_shape(regressor, eim):
    """Test predictions are N x m complex."""
    coefficients = predict_coefficients(regressor, [1.1, 1.5, 1.9])
    assert coefficients.shape == (3, eim.size)
    assert np.iscomplexobj(coefficients)


def test_duplicated_q_gives_identical_rows(regressor):
    """Test repeated q values in one batch predict identical rows."""
    coefficients = predict_coefficients(regressor, [1.3, 1.7, 1.3, 1.3])
    np.testing.assert_array_equal(coefficients[0], coefficients[2])
    np.testing.assert_array_equal(coefficients[0], coefficients[3])


def test_read_only_input_predicts_without_warning(regressor):
    """Test a non-writable q array is copied before it reaches torch."""
    q = np.linspace(1.0, 2.0, 300)
    q.setflags(write=False)
    with warnings.catch_warnings():
        warnings.simplefilter('error', UserWarning)
        coefficients = predict_coefficients(regressor, q)
    np.testing.assert_array_equal(coefficients, predict_coefficients(regressor, q.copy()))


@pytest.mark.parametrize('label', ['S-8', '32-64', 'S-32-64-128'])
def test_batched_matches_sequential(label, regressor, dataset):
    """Test 10^4 q in one batch match one-at-a-time calls bit-exactly."""
    if label != regressor.label:
        regressor = train_regressor(dataset, label, _quick_config(epochs=1))
    q = np.random.default_rng(0).uniform(1.0, 2.0, size=10 ** 4)
    batched = predict_coefficients(regressor, q)
    sequential = np.vstack([predict_coefficients(regressor, [value]) for value in q])
    np.testing.assert_array_equal(batched, sequential)


def test_training_row_error_bounded_by_loss(regressor, dataset):
    """Test the error on one training row is at most N times the mean training loss."""
    loss = evaluate_loss(regressor.network, dataset.q.reshape(-1, 1), dataset.standardized)
    predicted = predict_standardized(regressor, dataset.q[5:6])
    row_error = float(np.sum((predicted[0] - dataset.standardized[5]) ** 2))
    assert row_error <= len(dataset) * loss * (1 + 1e-9)


# ============================================================================
# SPLINE
# ============================================================================

def test_spline_exact_at_knots(spline, dataset):
    """Test the spline reproduces every training row."""
    np.testing.assert_allclose(spline(dataset.q), dataset.a, rtol=0, atol=1e-10)
    assert spline.n_nodes == dataset.n_nodes
    assert spline.q_range == (1.0, 2.0)


def test_spline_reproduces_linear_data():
    """Test linear columns are interpolated exactly between knots."""
    q = np.linspace(1, 2, 9)
    a = np.column_stack([3 * q - 1, -2 * q + 0.5])
    mean, std = column_statistics(a)
    model = fit_spline_baseline(CoefficientDataset(q, a, mean, std))
    between = np.linspace(1, 2, 37)
    expected = np.column_stack([3 * between - 1, -2 * between + 0.5])
    np.testing.assert_allclose(model(between), expected, rtol=0, atol=1e-10)
    assert predict_spline_coefficients(model, [1.5]).shape == (1, 1)


def test_spline_rejects_duplicate_q():
    """Test repeated knots are rejected."""
    q = np.array([1.0, 1.2, 1.2, 1.5, 2.0])
    a = np.ones((5, 2))
    with pytest.raises(DomainError):
        fit_spline_baseline(CoefficientDataset(q, a, np.zeros(2), np.ones(2)))


def test_spline_needs_four_knots():
    """Test fewer than four knots are rejected."""
    q = np.array([1.0, 1.5, 2.0])
    with pytest.raises(DomainError):
        fit_spline_baseline(CoefficientDataset(q, np.ones((3, 2)), np.zeros(2), np.ones(2)))


# ============================================================================
# EVALUATION
# ============================================================================

def test_nearest_rank_percentile():
    """Test nearest-rank percentiles on small samples."""
    assert nearest_rank_percentile(np.arange(1, 21), 95) == 19
    assert nearest_rank_percentile([4, 1, 3, 2], 50) == 2
    assert nearest_rank_percentile([4, 1, 3, 2], 100) == 4
    assert nearest_rank_percentile([7.0], 95) == 7.0
    with pytest.raises(DomainError):
        nearest_rank_percentile([], 95)


def test_exact_coefficients_floor(eim, heldout_set):
    """Test exact node values reproduce held-out waveforms to the interpolation floor."""
    report = evaluate_exact_coefficients(eim, heldout_set)
    assert report.max <= 1e-6
    assert report.min >= 0.0


def test_report_statistics_ordering(spline, heldout_set, chirp, eim):
    """Test max >= p95 >= median >= min >= 0."""
    report = evaluate(spline, heldout_set.q_values, chirp, eim, truth=heldout_set)
    assert report.max >= report.p95 >= report.median >= report.min >= 0.0
    assert report.label == 'spline'
    assert report.n_extrapolated == 0
    assert len(report.rows()) == len(heldout_set)
    assert 'wall_time_per_batch' not in report.to_dict()


def test_report_permutation_invariance(spline, heldout_set, chirp, eim):
    """Test permuting test q leaves the statistics unchanged."""
    report = evaluate(spline, heldout_set.q_values, chirp, eim)
    permuted = np.random.default_rng(7).permutation(heldout_set.q_values)
    other = evaluate(spline, permuted, chirp, eim)
    assert (other.max, other.median, other.p95) == (report.max, report.median, report.p95)


def test_regressor_evaluation(regressor, heldout_set, chirp, eim):
    """Test a trained regressor is evaluated against pre-generated truth."""
    report = evaluate(regressor, heldout_set.q_values, chirp, eim, truth=heldout_set)
    assert report.label == 'S-8'
    assert report.per_sample.shape == (len(heldout_set),)
    assert np.all((report.per_sample >= 0) & (report.per_sample <= 2))


def test_extrapolation_is_flagged(spline, chirp, eim):
    """Test q outside the trained interval warns and is flagged in the report."""
    with pytest.warns(RuntimeWarning):
        report = evaluate(spline, [1.5, 2.5], chirp, eim)
    assert report.extrapolated.tolist() == [False, True]
    assert report.n_extrapolated == 1


def test_truth_for_other_q_rejected(spline, heldout_set, chirp, eim):
    """Test pre-generated truth must match the test q values."""
    with pytest.raises(GridMismatchError):
        evaluate(spline, heldout_set.q_values + 1e-3, chirp, eim, truth=heldout_set)


def test_report_from_samples():
    """Test summary statistics of a hand-made sample."""
    report = MismatchReport.from_samples('x', [1, 2, 3, 4], [0.4, 0.1, 0.3, 0.2], [False] * 4)
    assert report.max == 0.4
    assert report.min == 0.1
    assert report.median == pytest.approx(0.25)
    assert report.p95 == 0.4


# ============================================================================
# BENCHMARK / SWEEP
# ============================================================================

def test_benchmark_rows(regressor):
    """Test one timed row per batch size with positive throughput."""
    result = benchmark(regressor, batch_sizes=[1, 64], repetitions=3)
    assert [row.batch_size for row in result.rows] == [1, 64]
    assert all(row.coefficients_per_second > 0 for row in result.rows)
    assert all(row.repetitions == 3 for row in result.rows)
    assert result.max_batch_estimate > 0
    assert result.to_dict()['label'] == 'S-8'


def test_benchmark_rejects_zero_batch(regressor):
    """Test a batch size of zero is rejected."""
    with pytest.raises(DomainError):
        benchmark(regressor, batch_sizes=[0])


def test_benchmark_throughput_trend(regressor):
    """Test throughput does not drop by more than 20% from one batch size to the next."""
    sizes = [1, 4, 16, 64, 256, 1024]
    rates = [row.coefficients_per_second for row in benchmark(regressor, sizes, repetitions=10).rows]
    for smaller, larger in zip(rates, rates[1:]):
        assert larger >= 0.8 * smaller
    assert rates[-1] > rates[0]


def test_benchmark_repeats_agree(regressor):
    """Test two benchmark runs agree on throughput within a factor of 3."""
    first = benchmark(regressor, [16, 256], repetitions=10)
    second = benchmark(regressor, [16, 256], repetitions=10)
    for a, b in zip(first.rows, second.rows):
        ratio = a.coefficients_per_second / b.coefficients_per_second
        assert 1 / 3 <= ratio <= 3


def test_benchmark_rejects_non_positive_repetitions(regressor):
    """Test zero or negative repetitions are rejected, not replaced by the default."""
    with pytest.raises(DomainError):
        benchmark(regressor, batch_sizes=[8], repetitions=0)
    with pytest.raises(DomainError):
        benchmark(regressor, batch_sizes=[8], repetitions=-2)


def test_activation_and_batch_estimate(regressor):
    """Test the per-row activation size and the budget-derived batch limit."""
    width = regressor.spec.output_dim
    assert activation_bytes_per_row(regressor) == 8 * (1 + 4 + 2 * 8 + width)
    small = estimate_max_batch(regressor, budget_bytes=10 ** 6)
    large = estimate_max_batch(regressor, budget_bytes=10 ** 9)
    assert 0 < small < large
    assert estimate_max_batch(regressor, budget_bytes=1) == 0


def test_paired_specs_order():
    """Test each label yields the plain network and then its spiral variant."""
    labels = [spec.label for spec in paired_specs(['32-64', 'S-16'], 10)]
    assert labels == ['32-64', 'S-32-64', '16', 'S-16']


def test_small_sweep(dataset, heldout_dataset, heldout_set, eim, chirp):
    """Test a one-architecture sweep trains and evaluates both variants."""
    rows = compare_architectures(dataset, heldout_dataset, heldout_set, eim, chirp,
                                 ['8'], _quick_config(epochs=2))
    assert [row.network for row in rows] == ['8', 'S-8']
    for row in rows:
        assert row.max_M >= row.p95_M >= row.median_M >= 0
        assert row.max_batch_estimate > 0
        assert len(row.as_tuple()) == 5


# ============================================================================
# DESK-SCALE REFERENCE RUNS
# ============================================================================

@pytest.fixture(scope='module')
def desk_data(desk_dataset, desk_heldout_sets, desk_eim):
    val, test = desk_heldout_sets
    return desk_dataset, build_dataset(val, desk_eim, reference=desk_dataset), test


def test_desk_exact_coefficients_floor(desk_eim, desk_heldout_sets):
    """Test exact node values of 200 held-out chirps give mismatches of at most 1e-8."""
    _, test = desk_heldout_sets
    report = evaluate_exact_coefficients(desk_eim, test)
    assert report.per_sample.size == 200
    assert report.max <= 1e-8


@pytest.mark.slow
def test_spline_baseline_on_dense_knots(desk_data, chirp, desk_eim):
    """Test the spline on 1000 knots reaches a median mismatch of 1e-6."""
    train, _, test = desk_data
    report = evaluate(fit_spline_baseline(train), test.q_values, chirp, desk_eim, truth=test)
    assert report.median <= 1e-6


@pytest.mark.slow
def test_spiral_improves_paired_architectures(desk_data, chirp, desk_eim):
    """Test the spiral variant matches or beats the plain network for each sweep pair."""
    train, val, test = desk_data
    config = TrainConfig(epochs=500, batch_size=16, lr0=1e-3, schedule_gamma=0.95,
                         schedule_step_epochs=150, seed=0)
    rows = compare_architectures(train, val, test, desk_eim, chirp, ['32-64', '32-64-128'], config)
    by_label = {row.network: row for row in rows}
    for plain in ('32-64', '32-64-128'):
        assert by_label['S-' + plain].median_M <= by_label[plain].median_M
    assert by_label['S-32-64'].model.history.val[-1] < by_label['32-64'].model.history.val[-1]


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
