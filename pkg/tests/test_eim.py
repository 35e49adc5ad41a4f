"""Unit tests for empirical interpolation and the coefficient dataset."""

import numpy as np
import pytest

from src.config import CHIRP_REFERENCE_RUN
from src.models.eim import (
    CoefficientDataset,
    build_dataset,
    build_eim,
    column_statistics,
    eim_coefficients,
    eim_interpolate,
    eim_reconstruct,
    eim_reconstruct_rows,
    stack_complex,
    unstack_real,
)
from src.models.rom import ReducedBasis
from src.utils.errors import ShapeMismatchError, SingularNodeMatrixError, ZeroNormError
from src.waveforms import ComplexWaveform, TimeGrid, WaveformSet, row_mismatches


def test_nodes_are_distinct(eim, basis):
    """Test one distinct node per basis element."""
    assert eim.size == basis.size
    assert len(set(eim.node_indices.tolist())) == eim.size


def test_interpolant_exact_at_nodes(eim, train_set):
    """Test the interpolant reproduces a waveform at every node."""
    h = train_set.row(42)
    a = eim_coefficients(h, eim)
    interpolated = eim_interpolate(a, eim)
    np.testing.assert_allclose(interpolated[eim.node_indices], a, rtol=0, atol=1e-10)


def test_basis_vectors_reproduced(eim, basis):
    """Test each basis vector is its own interpolant."""
    for e in basis.basis:
        recon = eim_interpolate(e[eim.node_indices], eim)
        assert np.max(np.abs(recon - e)) <= 1e-9


def test_training_reconstruction_mismatch(eim, train_set, dataset):
    """Test node values alone recover the training waveforms."""
    rows = eim_reconstruct_rows(dataset.complex_coefficients(), eim)
    assert row_mismatches(rows, train_set.waveforms, train_set.grid.dt).max() <= 1e-8


def test_heldout_reconstruction_mismatch(eim, heldout_set):
    """Test held-out waveforms are reconstructed from their node values."""
    rows = eim_reconstruct_rows(heldout_set.waveforms[:, eim.node_indices], eim)
    assert row_mismatches(rows, heldout_set.waveforms, heldout_set.grid.dt).max() <= 1e-6


def test_reconstruct_is_unit_norm(eim, train_set):
    """Test reconstructions are normalized."""
    h = eim_reconstruct(eim_coefficients(train_set.row(3), eim), eim)
    assert abs(np.vdot(h.values, h.values).real * h.grid.dt - 1.0) < 1e-12


def test_zero_coefficients_rejected(eim):
    """Test a zero coefficient vector cannot be reconstructed."""
    with pytest.raises(ZeroNormError):
        eim_reconstruct(np.zeros(eim.size), eim)


def test_wrong_coefficient_length_rejected(eim):
    """Test coefficient vectors must have one entry per node."""
    with pytest.raises(ShapeMismatchError):
        eim_reconstruct(np.ones(eim.size + 1), eim)


def test_condition_number_reported(eim):
    """Test the node matrix is well conditioned and the condition is recorded."""
    assert 1.0 <= eim.condition_number < 1e8


def test_duplicate_basis_rows_are_singular():
    """Test a basis with repeated rows raises SingularNodeMatrixError."""
    grid = TimeGrid(0.0, 31.0, 32)
    row = np.exp(1j * np.linspace(0, 3, 32)) * np.linspace(1, 2, 32)
    row /= np.sqrt(np.vdot(row, row).real * grid.dt)
    basis = ReducedBasis(
        basis=np.stack([row, row]),
        greedy_q=np.array([1.0, 1.5]),
        greedy_indices=np.array([0, 1]),
        greedy_errors=np.array([1.0, 0.0]),
        tol=1e-10,
        grid=grid,
    )
    with pytest.raises(SingularNodeMatrixError):
        build_eim(basis)


def test_stacking_puts_real_parts_first():
    """Test complex columns stack as [Re..., Im...]."""
    coefficients = np.array([[1 + 2j, 3 + 4j]])
    stacked = stack_complex(coefficients)
    np.testing.assert_array_equal(stacked, [[1.0, 3.0, 2.0, 4.0]])
    np.testing.assert_array_equal(unstack_real(stacked), coefficients)


def test_unstack_rejects_odd_width():
    """Test odd widths cannot be unstacked."""
    with pytest.raises(ShapeMismatchError):
        unstack_real(np.ones((2, 3)))


def test_column_statistics_constant_column():
    """Test a constant column gets unit std."""
    values = np.array([[1.0, 5.0], [3.0, 5.0]])
    mean, std = column_statistics(values)
    np.testing.assert_array_equal(mean, [2.0, 5.0])
    np.testing.assert_array_equal(std, [1.0, 1.0])


def test_dataset_shapes_and_standardization(dataset, eim, train_set):
    """Test the dataset is N x 2m and standardizes to zero mean, unit std."""
    assert dataset.a.shape == (len(train_set), 2 * eim.size)
    assert dataset.n_nodes == eim.size
    z = dataset.standardized
    assert np.max(np.abs(z.mean(axis=0))) < 1e-10
    assert np.max(np.abs(z.std(axis=0) - 1.0)) < 1e-10


def test_dataset_destandardize_inverts(dataset):
    """Test destandardize undoes standardize."""
    np.testing.assert_allclose(dataset.destandardize(dataset.standardized), dataset.a, atol=1e-12)


def test_heldout_dataset_reuses_training_statistics(dataset, heldout_dataset):
    """Test validation/test splits use the training mean and std."""
    np.testing.assert_array_equal(heldout_dataset.mean, dataset.mean)
    np.testing.assert_array_equal(heldout_dataset.std, dataset.std)


def test_dataset_is_sorted_by_q(eim, train_set):
    """Test rows come out ordered by q whatever the input order."""
    order = np.arange(len(train_set))[::-1]
    reversed_set = WaveformSet(train_set.q_values[order], train_set.waveforms[order], train_set.grid)
    result = build_dataset(reversed_set, eim)
    assert np.all(np.diff(result.q) > 0)


def test_dataset_rejects_other_length(eim):
    """Test waveforms of a different length are rejected."""
    grid = TimeGrid(0.0, 9.0, 10)
    waveforms = WaveformSet(np.array([1.0]), np.ones((1, 10)), grid)
    with pytest.raises(ShapeMismatchError):
        build_dataset(waveforms, eim)


def test_coefficients_match_node_samples(eim, train_set):
    """Test a_j = h(T_j)."""
    h = ComplexWaveform(train_set.grid, train_set.waveforms[7])
    np.testing.assert_array_equal(eim_coefficients(h, eim), h.values[eim.node_indices])

# ============================================================================
# DESK-SCALE REFERENCE RUN
# ============================================================================

def test_desk_condition_number_recorded(desk_eim, desk_basis):
    """Test cond(V) of the desk basis matches the recorded value to six digits and repeats."""
    assert desk_eim.condition_number == pytest.approx(
        CHIRP_REFERENCE_RUN['condition_number'], rel=5e-7
    )
    assert build_eim(desk_basis).condition_number == desk_eim.condition_number


def test_desk_real_coefficient_zero_crossings(desk_dataset):
    """Test the sign changes of each Re a_j along q match the recorded counts."""
    crossings = desk_dataset.zero_crossings()
    assert crossings == list(CHIRP_REFERENCE_RUN['re_zero_crossings'])
    assert max(crossings) > 1


def test_desk_heldout_reconstruction_floor(desk_eim, desk_heldout_sets):
    """Test exact node values of 200 held-out chirps reconstruct them to 1e-8."""
    _, test = desk_heldout_sets
    rows = eim_reconstruct_rows(test.waveforms[:, desk_eim.node_indices], desk_eim)
    assert len(test) == 200
    assert row_mismatches(rows, test.waveforms, test.grid.dt).max() <= 1e-8


def test_zero_crossings_count_sign_changes():
    """Test crossings are counted on the real columns only."""
    a = np.array([[1.0, -1.0, 5.0, 5.0],
                  [-1.0, -2.0, -5.0, 5.0],
                  [2.0, -3.0, 5.0, -5.0]])
    mean, std = column_statistics(a)
    dataset = CoefficientDataset(np.array([1.0, 1.5, 2.0]), a, mean, std)
    assert dataset.zero_crossings() == [2, 0]



if __name__ == "__main__":
    pytest.main([__file__, '-v'])
