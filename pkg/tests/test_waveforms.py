"""Unit tests for waveform generation, inner products and training sets."""

import math

import numpy as np
import pytest

from src.utils.errors import DomainError, GridMismatchError, ZeroNormError
from src.waveforms import (
    BaseWaveformModel,
    ComplexWaveform,
    NewtonianChirpModel,
    TimeGrid,
    build_training_set,
    default_grid,
    equispaced_q,
    generate_waveform,
    inner_product,
    mass_factor,
    mismatch,
    norm,
    normalize,
    overlap,
    random_q,
    row_mismatches,
    symmetric_mass_ratio,
)


class ShiftedPulseModel(BaseWaveformModel):
    """Gaussian pulse whose peak moves with q, for the shift-and-crop path."""

    name = 'shifted-pulse'

    def evaluate(self, q, grid):
        center = grid.t_start + (q - 1.0) * 20.0 * grid.dt + 40.0 * grid.dt
        width = 5.0 * grid.dt
        return np.exp(-0.5 * ((grid.times - center) / width) ** 2) * (1.0 + 0.1j)

    def to_dict(self):
        return {'name': self.name}


def _random_unit(rng, grid):
    values = rng.normal(size=grid.n_samples) + 1j * rng.normal(size=grid.n_samples)
    return normalize(ComplexWaveform(grid, values))


def test_grid_spacing():
    """Test grid spacing and sample times."""
    grid = TimeGrid(0.0, 10.0, 11)
    assert grid.dt == 1.0
    assert grid.times[-1] == 10.0


def test_grid_rejects_bad_bounds():
    """Test invalid grids are rejected."""
    with pytest.raises(DomainError):
        TimeGrid(5.0, 1.0, 10)
    with pytest.raises(DomainError):
        TimeGrid(0.0, 1.0, 1)


def test_identity_crop_returns_same_grid(grid):
    """Test cropping to the full length keeps the grid identical."""
    assert grid.cropped(0, grid.n_samples) is grid


def test_symmetric_mass_ratio_equal_masses():
    """Test nu = 1/4 for equal masses."""
    assert symmetric_mass_ratio(1.0) == 0.25


def test_generate_waveform_is_unit_norm(chirp, grid):
    """Test generated waveforms are normalized."""
    h = generate_waveform(chirp, 1.37, grid)
    assert abs(norm(h) - 1.0) < 1e-12


def test_generate_waveform_rejects_small_q(chirp, grid):
    """Test q < 1 raises a domain error."""
    with pytest.raises(DomainError):
        generate_waveform(chirp, 0.9, grid)


def test_coalescence_inside_grid_rejected(grid):
    """Test t_c must lie beyond the grid."""
    model = NewtonianChirpModel(t_c=grid.t_end)
    with pytest.raises(DomainError):
        generate_waveform(model, 1.5, grid)


def test_accumulated_phase_equal_masses(chirp):
    """Test |Phi(t_end) - Phi(t_start)| at q = 1 on the default grid against the closed form."""
    grid = default_grid()
    phi = chirp.phase(1.0, grid)
    mu = 0.25 ** 0.6
    start = 2.0 * ((chirp.t_c - grid.t_start) / (5.0 * mu)) ** 0.625
    end = 2.0 * ((chirp.t_c - grid.t_end) / (5.0 * mu)) ** 0.625
    assert abs(phi[-1] - phi[0]) == pytest.approx(start - end, rel=1e-12)
    assert mass_factor(1.0) == pytest.approx(mu, rel=1e-15)
    assert 39.0 < abs(phi[-1] - phi[0]) / (2 * math.pi) < 40.0


def test_phase_monotone_in_q(chirp):
    """Test Phi(t; q) is monotone in q at every sample over [1, 8]."""
    grid = TimeGrid(0.0, 4990.0, 256)
    phases = np.stack([chirp.phase(q, grid) for q in np.linspace(1.0, 8.0, 57)])
    steps = np.diff(phases, axis=0)
    assert np.all(steps < 0) or np.all(steps > 0)


def test_generate_waveform_is_deterministic(chirp, grid):
    """Test two calls with one q give bit-identical samples."""
    first = generate_waveform(chirp, 1.618, grid)
    second = generate_waveform(chirp, 1.618, grid)
    np.testing.assert_array_equal(first.values, second.values)


def test_mismatch_identity(chirp, grid):
    """Test M(h, h) vanishes."""
    h = generate_waveform(chirp, 1.5, grid)
    assert abs(mismatch(h, h)) <= 1e-12


def test_mismatch_antipodal(chirp, grid):
    """Test M(h, -h) = 2."""
    h = generate_waveform(chirp, 1.5, grid)
    assert abs(mismatch(h, -h) - 2.0) <= 1e-12


def test_quadrature_identity_random_pairs(grid):
    """Test overlap equals 1 - ||h - hs||^2 / 2 for unit-norm pairs."""
    rng = np.random.default_rng(0)
    for _ in range(100):
        h, hs = _random_unit(rng, grid), _random_unit(rng, grid)
        distance = norm(h - hs) ** 2
        assert abs(overlap(h, hs) - (1.0 - 0.5 * distance)) <= 1e-10


def test_inner_product_phase(chirp, grid):
    """Test <h, i h> = i for a unit-norm waveform."""
    h = generate_waveform(chirp, 1.2, grid)
    value = inner_product(h, 1j * h)
    assert abs(value - 1j) < 1e-12


def test_quadrature_pair_overlap_and_mismatch(chirp, grid):
    """Test overlap(h, i h) = 0 and mismatch(h, i h) = 1."""
    h = generate_waveform(chirp, 1.4, grid)
    assert abs(overlap(h, 1j * h)) <= 1e-12
    assert abs(mismatch(h, 1j * h) - 1.0) <= 1e-12


def test_mismatch_is_unclipped(grid):
    """Test mismatch is exactly 1 - overlap, within round-off of [0, 2]."""
    rng = np.random.default_rng(4)
    for _ in range(20):
        h, hs = _random_unit(rng, grid), _random_unit(rng, grid)
        assert mismatch(h, hs) == 1.0 - overlap(h, hs)
        assert -1e-12 <= mismatch(h, hs) <= 2.0 + 1e-12
        assert -1e-12 <= mismatch(h, h) <= 1e-12


def test_inner_product_four_terms():
    """Test a length-4 product with dt = 1 against the hand-written sum."""
    grid = TimeGrid(0.0, 3.0, 4)
    a = np.array([1 + 2j, -0.5 + 0j, 3 - 1j, 0.25j])
    b = np.array([2 - 1j, 1 + 1j, -1 + 0.5j, 4 + 0j])
    expected = sum(a[k].conjugate() * b[k] for k in range(4))
    value = inner_product(ComplexWaveform(grid, a), ComplexWaveform(grid, b))
    assert value == pytest.approx(expected, abs=1e-14)
    assert inner_product(ComplexWaveform(grid, b), ComplexWaveform(grid, a)) == pytest.approx(
        value.conjugate(), abs=1e-14
    )


def test_cauchy_schwarz_random_waveforms(grid):
    """Test |<h1, h2>| <= ||h1|| ||h2|| for unnormalized random waveforms."""
    rng = np.random.default_rng(6)
    for _ in range(50):
        scale = rng.uniform(0.1, 10.0, size=2)
        h1, h2 = (ComplexWaveform(grid, s * _random_unit(rng, grid).values) for s in scale)
        assert abs(inner_product(h1, h2)) <= norm(h1) * norm(h2) + 1e-12
    h = _random_unit(rng, grid)
    assert abs(inner_product(h, 3.0 * h)) == pytest.approx(norm(h) * norm(3.0 * h), rel=1e-12)


def test_normalize_ones_vector():
    """Test ones on 100 samples with dt = 0.01 already have unit norm."""
    grid = TimeGrid(0.0, 0.99, 100)
    assert grid.dt == pytest.approx(0.01, rel=1e-14)
    h = normalize(ComplexWaveform(grid, np.ones(100)))
    np.testing.assert_allclose(h.values, np.ones(100), rtol=0, atol=1e-12)


def test_normalize_removes_scale(chirp, grid):
    """Test normalize(2 h) = h and normalizing twice changes nothing."""
    h = generate_waveform(chirp, 1.9, grid)
    np.testing.assert_allclose(normalize(2.0 * h).values, h.values, rtol=0, atol=1e-12)
    np.testing.assert_allclose(normalize(h).values, h.values, rtol=0, atol=1e-12)


def test_inner_product_grid_mismatch(chirp, grid):
    """Test waveforms on different grids cannot be compared."""
    other = TimeGrid(0.0, 4000.0, grid.n_samples)
    with pytest.raises(GridMismatchError):
        inner_product(generate_waveform(chirp, 1.2, grid), generate_waveform(chirp, 1.2, other))


def test_normalize_zero_waveform(grid):
    """Test the zero waveform cannot be normalized."""
    with pytest.raises(ZeroNormError):
        normalize(ComplexWaveform(grid, np.zeros(grid.n_samples)))


def test_plus_and_cross_polarizations(grid):
    """Test h = h_plus - i h_cross."""
    values = np.linspace(0, 1, grid.n_samples) * (2.0 - 3.0j)
    h = ComplexWaveform(grid, values)
    np.testing.assert_array_equal(h.plus - 1j * h.cross, values)


def test_equispaced_q():
    """Test equispaced training values include both endpoints."""
    np.testing.assert_allclose(equispaced_q(1.0, 2.0, 5), [1.0, 1.25, 1.5, 1.75, 2.0])


def test_random_q_is_seeded_and_sorted():
    """Test random q values repeat for one seed and come sorted."""
    a = random_q(1.0, 2.0, 50, np.random.default_rng(3))
    b = random_q(1.0, 2.0, 50, np.random.default_rng(3))
    np.testing.assert_array_equal(a, b)
    assert np.all(np.diff(a) >= 0)
    assert a.min() >= 1.0 and a.max() <= 2.0


def test_chirp_training_set_peaks_at_last_sample(train_set, grid):
    """Test chirps peak at the final sample, so alignment keeps the grid."""
    peaks = np.argmax(np.abs(train_set.waveforms), axis=1)
    assert np.all(peaks == grid.n_samples - 1)
    assert train_set.grid == grid


def test_training_set_rows_unit_norm(train_set):
    """Test every training row has unit norm."""
    self_mismatch = row_mismatches(train_set.waveforms, train_set.waveforms, train_set.grid.dt)
    assert np.max(np.abs(self_mismatch)) < 1e-12


def test_training_set_aligns_shifted_peaks():
    """Test the generic path shifts peaks to a common index and crops."""
    grid = TimeGrid(0.0, 199.0, 200)
    waveforms = build_training_set(ShiftedPulseModel(), [1.0, 1.5, 2.0], grid)
    peaks = np.argmax(np.abs(waveforms.waveforms), axis=1)
    assert len(set(peaks.tolist())) == 1
    assert waveforms.grid.n_samples == 200 - 20


def test_training_set_rejects_empty_and_small_q(chirp, grid):
    """Test invalid q lists are rejected."""
    with pytest.raises(DomainError):
        build_training_set(chirp, [], grid)
    with pytest.raises(DomainError):
        build_training_set(chirp, [1.0, 0.5], grid)


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
