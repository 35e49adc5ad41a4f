"""
Training-set assembly: generate, align at peak amplitude, crop, renormalize.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.utils.errors import DomainError, GridMismatchError
from .base_model import BaseWaveformModel
from .grid import ComplexWaveform, TimeGrid
from .inner_product import normalize_rows

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WaveformSet:
    """
    N unit-norm waveforms on one shared grid.

    Attributes:
        q_values: Mass ratio of each row
        waveforms: N x L complex128 matrix
        grid: Grid of the (possibly cropped) rows
    """

    q_values: np.ndarray
    waveforms: np.ndarray = field(repr=False)
    grid: TimeGrid

    def __post_init__(self):
        q_values = np.asarray(self.q_values, dtype=np.float64).reshape(-1)
        waveforms = np.asarray(self.waveforms, dtype=np.complex128)
        if waveforms.ndim != 2 or waveforms.shape != (q_values.size, self.grid.n_samples):
            raise GridMismatchError(
                f"Waveform matrix {waveforms.shape} does not match "
                f"{q_values.size} q values on a {self.grid.n_samples}-sample grid"
            )
        waveforms.setflags(write=False)
        q_values.setflags(write=False)
        object.__setattr__(self, 'q_values', q_values)
        object.__setattr__(self, 'waveforms', waveforms)

    def __len__(self) -> int:
        return self.q_values.size

    def row(self, i: int) -> ComplexWaveform:
        return ComplexWaveform(self.grid, self.waveforms[i])


def align_and_crop(rows: Sequence[np.ndarray], grid: TimeGrid):
    """
    Shift rows so their peak amplitudes share one sample index, crop to the
    common length and return (matrix, cropped grid, peak index).
    """
    peaks = np.array([int(np.argmax(np.abs(row))) for row in rows])
    lengths = np.array([row.shape[0] for row in rows])

    head = int(peaks.min())                      # samples kept before the peak
    tail = int((lengths - peaks).min())          # samples kept from the peak on
    length = head + tail

    starts = peaks - head
    aligned = np.stack([row[s:s + length] for row, s in zip(rows, starts)])

    # Rows share the grid spacing; the cropped grid starts where the row
    # with the earliest peak starts.
    cropped = grid.cropped(int(starts.min()), length)
    return aligned, cropped, head


def build_training_set(
    model: BaseWaveformModel,
    q_values: Sequence[float],
    grid: TimeGrid,
) -> WaveformSet:
    """
    Build a peak-aligned, cropped, unit-norm waveform set.

    Args:
        model: Fiducial waveform family
        q_values: Mass ratios (all >= 1)
        grid: Shared time grid

    Returns:
        WaveformSet with rows ordered as q_values

    Raises:
        DomainError: for an empty q list or q < 1
        GridMismatchError: if the model returns rows off the grid
    """
    q_values = np.asarray(q_values, dtype=np.float64).reshape(-1)
    if q_values.size == 0:
        raise DomainError("Cannot build a training set from an empty list of q values")
    if np.any(~np.isfinite(q_values)) or np.any(q_values < 1.0):
        raise DomainError(f"All mass ratios must satisfy q >= 1 (min {q_values.min()})")

    rows = []
    for q in q_values:
        values = np.asarray(model.evaluate(float(q), grid), dtype=np.complex128)
        if values.shape != (grid.n_samples,):
            raise GridMismatchError(
                f"Model returned {values.shape} samples for q={q}, grid has {grid.n_samples}"
            )
        rows.append(values)

    aligned, cropped, peak = align_and_crop(rows, grid)
    waveforms = normalize_rows(aligned, cropped.dt)

    logger.debug("Built %d waveforms, common length %d, peak index %d",
                 q_values.size, cropped.n_samples, peak)
    return WaveformSet(q_values, waveforms, cropped)


def equispaced_q(q_min: float, q_max: float, n: int) -> np.ndarray:
    """Training-style q values, endpoints included."""
    if n == 1:
        return np.array([q_min], dtype=np.float64)
    return np.linspace(q_min, q_max, n)


def random_q(q_min: float, q_max: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Validation/test-style q values, uniform and sorted."""
    return np.sort(rng.uniform(q_min, q_max, n))
