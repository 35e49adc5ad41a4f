"""
Coefficient dataset D = {(q_i, a(q_i))} for the regression and latent stages.

Complex node values are stacked as real columns, real parts first and
imaginary parts after, and standardized per column with statistics taken
from the training split.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from src.config import ROM_CONFIG
from src.utils.errors import DomainError, ShapeMismatchError
from src.waveforms import WaveformSet
from .empirical_interpolation import EimModel

logger = logging.getLogger(__name__)


def stack_complex(coefficients: np.ndarray) -> np.ndarray:
    """N x m complex -> N x 2m real, real parts before imaginary parts."""
    coefficients = np.atleast_2d(coefficients)
    return np.concatenate([coefficients.real, coefficients.imag], axis=1)


def unstack_real(stacked: np.ndarray) -> np.ndarray:
    """N x 2m real -> N x m complex."""
    stacked = np.atleast_2d(stacked)
    if stacked.shape[1] % 2:
        raise ShapeMismatchError(f"Stacked coefficients need an even width, got {stacked.shape[1]}")
    m = stacked.shape[1] // 2
    return stacked[:, :m] + 1j * stacked[:, m:]


def column_statistics(values: np.ndarray):
    """Per-column mean and std; constant columns get std 1."""
    mean = values.mean(axis=0)
    std = values.std(axis=0)
    degenerate = std <= ROM_CONFIG['degenerate_std'] * np.maximum(1.0, np.abs(mean))
    if np.any(degenerate):
        logger.debug("Columns %s are constant; using std 1", np.flatnonzero(degenerate).tolist())
    std = np.where(degenerate, 1.0, std)
    return mean, std


@dataclass(frozen=True)
class CoefficientDataset:
    """
    Pairs (q_i, a(q_i)) with standardization statistics.

    Attributes:
        q: Mass ratios, increasing
        a: N x 2m raw stacked coefficients
        mean: Per-column mean of the training split
        std: Per-column std of the training split
    """

    q: np.ndarray
    a: np.ndarray = field(repr=False)
    mean: np.ndarray = field(repr=False)
    std: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.q.size

    @property
    def n_nodes(self) -> int:
        return self.a.shape[1] // 2

    @property
    def width(self) -> int:
        return self.a.shape[1]

    @property
    def standardized(self) -> np.ndarray:
        return self.standardize(self.a)

    def standardize(self, values: np.ndarray) -> np.ndarray:
        return (values - self.mean) / self.std

    def destandardize(self, values: np.ndarray) -> np.ndarray:
        return values * self.std + self.mean

    def complex_coefficients(self) -> np.ndarray:
        return unstack_real(self.a)

    def zero_crossings(self) -> List[int]:
        """Sign changes of each raw Re a_j along increasing q."""
        negative = np.signbit(self.a[:, :self.n_nodes])
        return np.count_nonzero(negative[1:] != negative[:-1], axis=0).tolist()

    def with_statistics_of(self, other: 'CoefficientDataset') -> 'CoefficientDataset':
        return CoefficientDataset(self.q, self.a, other.mean, other.std)


def build_dataset(
    train: WaveformSet,
    eim: EimModel,
    reference: Optional[CoefficientDataset] = None,
) -> CoefficientDataset:
    """
    Sample every waveform at the empirical nodes.

    Args:
        train: Waveform set on the interpolant grid
        eim: Empirical interpolant
        reference: Dataset whose statistics to reuse (validation/test splits);
            statistics are computed from ``train`` when omitted

    Returns:
        CoefficientDataset ordered by q
    """
    if len(train) == 0:
        raise DomainError("Cannot build a coefficient dataset from an empty waveform set")
    if train.waveforms.shape[1] != eim.interpolant.shape[0]:
        raise ShapeMismatchError(
            f"Waveforms of length {train.waveforms.shape[1]} do not match the interpolant "
            f"length {eim.interpolant.shape[0]}"
        )

    order = np.argsort(train.q_values, kind='stable')
    q = train.q_values[order]
    a = stack_complex(train.waveforms[order][:, eim.node_indices])

    if reference is None:
        mean, std = column_statistics(a)
    else:
        mean, std = reference.mean, reference.std

    return CoefficientDataset(q=q.copy(), a=a, mean=mean, std=std)
