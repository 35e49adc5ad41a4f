"""
Mismatch evaluation of a surrogate (regressor or spline) against the fiducial model.

For every test q: generate the true waveform, reconstruct the surrogate
waveform from predicted coefficients through the empirical interpolant,
and take the mismatch. Statistics are max, median and nearest-rank p95.
"""

import logging
import math
import time
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from src.models.eim import EimModel, eim_reconstruct_rows
from src.utils.errors import DomainError, GridMismatchError
from src.waveforms import BaseWaveformModel, WaveformSet, build_training_set, check_same_grid, row_mismatches
from .regressor import RegressorModel, predict_coefficients
from .spline_baseline import SplineModel, predict_spline_coefficients

logger = logging.getLogger(__name__)

Predictor = Union[RegressorModel, SplineModel]


def nearest_rank_percentile(values: Sequence[float], p: float) -> float:
    """Smallest value with at least p percent of the sample at or below it."""
    ordered = np.sort(np.asarray(values, dtype=np.float64))
    if ordered.size == 0:
        raise DomainError("Percentile of an empty sample")
    rank = max(1, math.ceil(p / 100.0 * ordered.size))
    return float(ordered[rank - 1])


@dataclass
class MismatchReport:
    """
    Per-sample mismatches and their summary statistics.

    Attributes:
        label: Name of the evaluated surrogate
        q_values: Test mass ratios
        per_sample: Mismatch of each test waveform
        extrapolated: True where q lies outside the trained interval
        wall_time_per_batch: Seconds to predict and reconstruct the whole batch
    """

    label: str
    q_values: np.ndarray = field(repr=False)
    per_sample: np.ndarray = field(repr=False)
    extrapolated: np.ndarray = field(repr=False)
    max: float = 0.0
    median: float = 0.0
    p95: float = 0.0
    min: float = 0.0
    wall_time_per_batch: float = 0.0

    @classmethod
    def from_samples(cls, label, q_values, per_sample, extrapolated, wall_time=0.0) -> 'MismatchReport':
        per_sample = np.asarray(per_sample, dtype=np.float64)
        return cls(
            label=label,
            q_values=np.asarray(q_values, dtype=np.float64),
            per_sample=per_sample,
            extrapolated=np.asarray(extrapolated, dtype=bool),
            max=float(per_sample.max()),
            median=float(np.median(per_sample)),
            p95=nearest_rank_percentile(per_sample, 95),
            min=float(per_sample.min()),
            wall_time_per_batch=wall_time,
        )

    @property
    def n_extrapolated(self) -> int:
        return int(self.extrapolated.sum())

    def rows(self) -> List[tuple]:
        """(q, mismatch, extrapolated) per test sample."""
        return [
            (float(q), float(m), int(e))
            for q, m, e in zip(self.q_values, self.per_sample, self.extrapolated)
        ]

    def to_dict(self, include_timing: bool = False) -> dict:
        """Statistics only; timing is opt-in so reports stay reproducible."""
        data = {
            'label': self.label,
            'n_samples': int(self.per_sample.size),
            'max': self.max,
            'median': self.median,
            'p95': self.p95,
            'min': self.min,
            'n_extrapolated': self.n_extrapolated,
        }
        if include_timing:
            data['wall_time_per_batch'] = self.wall_time_per_batch
        return data


def _predict(predictor: Predictor, q: np.ndarray) -> np.ndarray:
    if isinstance(predictor, RegressorModel):
        return predict_coefficients(predictor, q)
    if isinstance(predictor, SplineModel):
        return predict_spline_coefficients(predictor, q)
    raise TypeError(f"Cannot evaluate a {type(predictor).__name__}")


def _label(predictor: Predictor) -> str:
    return predictor.label if isinstance(predictor, RegressorModel) else 'spline'


def evaluate(
    predictor: Predictor,
    test_q: Sequence[float],
    fiducial: BaseWaveformModel,
    eim: EimModel,
    truth: Optional[WaveformSet] = None,
    label: Optional[str] = None,
) -> MismatchReport:
    """
    Mismatch of the surrogate against the fiducial model on test_q.

    Args:
        predictor: RegressorModel or SplineModel
        test_q: Test mass ratios
        fiducial: Ground-truth waveform family
        eim: Interpolant the predictor's coefficients belong to
        truth: Pre-generated test waveforms for test_q (generated when omitted)
        label: Report label (default the architecture or "spline")

    Returns:
        MismatchReport; q outside the trained interval is flagged, not rejected
    """
    test_q = np.asarray(test_q, dtype=np.float64).reshape(-1)
    if test_q.size == 0:
        raise DomainError("Cannot evaluate on an empty test set")

    q_lo, q_hi = predictor.q_range
    extrapolated = (test_q < q_lo) | (test_q > q_hi)
    if extrapolated.any():
        message = (f"{int(extrapolated.sum())} test q values lie outside the trained "
                   f"interval [{q_lo}, {q_hi}]")
        logger.warning(message)
        warnings.warn(message, RuntimeWarning, stacklevel=2)

    if truth is None:
        truth = build_training_set(fiducial, test_q, eim.grid)
    else:
        check_same_grid(truth.grid, eim.grid)
        if not np.array_equal(truth.q_values, test_q):
            raise GridMismatchError("Provided test waveforms were generated for different q values")

    start = time.perf_counter()
    predicted = eim_reconstruct_rows(_predict(predictor, test_q), eim)
    wall_time = time.perf_counter() - start

    # Rounding can push identical waveforms a hair below zero
    per_sample = np.maximum(row_mismatches(truth.waveforms, predicted, eim.grid.dt), 0.0)

    report = MismatchReport.from_samples(label or _label(predictor), test_q,
                                         per_sample, extrapolated, wall_time)
    logger.info("%s: max %.3e  median %.3e  p95 %.3e over %d samples",
                report.label, report.max, report.median, report.p95, test_q.size)
    return report


def evaluate_exact_coefficients(eim: EimModel, truth: WaveformSet) -> MismatchReport:
    """Fidelity floor: reconstruct held-out waveforms from their exact node values."""
    check_same_grid(truth.grid, eim.grid)
    coefficients = truth.waveforms[:, eim.node_indices]
    predicted = eim_reconstruct_rows(coefficients, eim)
    per_sample = np.maximum(row_mismatches(truth.waveforms, predicted, eim.grid.dt), 0.0)
    return MismatchReport.from_samples('exact', truth.q_values, per_sample,
                                       np.zeros(len(truth), dtype=bool))
