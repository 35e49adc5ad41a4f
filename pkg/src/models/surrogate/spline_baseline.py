"""
Cubic-spline baseline: one natural cubic spline per stacked coefficient column.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from src.models.eim import CoefficientDataset, unstack_real
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)

MIN_KNOTS = 4


@dataclass(frozen=True)
class SplineModel:
    """Splines over the training q grid, all columns fitted independently."""

    knots: np.ndarray
    values: np.ndarray = field(repr=False)
    spline: CubicSpline = field(repr=False)

    @property
    def q_range(self):
        return float(self.knots[0]), float(self.knots[-1])

    @property
    def n_nodes(self) -> int:
        return self.spline.c.shape[-1] // 2

    def __call__(self, q_batch) -> np.ndarray:
        """N x 2m stacked coefficients."""
        return self.spline(np.asarray(q_batch, dtype=np.float64).reshape(-1))


def fit_spline_baseline(dataset: CoefficientDataset) -> SplineModel:
    """
    Raises:
        DomainError: with fewer than 4 knots or non-increasing q
    """
    q = np.asarray(dataset.q, dtype=np.float64)
    if q.size < MIN_KNOTS:
        raise DomainError(f"A cubic spline baseline needs at least {MIN_KNOTS} points, got {q.size}")
    steps = np.diff(q)
    if np.any(steps <= 0):
        raise DomainError(
            f"Training q must be strictly increasing; repeated at positions "
            f"{np.flatnonzero(steps <= 0).tolist()}"
        )

    spline = CubicSpline(q, dataset.a, axis=0, bc_type='natural')
    logger.info("Fitted %d natural cubic splines over %d knots", dataset.width, q.size)
    return SplineModel(knots=q.copy(), values=np.array(dataset.a, dtype=np.float64), spline=spline)


def predict_spline_coefficients(model: SplineModel, q_batch) -> np.ndarray:
    """N x m complex coefficients from the spline baseline."""
    return unstack_real(model(q_batch))
