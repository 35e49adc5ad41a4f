"""
Spiral-structure diagnostics of a 2-D latent space.

Angles are measured about a center, unwrapped along increasing q, and
correlated with q. The center is the centroid unless given; ``center="circle"``
uses the least-squares circle through the points, which stays near the
curve's center of curvature when the points trace less than one turn.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Union

import numpy as np
from scipy import stats

from src.utils.errors import DomainError, ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatentDiagnostics:
    """Latent points ordered by q with their angle/radius about the center."""

    q_values: np.ndarray
    points: np.ndarray = field(repr=False)
    center: np.ndarray
    unwrapped_angle: np.ndarray = field(repr=False)
    radius: np.ndarray = field(repr=False)
    angle_q_spearman: float
    linear_fit_r2: float
    slope: float
    intercept: float

    def rows(self) -> List[tuple]:
        """(q, y1, y2, angle_unwrapped, radius) per point."""
        return [
            (float(q), float(p[0]), float(p[1]), float(a), float(r))
            for q, p, a, r in zip(self.q_values, self.points, self.unwrapped_angle, self.radius)
        ]

    def summary(self) -> dict:
        return {
            'n_points': int(self.q_values.size),
            'center': self.center.tolist(),
            'angle_q_spearman': self.angle_q_spearman,
            'linear_fit_r2': self.linear_fit_r2,
            'slope': self.slope,
            'intercept': self.intercept,
            'total_turns': float(
                abs(self.unwrapped_angle[-1] - self.unwrapped_angle[0]) / (2 * np.pi)
            ),
        }


def fit_circle_center(points: np.ndarray) -> np.ndarray:
    """
    Center of the algebraic least-squares circle through N x 2 points.

    Solves 2 x c_x + 2 y c_y + k = x^2 + y^2 in the least-squares sense.

    Raises:
        DomainError: if the points are collinear or coincide
    """
    points = np.asarray(points, dtype=np.float64)
    design = np.column_stack([2.0 * points, np.ones(points.shape[0])])
    target = np.sum(points ** 2, axis=1)
    solution, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 3:
        raise DomainError("Cannot fit a circle to collinear latent points")
    return solution[:2]


def latent_spiral_diagnostics(
    points: np.ndarray,
    q_values: Sequence[float],
    center: Union[None, str, Sequence[float]] = None,
) -> LatentDiagnostics:
    """
    Args:
        points: N x 2 latent points
        q_values: Mass ratio of each point
        center: Angle origin: None for the centroid, "circle" for the
            least-squares circle center, or an explicit point

    Raises:
        DomainError: with fewer than 3 points, a constant q, an unknown
            center method, or collinear points with center="circle"
        ShapeMismatchError: if points are not N x 2
    """
    points = np.asarray(points, dtype=np.float64)
    q_values = np.asarray(q_values, dtype=np.float64).reshape(-1)
    if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] != q_values.size:
        raise ShapeMismatchError(
            f"Expected {q_values.size} x 2 latent points, got {points.shape}"
        )
    if q_values.size < 3:
        raise DomainError(f"Need at least 3 latent points, got {q_values.size}")
    if np.ptp(q_values) == 0:
        raise DomainError("All latent points share one q value")

    order = np.argsort(q_values, kind='stable')
    q_values, points = q_values[order], points[order]

    if center is None:
        center = points.mean(axis=0)
    elif isinstance(center, str):
        if center != 'circle':
            raise DomainError(f"Unknown latent center method: {center!r}")
        center = fit_circle_center(points)
    else:
        center = np.asarray(center, dtype=np.float64)
    offset = points - center
    angle = np.unwrap(np.arctan2(offset[:, 1], offset[:, 0]))
    radius = np.hypot(offset[:, 0], offset[:, 1])

    rho = float(stats.spearmanr(angle, q_values)[0]) if np.ptp(angle) > 0 else float('nan')
    fit = stats.linregress(q_values, angle)

    logger.debug("Latent angle vs q: spearman=%.4f r2=%.6f", rho, fit.rvalue ** 2)
    return LatentDiagnostics(
        q_values=q_values,
        points=points,
        center=center,
        unwrapped_angle=angle,
        radius=radius,
        angle_q_spearman=rho,
        linear_fit_r2=float(fit.rvalue ** 2),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
    )
