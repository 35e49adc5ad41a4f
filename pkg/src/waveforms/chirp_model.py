"""
Closed-form Newtonian chirp family used as the fiducial model.

With tau = t_c - t, nu = q/(1+q)^2 and mu = nu^(3/5):

    Phi(t; q) = -2 (tau / (5 mu))^(5/8)
    A(t; q)   = mu (tau / (5 mu))^(-1/4)
    h(t; q)   = A exp(-i Phi)

The family depends on the mass ratio only, and its node values oscillate
in q, which is all the surrogate pipeline needs from a fiducial model.
"""

import logging

import numpy as np

from src.config import WAVEFORM_CONFIG
from src.utils.errors import DomainError
from .base_model import BaseWaveformModel
from .grid import ComplexWaveform, TimeGrid
from .inner_product import normalize

logger = logging.getLogger(__name__)


def symmetric_mass_ratio(q: float) -> float:
    """nu = q / (1 + q)^2, equal to 1/4 for q = 1."""
    return q / (1.0 + q) ** 2


def mass_factor(q: float) -> float:
    """mu = nu^(3/5)."""
    return symmetric_mass_ratio(q) ** 0.6


class NewtonianChirpModel(BaseWaveformModel):
    """
    Leading-order inspiral chirp parameterized by the mass ratio.

    Attributes:
        t_c: Coalescence time; must lie beyond the end of every grid

    Example:
        >>> model = NewtonianChirpModel()
        >>> h = generate_waveform(model, 1.5, default_grid())
    """

    name = 'newtonian-chirp'

    def __init__(self, t_c: float = None):
        self.t_c = float(WAVEFORM_CONFIG['t_c'] if t_c is None else t_c)

    def time_to_coalescence(self, grid: TimeGrid) -> np.ndarray:
        tau = self.t_c - grid.times
        if np.any(tau <= 0):
            raise DomainError(
                f"Coalescence time t_c={self.t_c} must exceed grid end t_end={grid.t_end}"
            )
        return tau

    def phase(self, q: float, grid: TimeGrid) -> np.ndarray:
        """Orbital phase Phi(t; q) on the grid."""
        self._check_q(q)
        mu = mass_factor(q)
        x = self.time_to_coalescence(grid) / (5.0 * mu)
        return -2.0 * x ** 0.625

    def amplitude(self, q: float, grid: TimeGrid) -> np.ndarray:
        self._check_q(q)
        mu = mass_factor(q)
        x = self.time_to_coalescence(grid) / (5.0 * mu)
        return mu * x ** -0.25

    def evaluate(self, q: float, grid: TimeGrid) -> np.ndarray:
        return self.amplitude(q, grid) * np.exp(-1j * self.phase(q, grid))

    def to_dict(self) -> dict:
        return {'name': self.name, 't_c': self.t_c}

    @staticmethod
    def _check_q(q: float) -> None:
        if not np.isfinite(q) or q < 1.0:
            raise DomainError(f"Mass ratio must satisfy q >= 1, got {q}")


def default_grid() -> TimeGrid:
    """Grid from WAVEFORM_CONFIG."""
    return TimeGrid(
        WAVEFORM_CONFIG['t_start'],
        WAVEFORM_CONFIG['t_end'],
        WAVEFORM_CONFIG['n_samples'],
    )


def generate_waveform(model: BaseWaveformModel, q: float, grid: TimeGrid) -> ComplexWaveform:
    """
    Generate a unit-norm fiducial waveform.

    Args:
        model: Fiducial waveform family
        q: Mass ratio (q >= 1)
        grid: Time grid

    Returns:
        Normalized ComplexWaveform

    Raises:
        DomainError: if q < 1 or the grid reaches the coalescence time
    """
    if not np.isfinite(q) or q < 1.0:
        raise DomainError(f"Mass ratio must satisfy q >= 1, got {q}")
    return normalize(ComplexWaveform(grid, model.evaluate(float(q), grid)))


if __name__ == "__main__":
    """Quick look at the default chirp family."""

    grid = default_grid()
    model = NewtonianChirpModel()

    print("=" * 60)
    print("NEWTONIAN CHIRP TEST")
    print("=" * 60)

    for q in (1.0, 1.5, 2.0):
        phi = model.phase(q, grid)
        cycles = abs(phi[-1] - phi[0]) / (2 * np.pi)
        print(f"   q={q:.2f}  nu={symmetric_mass_ratio(q):.4f}  cycles={cycles:.1f}")

    print("\n" + "=" * 60)
