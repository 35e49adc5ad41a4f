"""Time grid and complex waveform containers."""

from dataclasses import dataclass, field

import numpy as np

from src.utils.errors import DomainError, GridMismatchError


@dataclass(frozen=True)
class TimeGrid:
    """
    Uniform grid of dimensionless times t_k = t_start + k*dt.

    Example:
        >>> grid = TimeGrid(0.0, 4990.0, 4096)
        >>> round(grid.dt, 4)
        1.2186
    """

    t_start: float
    t_end: float
    n_samples: int

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise DomainError(f"t_start ({self.t_start}) must be < t_end ({self.t_end})")
        if int(self.n_samples) != self.n_samples or self.n_samples < 2:
            raise DomainError(f"n_samples must be an integer >= 2, got {self.n_samples}")

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / (self.n_samples - 1)

    @property
    def times(self) -> np.ndarray:
        return self.t_start + np.arange(self.n_samples) * self.dt

    def cropped(self, start: int, length: int) -> 'TimeGrid':
        """Sub-grid of ``length`` samples starting at sample ``start``."""
        if start == 0 and length == self.n_samples:
            return self
        dt = self.dt
        t0 = self.t_start + start * dt
        return TimeGrid(t0, t0 + (length - 1) * dt, length)

    def to_dict(self) -> dict:
        return {'t_start': self.t_start, 't_end': self.t_end, 'n_samples': self.n_samples}

    @classmethod
    def from_dict(cls, data: dict) -> 'TimeGrid':
        return cls(float(data['t_start']), float(data['t_end']), int(data['n_samples']))


@dataclass(frozen=True)
class ComplexWaveform:
    """
    Complex strain h = h_plus - i*h_cross sampled on a TimeGrid.

    Attributes:
        grid: Shared time grid
        values: complex128 array of grid.n_samples samples
    """

    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim != 1 or values.shape[0] != self.grid.n_samples:
            raise GridMismatchError(
                f"Waveform has {values.shape} samples, grid expects {self.grid.n_samples}"
            )
        object.__setattr__(self, 'values', values)

    @property
    def plus(self) -> np.ndarray:
        return self.values.real

    @property
    def cross(self) -> np.ndarray:
        return -self.values.imag

    def __mul__(self, scalar: complex) -> 'ComplexWaveform':
        return ComplexWaveform(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> 'ComplexWaveform':
        return ComplexWaveform(self.grid, -self.values)

    def __sub__(self, other: 'ComplexWaveform') -> 'ComplexWaveform':
        check_same_grid(self.grid, other.grid)
        return ComplexWaveform(self.grid, self.values - other.values)


def check_same_grid(grid1: TimeGrid, grid2: TimeGrid) -> None:
    """Raise GridMismatchError unless the two grids are identical."""
    if grid1 != grid2:
        raise GridMismatchError(f"Grid mismatch: {grid1} vs {grid2}")
