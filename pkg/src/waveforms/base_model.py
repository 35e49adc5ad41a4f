"""
Base fiducial model defining the interface for waveform generation.

This module provides an abstract base class that defines the interface
all fiducial waveform families must follow, so the surrogate pipeline
stays independent of how the ground-truth waveforms are produced.
"""

from abc import ABC, abstractmethod

import numpy as np

from .grid import TimeGrid


class BaseWaveformModel(ABC):
    """
    Abstract base class for one-parameter fiducial waveform families.

    Implementations map a mass ratio q and a time grid to raw
    (unnormalized) complex strain samples. Normalization, alignment and
    cropping are done by the callers.

    Example:
        >>> class MyModel(BaseWaveformModel):
        ...     name = 'my-model'
        ...     def evaluate(self, q, grid):
        ...         return np.exp(-1j * q * grid.times)
        ...     def to_dict(self):
        ...         return {'name': self.name}
    """

    name: str = 'base'

    @abstractmethod
    def evaluate(self, q: float, grid: TimeGrid) -> np.ndarray:
        """
        Evaluate raw strain samples h(t_k; q).

        Args:
            q: Mass ratio (q >= 1)
            grid: Time grid to sample on

        Returns:
            complex128 array of grid.n_samples values
        """
        pass

    @abstractmethod
    def to_dict(self) -> dict:
        """
        Describe the model for provenance records.

        Returns:
            JSON-serializable dictionary including a 'name' key
        """
        pass
