"""
Exception hierarchy for the spiral surrogate toolkit.

Every error raised on purpose by the package derives from SurrogateError,
so the command line can turn any of them into a one-line diagnostic.
Each class also derives from the closest builtin so callers can keep
catching ValueError / RuntimeError / FileNotFoundError.
"""

from typing import Optional


class SurrogateError(Exception):
    """Base class of all toolkit errors."""


class DomainError(SurrogateError, ValueError):
    """Input outside the domain of a model or configuration."""


class GridMismatchError(SurrogateError, ValueError):
    """Two waveforms (or a waveform and a basis) live on different grids."""


class ZeroNormError(SurrogateError, ValueError):
    """A waveform with zero norm cannot be normalized."""


class GreedyConvergenceError(SurrogateError, RuntimeError):
    """The greedy sweep ran out of training waveforms before reaching tol."""

    def __init__(self, message: str, achieved_error: float):
        super().__init__(f"{message} (achieved error {achieved_error:.3e})")
        self.achieved_error = achieved_error


class SingularNodeMatrixError(SurrogateError, RuntimeError):
    """The basis restricted to the empirical nodes is numerically singular."""

    def __init__(self, message: str, condition_number: float):
        super().__init__(f"{message} (condition estimate {condition_number:.3e})")
        self.condition_number = condition_number


class ShapeMismatchError(SurrogateError, ValueError):
    """Array widths do not match what a network or loss expects."""


class StaleCacheError(SurrogateError, RuntimeError):
    """A backward pass was given a cache from a different forward pass."""


class TrainingDivergedError(SurrogateError, RuntimeError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch: int, batch: Optional[int], loss: float):
        where = f"epoch {epoch}" if batch is None else f"epoch {epoch}, batch {batch}"
        super().__init__(f"Non-finite loss {loss} at {where}")
        self.epoch = epoch
        self.batch = batch


class MissingArtifactError(SurrogateError, FileNotFoundError):
    """A pipeline step needs an artifact that has not been produced yet."""


class CorruptArtifactError(SurrogateError, ValueError):
    """An artifact on disk failed magic, header or payload validation."""


class OutputLockedError(SurrogateError, RuntimeError):
    """Another command holds the lock on the output directory."""
