"""Shared utilities: error hierarchy and logging setup."""

from .errors import (
    SurrogateError,
    DomainError,
    GridMismatchError,
    ZeroNormError,
    GreedyConvergenceError,
    SingularNodeMatrixError,
    ShapeMismatchError,
    StaleCacheError,
    TrainingDivergedError,
    MissingArtifactError,
    CorruptArtifactError,
    OutputLockedError,
)
from .logger import setup_logging

__all__ = [
    'SurrogateError',
    'DomainError',
    'GridMismatchError',
    'ZeroNormError',
    'GreedyConvergenceError',
    'SingularNodeMatrixError',
    'ShapeMismatchError',
    'StaleCacheError',
    'TrainingDivergedError',
    'MissingArtifactError',
    'CorruptArtifactError',
    'OutputLockedError',
    'setup_logging',
]
