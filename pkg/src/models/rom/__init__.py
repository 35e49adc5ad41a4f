"""Reduced-order modelling package: greedy reduced basis and projections."""

from .reduced_basis import (
    ReducedBasis,
    ProjectionCoefficients,
    greedy_build,
    project,
    reconstruction_error,
    projection_errors,
)

__all__ = [
    'ReducedBasis',
    'ProjectionCoefficients',
    'greedy_build',
    'project',
    'reconstruction_error',
    'projection_errors',
]
