"""Spiral input module with analytic gradients."""

from .spiral_layer import (
    SpiralParams,
    SpiralCache,
    SpiralGradients,
    SpiralFunction,
    SpiralLayer,
    spiral_forward,
    spiral_backward,
)

__all__ = [
    'SpiralParams',
    'SpiralCache',
    'SpiralGradients',
    'SpiralFunction',
    'SpiralLayer',
    'spiral_forward',
    'spiral_backward',
]
