"""
Empirical interpolation package.

Components:
    - EimModel / build_eim: empirical nodes and interpolant operator
    - eim_coefficients / eim_reconstruct: node values <-> waveforms
    - CoefficientDataset / build_dataset: regression dataset of node values
"""

from .empirical_interpolation import (
    EimModel,
    build_eim,
    eim_coefficients,
    eim_interpolate,
    eim_reconstruct,
    eim_reconstruct_rows,
)
from .coefficient_dataset import (
    CoefficientDataset,
    build_dataset,
    stack_complex,
    unstack_real,
    column_statistics,
)

__all__ = [
    'EimModel',
    'build_eim',
    'eim_coefficients',
    'eim_interpolate',
    'eim_reconstruct',
    'eim_reconstruct_rows',
    'CoefficientDataset',
    'build_dataset',
    'stack_complex',
    'unstack_real',
    'column_statistics',
]
