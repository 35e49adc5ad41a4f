"""
Waveform package: fiducial models, inner products and training sets.

Components:
    - TimeGrid / ComplexWaveform: sampled complex strain containers
    - BaseWaveformModel: interface for pluggable fiducial families
    - NewtonianChirpModel: built-in closed-form chirp family
    - inner_product, normalize, overlap, mismatch: waveform metrics
    - WaveformSet / build_training_set: aligned, cropped training sets
"""

from .grid import TimeGrid, ComplexWaveform, check_same_grid
from .base_model import BaseWaveformModel
from .inner_product import (
    inner_product,
    norm,
    normalize,
    overlap,
    mismatch,
    row_inner_products,
    normalize_rows,
    row_mismatches,
)
from .chirp_model import (
    NewtonianChirpModel,
    symmetric_mass_ratio,
    mass_factor,
    default_grid,
    generate_waveform,
)
from .training_set import (
    WaveformSet,
    build_training_set,
    align_and_crop,
    equispaced_q,
    random_q,
)

__all__ = [
    'TimeGrid',
    'ComplexWaveform',
    'check_same_grid',
    'BaseWaveformModel',
    'inner_product',
    'norm',
    'normalize',
    'overlap',
    'mismatch',
    'row_inner_products',
    'normalize_rows',
    'row_mismatches',
    'NewtonianChirpModel',
    'symmetric_mass_ratio',
    'mass_factor',
    'default_grid',
    'generate_waveform',
    'WaveformSet',
    'build_training_set',
    'align_and_crop',
    'equispaced_q',
    'random_q',
]
