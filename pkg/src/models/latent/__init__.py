"""
Latent-space laboratory.

Components:
    - AutoencoderModel / train_autoencoder / encode: 2-D bottleneck autoencoder
    - PcaModel / pca_fit: linear baseline
    - LatentDiagnostics / latent_spiral_diagnostics: angle-vs-q structure
"""

from .autoencoder import (
    AutoencoderNetwork,
    AutoencoderModel,
    train_autoencoder,
    encode,
    reconstruct,
)
from .pca import PcaModel, pca_fit
from .diagnostics import LatentDiagnostics, fit_circle_center, latent_spiral_diagnostics

__all__ = [
    'AutoencoderNetwork',
    'AutoencoderModel',
    'train_autoencoder',
    'encode',
    'reconstruct',
    'PcaModel',
    'pca_fit',
    'LatentDiagnostics',
    'fit_circle_center',
    'latent_spiral_diagnostics',
]
