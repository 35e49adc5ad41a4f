"""
Discrete inner product, overlap and mismatch of complex waveforms.

The continuum product <h1, h2> = integral conj(h1) h2 dt is discretized as a
left-Riemann sum with weight dt, which keeps Gram matrices exactly Hermitian.
Row-wise variants operate on N x L arrays sharing one grid spacing.
"""

import numpy as np

from src.utils.errors import GridMismatchError, ZeroNormError
from .grid import ComplexWaveform, check_same_grid


def inner_product(h1: ComplexWaveform, h2: ComplexWaveform) -> complex:
    """
    Complex scalar product sum_k conj(h1_k) h2_k dt.

    Args:
        h1: First waveform (conjugated)
        h2: Second waveform

    Returns:
        Complex inner product

    Example:
        >>> inner_product(h, 1j * h)   # h unit-norm
        1j
    """
    check_same_grid(h1.grid, h2.grid)
    return complex(np.vdot(h1.values, h2.values) * h1.grid.dt)


def norm(h: ComplexWaveform) -> float:
    return float(np.sqrt(inner_product(h, h).real))


def normalize(h: ComplexWaveform) -> ComplexWaveform:
    """
    Scale a waveform to unit norm.

    Args:
        h: Waveform with non-zero norm

    Returns:
        Parallel waveform with ||h|| = 1

    Raises:
        ZeroNormError: if the waveform norm is zero or not finite
    """
    h_norm = norm(h)
    if h_norm == 0.0 or not np.isfinite(h_norm):
        raise ZeroNormError(f"Cannot normalize waveform with norm {h_norm}")
    return ComplexWaveform(h.grid, h.values / h_norm)


def overlap(h: ComplexWaveform, hs: ComplexWaveform) -> float:
    """Real part of <h, hs>; equals 1 - ||h - hs||^2 / 2 for unit-norm inputs."""
    return inner_product(h, hs).real


def mismatch(h: ComplexWaveform, hs: ComplexWaveform) -> float:
    """Mismatch 1 - overlap(h, hs), in [0, 2] for unit-norm inputs."""
    return 1.0 - overlap(h, hs)


# ============================================================================
# ROW-WISE VARIANTS
# ============================================================================

def row_inner_products(rows1: np.ndarray, rows2: np.ndarray, dt: float) -> np.ndarray:
    """Inner product of matching rows of two N x L arrays."""
    rows1 = np.atleast_2d(rows1)
    rows2 = np.atleast_2d(rows2)
    if rows1.shape != rows2.shape:
        raise GridMismatchError(f"Row arrays differ in shape: {rows1.shape} vs {rows2.shape}")
    return np.einsum('ij,ij->i', rows1.conj(), rows2) * dt


def normalize_rows(rows: np.ndarray, dt: float) -> np.ndarray:
    """Normalize each row of an N x L array to unit norm."""
    rows = np.atleast_2d(rows)
    norms = np.sqrt(row_inner_products(rows, rows, dt).real)
    bad = (norms == 0.0) | ~np.isfinite(norms)
    if np.any(bad):
        raise ZeroNormError(f"Cannot normalize rows {np.flatnonzero(bad).tolist()} with zero norm")
    return rows / norms[:, None]


def row_mismatches(rows1: np.ndarray, rows2: np.ndarray, dt: float) -> np.ndarray:
    """Mismatch of matching rows of two arrays of unit-norm waveforms."""
    return 1.0 - row_inner_products(rows1, rows2, dt).real
