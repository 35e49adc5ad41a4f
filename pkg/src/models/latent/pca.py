"""
Linear baseline for the latent space: principal components via SVD.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from src.models.eim import CoefficientDataset
from src.utils.errors import DomainError, ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PcaModel:
    """
    Attributes:
        mean: D-vector subtracted before projecting
        components: k x D matrix with orthonormal rows
        singular_values: Singular values of the centered data
    """

    mean: np.ndarray
    components: np.ndarray
    singular_values: np.ndarray

    @property
    def k(self) -> int:
        return self.components.shape[0]

    def transform(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        if x.shape[1] != self.mean.size:
            raise ShapeMismatchError(f"PCA expects {self.mean.size} columns, got {x.shape[1]}")
        return (x - self.mean) @ self.components.T

    def inverse_transform(self, y: np.ndarray) -> np.ndarray:
        return np.atleast_2d(y) @ self.components + self.mean

    def reconstruction_mse(self, x: np.ndarray) -> float:
        """Row-sum squared residual averaged over rows (same definition as the AE loss)."""
        x = np.atleast_2d(x)
        residual = x - self.inverse_transform(self.transform(x))
        return float(np.sum(residual ** 2) / x.shape[0])


def _as_matrix(data: Union[CoefficientDataset, np.ndarray]) -> np.ndarray:
    if isinstance(data, CoefficientDataset):
        return data.standardized
    return np.atleast_2d(np.asarray(data, dtype=np.float64))


def pca_fit(data: Union[CoefficientDataset, np.ndarray], k: int = 2) -> Tuple[PcaModel, float]:
    """
    Fit the top-k principal components.

    A CoefficientDataset is fitted on its standardized coefficients, the
    same inputs the autoencoder sees.

    Returns:
        (PcaModel, reconstruction MSE on the fitted data)

    Raises:
        DomainError: if there are fewer than k rows or columns
    """
    x = _as_matrix(data)
    n, width = x.shape
    if k <= 0 or n < k or width < k:
        raise DomainError(f"Cannot fit {k} components to a {n} x {width} matrix")

    mean = x.mean(axis=0)
    _, s, vt = np.linalg.svd(x - mean, full_matrices=False)

    tol = s[0] * max(n, width) * np.finfo(np.float64).eps if s.size else 0.0
    rank = int(np.sum(s > tol))
    if rank < k:
        message = f"Data has rank {rank} < {k}; padding with remaining singular vectors"
        logger.warning(message)
        warnings.warn(message, RuntimeWarning, stacklevel=2)

    components = vt[:k].copy()
    # Sign convention: largest-magnitude entry of each component is positive
    pivots = np.argmax(np.abs(components), axis=1)
    signs = np.sign(components[np.arange(k), pivots])
    components *= np.where(signs == 0, 1.0, signs)[:, None]

    model = PcaModel(mean=mean, components=components, singular_values=s[:k].copy())
    mse = model.reconstruction_mse(x)
    logger.info("PCA(%d) reconstruction MSE %.6e", k, mse)
    return model, mse
