"""
Symmetric autoencoder over standardized EIM coefficients.

Architecture D -> 128 -> 128 -> d -> 128 -> 128 -> D, PReLU after every
hidden layer (the bottleneck included), linear output layer.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import torch

from src.config import AE_TRAINING
from src.models.eim import CoefficientDataset
from src.models.nnet import (
    DTYPE,
    CachedNetwork,
    DenseStack,
    LossHistory,
    TrainConfig,
    TrainingData,
    evaluate_loss,
    seeded,
    train,
)
from src.utils.errors import DomainError, ShapeMismatchError

logger = logging.getLogger(__name__)


class AutoencoderNetwork(CachedNetwork):
    """Encoder g and decoder f with x_hat = f(g(x))."""

    def __init__(self, input_dim: int, hidden_width: int = 128, latent_dim: int = 2):
        super().__init__()
        self.input_dim = self.output_dim = input_dim
        self.latent_dim = latent_dim
        self.hidden_width = hidden_width
        self.encoder = DenseStack([input_dim, hidden_width, hidden_width, latent_dim],
                                  activate_output=True)
        self.decoder = DenseStack([latent_dim, hidden_width, hidden_width, input_dim])

    def forward(self, x, cache=None):
        return self.decoder(self.encoder(x, cache), cache)


@dataclass
class AutoencoderModel:
    """
    Trained autoencoder plus the standardization it was trained under.

    Attributes:
        network: Encoder/decoder network
        mean, std: Column statistics of the training coefficients
        history: Per-epoch losses
        mse: Final reconstruction MSE on the standardized training set
        config: Training configuration
    """

    network: AutoencoderNetwork
    mean: np.ndarray
    std: np.ndarray
    history: LossHistory
    mse: float
    config: TrainConfig

    @property
    def latent_dim(self) -> int:
        return self.network.latent_dim

    @property
    def input_dim(self) -> int:
        return self.network.input_dim

    def to_dict(self) -> dict:
        return {
            'input_dim': self.input_dim,
            'hidden_width': self.network.hidden_width,
            'latent_dim': self.latent_dim,
            'mse': self.mse,
            'initial_mse': self.history.initial_train,
            'train_config': self.config.to_dict(),
        }


def _standardized_tensor(dataset: CoefficientDataset, mean, std) -> torch.Tensor:
    return torch.as_tensor((dataset.a - mean) / std, dtype=DTYPE)


def train_autoencoder(
    dataset: CoefficientDataset,
    d: int = 2,
    config: Optional[TrainConfig] = None,
    validation: Optional[CoefficientDataset] = None,
    hidden_width: Optional[int] = None,
) -> Tuple[AutoencoderModel, float]:
    """
    Train the autoencoder with the coefficients as both input and target.

    Args:
        dataset: Training coefficients (statistics define the standardization)
        d: Bottleneck width
        config: Training configuration (default AE_TRAINING, seed 0)
        validation: Optional validation coefficients for loss monitoring
        hidden_width: Width of the hidden layers (default AE_TRAINING)

    Returns:
        (AutoencoderModel, final reconstruction MSE)
    """
    if len(dataset) == 0:
        raise DomainError("Cannot train an autoencoder on an empty dataset")
    if d <= 0:
        raise DomainError(f"Latent width must be positive, got {d}")
    config = config or TrainConfig.from_recipe(AE_TRAINING)
    hidden_width = hidden_width or AE_TRAINING['hidden_width']

    x_train = _standardized_tensor(dataset, dataset.mean, dataset.std)
    data = TrainingData(x_train, x_train)
    if validation is not None and len(validation):
        x_val = _standardized_tensor(validation, dataset.mean, dataset.std)
        data = TrainingData(x_train, x_train, x_val, x_val)

    with seeded(config.seed):
        network = AutoencoderNetwork(dataset.width, hidden_width, d)

    logger.info("Training autoencoder %d -> %d -> %d -> %d on %d rows",
                dataset.width, hidden_width, d, dataset.width, len(dataset))
    history = train(network, data, config)
    mse = evaluate_loss(network, x_train, x_train)
    logger.info("Autoencoder reconstruction MSE %.6e (initial %.6e)", mse, history.initial_train)

    model = AutoencoderModel(network, dataset.mean.copy(), dataset.std.copy(), history, mse, config)
    return model, mse


def encode(model: AutoencoderModel, dataset: CoefficientDataset) -> np.ndarray:
    """
    Bottleneck activations of every coefficient row.

    Returns:
        N x d array, row i paired with dataset.q[i]

    Raises:
        ShapeMismatchError: if the dataset width differs from the model input
    """
    if dataset.width != model.input_dim:
        raise ShapeMismatchError(
            f"Autoencoder expects {model.input_dim} coefficient columns, got {dataset.width}"
        )
    x = _standardized_tensor(dataset, model.mean, model.std)
    with torch.no_grad():
        return model.network.encoder(x).numpy().copy()


def reconstruct(model: AutoencoderModel, dataset: CoefficientDataset) -> np.ndarray:
    """Decoded coefficients in the original (destandardized) units."""
    if dataset.width != model.input_dim:
        raise ShapeMismatchError(
            f"Autoencoder expects {model.input_dim} coefficient columns, got {dataset.width}"
        )
    x = _standardized_tensor(dataset, model.mean, model.std)
    with torch.no_grad():
        x_hat = model.network(x).numpy()
    return x_hat * model.std + model.mean
