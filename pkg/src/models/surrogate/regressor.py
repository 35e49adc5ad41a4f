"""
Coefficient regressors q -> a(q), with or without the spiral module.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
import torch

from src.config import NETWORK_SETTINGS, REGRESSOR_TRAINING
from src.models.eim import CoefficientDataset, unstack_real
from src.models.nnet import (
    DTYPE,
    LossHistory,
    NetworkSpec,
    RegressionNetwork,
    TrainConfig,
    TrainingData,
    build_network,
    train,
)
from src.utils.errors import ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass
class RegressorModel:
    """
    Trained regressor with the destandardization of its targets.

    Attributes:
        spec: Architecture
        network: Trained network (outputs standardized stacked coefficients)
        mean, std: Target statistics of the training dataset
        q_range: Interval the network was trained on
        history: Per-epoch losses
        config: Training configuration
        eim_ref: Hash of the interpolant artifact the targets came from
    """

    spec: NetworkSpec
    network: RegressionNetwork = field(repr=False)
    mean: np.ndarray = field(repr=False)
    std: np.ndarray = field(repr=False)
    q_range: Tuple[float, float]
    history: LossHistory = field(default_factory=LossHistory, repr=False)
    config: Optional[TrainConfig] = None
    eim_ref: Optional[str] = None

    @property
    def label(self) -> str:
        return self.spec.label

    @property
    def n_nodes(self) -> int:
        return self.spec.output_dim // 2

    def spiral_params(self) -> Optional[dict]:
        if self.network.spiral is None:
            return None
        return self.network.spiral.params().to_dict()

    def to_dict(self) -> dict:
        return {
            'spec': self.spec.to_dict(),
            'q_range': list(self.q_range),
            'train_config': self.config.to_dict() if self.config else None,
            'spiral_params': self.spiral_params(),
            'eim_ref': self.eim_ref,
        }


def _resolve_spec(spec: Union[str, NetworkSpec], width: int) -> NetworkSpec:
    if isinstance(spec, str):
        return NetworkSpec.parse(spec, input_dim=1, output_dim=width)
    if spec.output_dim != width or spec.input_dim != 1:
        raise ShapeMismatchError(
            f"Network {spec.label} maps {spec.input_dim} -> {spec.output_dim}, "
            f"dataset needs 1 -> {width}"
        )
    return spec


def train_regressor(
    dataset: CoefficientDataset,
    spec: Union[str, NetworkSpec],
    config: Optional[TrainConfig] = None,
    validation: Optional[CoefficientDataset] = None,
) -> RegressorModel:
    """
    Train a network on standardized coefficients with the MSE loss.

    Args:
        dataset: Training split (its statistics define the standardization)
        spec: Architecture, e.g. "S-32-64"
        config: Training configuration (default REGRESSOR_TRAINING, seed 0)
        validation: Validation split for loss monitoring

    Returns:
        RegressorModel trained to the final epoch
    """
    spec = _resolve_spec(spec, dataset.width)
    config = config or TrainConfig.from_recipe(REGRESSOR_TRAINING)
    q_range = (float(dataset.q.min()), float(dataset.q.max()))

    network = build_network(spec, *q_range, seed=config.seed)
    x_val = y_val = None
    if validation is not None and len(validation):
        x_val, y_val = validation.q, dataset.standardize(validation.a)
    data = TrainingData(dataset.q, dataset.standardized, x_val, y_val)

    logger.info("Training regressor %s on %d rows (%d epochs)", spec.label, len(dataset), config.epochs)
    history = train(network, data, config)

    model = RegressorModel(spec, network, dataset.mean.copy(), dataset.std.copy(),
                           q_range, history, config)
    if model.spiral_params() is not None:
        logger.info("Trained spiral of %s: %s", spec.label, model.network.spiral.extra_repr())
    return model


def predict_standardized(model: RegressorModel, q_batch) -> np.ndarray:
    """
    Raw network outputs for a batch of q.

    Rows are evaluated in fixed-size padded blocks so every row goes through
    the same kernels whatever the batch size.
    """
    q = np.asarray(q_batch, dtype=np.float64).reshape(-1)
    block = NETWORK_SETTINGS['inference_block']
    out = np.empty((q.size, model.spec.output_dim), dtype=np.float64)
    padded = torch.full((block, 1), model.q_range[0], dtype=DTYPE)

    with torch.no_grad():
        for start in range(0, q.size, block):
            chunk = q[start:start + block]
            padded.fill_(model.q_range[0])
            padded[:chunk.size, 0] = torch.from_numpy(np.array(chunk))
            out[start:start + chunk.size] = model.network(padded)[:chunk.size].numpy()
    return out


def predict_coefficients(model: RegressorModel, q_batch) -> np.ndarray:
    """
    Complex EIM coefficients for each q.

    Returns:
        N x m complex matrix, destandardized and unstacked
    """
    standardized = predict_standardized(model, q_batch)
    return unstack_real(standardized * model.std + model.mean)
