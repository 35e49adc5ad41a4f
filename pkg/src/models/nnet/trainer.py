"""
Mini-batch training loop shared by the autoencoder and the regressors.

One epoch walks a seeded shuffle of the training rows (last short batch
kept), runs forward -> mse_loss -> backward -> adam_step per batch, then
evaluates the full validation split. The learning rate follows
lr0 * gamma ** floor(epoch / step).
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import torch
from torch.optim.lr_scheduler import LambdaLR
from torch.utils.data import DataLoader, TensorDataset

from src.config import NETWORK_SETTINGS
from src.utils.errors import DomainError, ShapeMismatchError, TrainingDivergedError
from .network import DTYPE, CachedNetwork, backward, forward, mse_loss
from .optimizer import AdamState, adam_step, learning_rate_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    """Epochs, batch size and step-decay schedule of one training run."""

    epochs: int
    batch_size: int
    lr0: float
    schedule_gamma: float
    schedule_step_epochs: int
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise DomainError(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size <= 0:
            raise DomainError(f"batch_size must be positive, got {self.batch_size}")
        if not self.lr0 > 0:
            raise DomainError(f"lr0 must be positive, got {self.lr0}")
        if not 0.0 < self.schedule_gamma <= 1.0:
            raise DomainError(f"schedule_gamma must lie in (0, 1], got {self.schedule_gamma}")
        if self.schedule_step_epochs <= 0:
            raise DomainError(f"schedule_step_epochs must be positive, got {self.schedule_step_epochs}")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")

    def learning_rate(self, epoch: int) -> float:
        return learning_rate_at(epoch, self.lr0, self.schedule_gamma, self.schedule_step_epochs)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_recipe(cls, recipe: dict, seed: int = 0, **overrides) -> 'TrainConfig':
        """Build from an AE_TRAINING / REGRESSOR_TRAINING style dict."""
        values = {k: recipe[k] for k in
                  ('epochs', 'batch_size', 'lr0', 'schedule_gamma', 'schedule_step_epochs')}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(seed=seed, **values)


@dataclass
class TrainingData:
    """Input/target tensors of the training and (optional) validation split."""

    x_train: torch.Tensor
    y_train: torch.Tensor
    x_val: Optional[torch.Tensor] = None
    y_val: Optional[torch.Tensor] = None

    def __post_init__(self):
        self.x_train = torch.as_tensor(self.x_train, dtype=DTYPE)
        self.y_train = torch.as_tensor(self.y_train, dtype=DTYPE)
        if self.x_train.shape[0] != self.y_train.shape[0]:
            raise ShapeMismatchError(
                f"{self.x_train.shape[0]} training inputs but {self.y_train.shape[0]} targets"
            )
        if self.x_train.shape[0] == 0:
            raise DomainError("Training split is empty")
        if (self.x_val is None) != (self.y_val is None):
            raise DomainError("Validation inputs and targets must be given together")
        if self.x_val is not None:
            self.x_val = torch.as_tensor(self.x_val, dtype=DTYPE)
            self.y_val = torch.as_tensor(self.y_val, dtype=DTYPE)

    @property
    def has_validation(self) -> bool:
        return self.x_val is not None and self.x_val.shape[0] > 0


@dataclass
class LossHistory:
    """Per-epoch losses and learning rates; initial_train is the loss before epoch 0."""

    train: List[float] = field(default_factory=list)
    val: List[float] = field(default_factory=list)
    lr: List[float] = field(default_factory=list)
    initial_train: Optional[float] = None

    def __len__(self) -> int:
        return len(self.train)

    @property
    def final_train(self) -> Optional[float]:
        return self.train[-1] if self.train else self.initial_train

    def rows(self):
        """(epoch, lr, train_loss, val_loss) tuples for the loss-curve export."""
        return list(zip(range(len(self.train)), self.lr, self.train, self.val))


def evaluate_loss(net: CachedNetwork, x, y) -> float:
    """MSE of a whole split without building a graph."""
    with torch.no_grad():
        prediction = net(torch.as_tensor(x, dtype=DTYPE))
        loss, _ = mse_loss(prediction, y)
    return loss.item()


def train(
    net: CachedNetwork,
    data: TrainingData,
    config: TrainConfig,
    log_every: Optional[int] = None,
) -> LossHistory:
    """
    Train ``net`` in place.

    Args:
        net: Network to train
        data: Training and validation tensors
        config: Epochs, batch size and schedule
        log_every: Epochs between progress lines (default from NETWORK_SETTINGS)

    Returns:
        LossHistory with one entry per epoch

    Raises:
        TrainingDivergedError: on a non-finite batch loss
    """
    log_every = log_every or NETWORK_SETTINGS['log_every']
    history = LossHistory(initial_train=evaluate_loss(net, data.x_train, data.y_train))
    if config.epochs == 0:
        return history

    params = dict(net.named_parameters())
    state = AdamState(params.values(), lr=config.lr0)
    scheduler = LambdaLR(
        state.optimizer,
        lambda epoch: config.schedule_gamma ** (epoch // config.schedule_step_epochs),
    )

    shuffle = torch.Generator().manual_seed(config.seed)
    loader = DataLoader(
        TensorDataset(data.x_train, data.y_train),
        batch_size=config.batch_size,
        shuffle=True,
        generator=shuffle,
    )
    n_rows = data.x_train.shape[0]

    net.train()
    for epoch in range(config.epochs):
        lr = state.lr
        total = 0.0
        for batch, (xb, yb) in enumerate(loader):
            outputs, cache = forward(net, xb)
            loss, loss_grad = mse_loss(outputs, yb)
            value = loss.item()
            if not math.isfinite(value):
                raise TrainingDivergedError(epoch, batch, value)

            grads = backward(net, cache, loss_grad)
            adam_step(params, grads, state)
            total += value * xb.shape[0]

        train_loss = total / n_rows
        val_loss = evaluate_loss(net, data.x_val, data.y_val) if data.has_validation else math.nan
        history.train.append(train_loss)
        history.val.append(val_loss)
        history.lr.append(lr)
        scheduler.step()

        if (epoch + 1) % log_every == 0 or epoch + 1 == config.epochs:
            logger.info("epoch %d/%d  lr=%.3e  train=%.6e  val=%.6e",
                        epoch + 1, config.epochs, lr, train_loss, val_loss)

    net.eval()
    return history
