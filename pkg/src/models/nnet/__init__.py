"""
Dense network engine.

Components:
    - NetworkSpec / DenseStack / RegressionNetwork: architectures
    - forward / backward / mse_loss: explicit passes and loss
    - AdamState / adam_step / learning_rate_at: optimizer and schedule
    - TrainConfig / TrainingData / train: mini-batch training loop
"""

from .network import (
    DTYPE,
    NetworkSpec,
    CachedNetwork,
    DenseStack,
    RegressionNetwork,
    ForwardCache,
    build_network,
    seeded,
    forward,
    backward,
    mse_loss,
    parameter_layout,
    flatten_state,
    load_flat_state,
)
from .optimizer import AdamState, adam_step, learning_rate_at
from .trainer import TrainConfig, TrainingData, LossHistory, evaluate_loss, train

__all__ = [
    'DTYPE',
    'NetworkSpec',
    'CachedNetwork',
    'DenseStack',
    'RegressionNetwork',
    'ForwardCache',
    'build_network',
    'seeded',
    'forward',
    'backward',
    'mse_loss',
    'parameter_layout',
    'flatten_state',
    'load_flat_state',
    'AdamState',
    'adam_step',
    'learning_rate_at',
    'TrainConfig',
    'TrainingData',
    'LossHistory',
    'evaluate_loss',
    'train',
]
