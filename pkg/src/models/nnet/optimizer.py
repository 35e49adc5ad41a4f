"""Adam state, explicit update steps and the step learning-rate schedule."""

import logging
from typing import Dict, Iterable, Mapping, Tuple

import torch

from src.config import NETWORK_SETTINGS
from src.utils.errors import DomainError, ShapeMismatchError

logger = logging.getLogger(__name__)


class AdamState:
    """
    Adam moments and step counter for one set of parameters.

    Wraps ``torch.optim.Adam``; gradients are handed in explicitly through
    ``adam_step`` rather than read from ``.grad`` left over by autograd.
    """

    def __init__(
        self,
        params: Iterable[torch.nn.Parameter],
        lr: float,
        betas: Tuple[float, float] = None,
        eps: float = None,
    ):
        self.params = list(params)
        self.betas = tuple(betas or NETWORK_SETTINGS['adam_betas'])
        self.eps = NETWORK_SETTINGS['adam_eps'] if eps is None else eps
        self.optimizer = torch.optim.Adam(self.params, lr=lr, betas=self.betas, eps=self.eps)
        self.t = 0

    @property
    def lr(self) -> float:
        return self.optimizer.param_groups[0]['lr']

    @lr.setter
    def lr(self, value: float):
        for group in self.optimizer.param_groups:
            group['lr'] = value

    def moments(self, param: torch.nn.Parameter) -> Tuple[torch.Tensor, torch.Tensor]:
        """First and second moment buffers (zeros before the first step)."""
        state = self.optimizer.state.get(param, {})
        m = state.get('exp_avg', torch.zeros_like(param))
        v = state.get('exp_avg_sq', torch.zeros_like(param))
        return m, v


def adam_step(
    params: Mapping[str, torch.nn.Parameter],
    grads: Mapping[str, torch.Tensor],
    state: AdamState,
) -> Dict[str, torch.nn.Parameter]:
    """
    Apply one bias-corrected Adam update in place.

    Args:
        params: Named parameters (e.g. ``dict(net.named_parameters())``)
        grads: Gradients keyed like ``params``
        state: Optimizer state owning those parameters

    Returns:
        The updated parameters
    """
    for name, param in params.items():
        grad = grads.get(name)
        if grad is None:
            param.grad = None
            continue
        if grad.shape != param.shape:
            raise ShapeMismatchError(
                f"Gradient for '{name}' has shape {tuple(grad.shape)}, parameter {tuple(param.shape)}"
            )
        param.grad = grad.detach().to(param.dtype)

    state.optimizer.step()
    state.optimizer.zero_grad(set_to_none=True)
    state.t += 1
    return dict(params)


def learning_rate_at(epoch: int, lr0: float, gamma: float, step: int) -> float:
    """lr0 * gamma ** floor(epoch / step)."""
    if step <= 0:
        raise DomainError(f"Schedule step must be positive, got {step}")
    return lr0 * gamma ** (epoch // step)
