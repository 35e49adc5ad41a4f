"""
Learnable spiral input module.

Maps a scalar mass ratio to an angle and then onto a spiral:

    theta = w * q + b
    s_x   = (alpha + beta * theta) * cos(theta)
    s_y   = (alpha + beta * theta) * sin(theta)

The backward pass is analytic: with r = alpha + beta * theta,

    ds_x/dalpha = cos(theta)        ds_y/dalpha = sin(theta)
    ds_x/dbeta  = theta cos(theta)  ds_y/dbeta  = theta sin(theta)
    ds_x/dtheta = beta cos(theta) - r sin(theta)
    ds_y/dtheta = beta sin(theta) + r cos(theta)

and dtheta/dw = q, dtheta/db = 1, dtheta/dq = w.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import torch
from torch import nn

from src.utils.errors import StaleCacheError

logger = logging.getLogger(__name__)

Scalar = Union[float, torch.Tensor]


@dataclass
class SpiralParams:
    """Spiral parameters w, b, alpha, beta (no sign constraints)."""

    w: Scalar
    b: Scalar
    alpha: Scalar
    beta: Scalar

    @classmethod
    def for_interval(cls, q_min: float, q_max: float, turns: float = 3.0) -> 'SpiralParams':
        """
        Start with ``turns`` full turns over [q_min, q_max] and a radius that
        roughly doubles across the interval.
        """
        w = 2.0 * math.pi * turns / (q_max - q_min)
        alpha = 1.0
        return cls(w=w, b=-w * q_min, alpha=alpha, beta=alpha / (2.0 * math.pi * turns))

    def to_dict(self) -> dict:
        return {name: float(getattr(self, name)) for name in ('w', 'b', 'alpha', 'beta')}


@dataclass
class SpiralCache:
    """Inputs and angles of one forward pass."""

    q: torch.Tensor
    theta: torch.Tensor


@dataclass
class SpiralGradients:
    """Batch-summed parameter gradients plus per-row input gradients."""

    w: torch.Tensor
    b: torch.Tensor
    alpha: torch.Tensor
    beta: torch.Tensor
    q: torch.Tensor


def _as_tensor(value) -> torch.Tensor:
    return torch.as_tensor(value, dtype=torch.float64)


def spiral_forward(q_batch, params: SpiralParams) -> Tuple[torch.Tensor, SpiralCache]:
    """
    Map mass ratios onto the spiral.

    Args:
        q_batch: N mass ratios (any array-like)
        params: Spiral parameters

    Returns:
        (N x 2 tensor of (s_x, s_y), cache holding q and theta)
    """
    q = _as_tensor(q_batch).reshape(-1)
    theta = params.w * q + params.b
    radius = params.alpha + params.beta * theta
    points = torch.stack((radius * torch.cos(theta), radius * torch.sin(theta)), dim=1)
    return points, SpiralCache(q=q, theta=theta)


def spiral_backward(grad_out, cache: SpiralCache, params: SpiralParams) -> SpiralGradients:
    """
    Back-propagate output gradients through the spiral.

    Args:
        grad_out: N x 2 gradient of the loss w.r.t. (s_x, s_y)
        cache: Cache from the matching spiral_forward
        params: Parameters used in that forward pass

    Returns:
        SpiralGradients

    Raises:
        StaleCacheError: if grad_out rows do not match the cached batch
    """
    grad_out = _as_tensor(grad_out)
    if grad_out.shape != (cache.theta.shape[0], 2):
        raise StaleCacheError(
            f"Gradient of shape {tuple(grad_out.shape)} does not match cached batch "
            f"of {cache.theta.shape[0]} rows"
        )

    theta = cache.theta
    cos, sin = torch.cos(theta), torch.sin(theta)
    radius = params.alpha + params.beta * theta
    gx, gy = grad_out[:, 0], grad_out[:, 1]

    along = gx * cos + gy * sin
    d_theta = gx * (params.beta * cos - radius * sin) + gy * (params.beta * sin + radius * cos)

    return SpiralGradients(
        w=(d_theta * cache.q).sum(),
        b=d_theta.sum(),
        alpha=along.sum(),
        beta=(along * theta).sum(),
        q=d_theta * params.w,
    )


class SpiralFunction(torch.autograd.Function):
    """Autograd wrapper routing gradients through spiral_backward."""

    @staticmethod
    def forward(ctx, q, w, b, alpha, beta):
        points, cache = spiral_forward(q, SpiralParams(w, b, alpha, beta))
        ctx.save_for_backward(cache.q, cache.theta, w, b, alpha, beta)
        return points

    @staticmethod
    def backward(ctx, grad_out):
        q, theta, w, b, alpha, beta = ctx.saved_tensors
        grads = spiral_backward(grad_out, SpiralCache(q, theta), SpiralParams(w, b, alpha, beta))
        return grads.q, grads.w, grads.b, grads.alpha, grads.beta


class SpiralLayer(nn.Module):
    """
    Spiral module with four learnable scalars, q (N x 1) -> (N x 2).

    Example:
        >>> layer = SpiralLayer(SpiralParams.for_interval(1.0, 2.0))
        >>> layer(torch.tensor([[1.5]], dtype=torch.float64)).shape
        torch.Size([1, 2])
    """

    def __init__(self, params: SpiralParams):
        super().__init__()
        self.w = nn.Parameter(_as_tensor(float(params.w)))
        self.b = nn.Parameter(_as_tensor(float(params.b)))
        self.alpha = nn.Parameter(_as_tensor(float(params.alpha)))
        self.beta = nn.Parameter(_as_tensor(float(params.beta)))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return SpiralFunction.apply(x.reshape(-1), self.w, self.b, self.alpha, self.beta)

    def params(self) -> SpiralParams:
        return SpiralParams(
            w=self.w.item(), b=self.b.item(), alpha=self.alpha.item(), beta=self.beta.item()
        )

    def extra_repr(self) -> str:
        p = self.params()
        return f"w={p.w:.4g}, b={p.b:.4g}, alpha={p.alpha:.4g}, beta={p.beta:.4g}"
