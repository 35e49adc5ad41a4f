"""
Dense network engine: architecture specs, layer stacks, forward/backward.

Networks are float64 torch modules. ``forward`` returns the output together
with a cache of per-layer pre-activations; ``backward`` pulls parameter
gradients for a given output gradient through that cache.
"""

import logging
import re
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import torch
from torch import nn

from src.config import NETWORK_SETTINGS
from src.models.spiral import SpiralLayer, SpiralParams
from src.utils.errors import DomainError, ShapeMismatchError, StaleCacheError

logger = logging.getLogger(__name__)

DTYPE = torch.float64

_SPEC_PATTERN = re.compile(r'^(?:(S)(?:-(\d+(?:-\d+)*))?|(\d+(?:-\d+)*))$')


# ============================================================================
# ARCHITECTURE SPEC
# ============================================================================

@dataclass(frozen=True)
class NetworkSpec:
    """
    Architecture in the "S-32-64" notation.

    A leading "S" inserts the spiral module; each number is the width of
    one hidden dense layer.

    Example:
        >>> NetworkSpec.parse('S-32-64', output_dim=22).layer_widths
        (32, 64)
    """

    layer_widths: Tuple[int, ...]
    use_spiral: bool
    input_dim: int = 1
    output_dim: int = 1

    def __post_init__(self):
        if any(int(w) != w or w <= 0 for w in self.layer_widths):
            raise DomainError(f"Layer widths must be positive integers, got {self.layer_widths}")
        if self.input_dim <= 0 or self.output_dim <= 0:
            raise DomainError("Network input and output widths must be positive")
        if self.use_spiral and self.input_dim != 1:
            raise DomainError("The spiral module takes a scalar input")

    @classmethod
    def parse(cls, label: str, input_dim: int = 1, output_dim: int = 1) -> 'NetworkSpec':
        text = label.strip().upper()
        match = _SPEC_PATTERN.match(text)
        if match is None:
            raise DomainError(f"Cannot parse network spec '{label}'")
        digits = match.group(2) or match.group(3)
        widths = tuple(int(w) for w in digits.split('-')) if digits else ()
        return cls(widths, match.group(1) is not None, input_dim, output_dim)

    @property
    def label(self) -> str:
        parts = (['S'] if self.use_spiral else []) + [str(w) for w in self.layer_widths]
        return '-'.join(parts)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'layer_widths': list(self.layer_widths),
            'use_spiral': self.use_spiral,
            'input_dim': self.input_dim,
            'output_dim': self.output_dim,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'NetworkSpec':
        return cls(tuple(data['layer_widths']), bool(data['use_spiral']),
                   int(data['input_dim']), int(data['output_dim']))


@contextmanager
def seeded(seed: int):
    """Run a block under a fixed torch seed without touching the global stream."""
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        yield


# ============================================================================
# MODULES
# ============================================================================

class CachedNetwork(nn.Module):
    """Base for networks whose forward can record pre-activations."""

    input_dim: int
    output_dim: int

    def forward(self, x: torch.Tensor, cache: Optional[List[torch.Tensor]] = None) -> torch.Tensor:
        raise NotImplementedError


class DenseStack(CachedNetwork):
    """
    Linear layers with per-unit PReLU after every hidden layer.

    Args:
        widths: [in, hidden..., out]
        activate_output: Also apply PReLU after the last layer
    """

    def __init__(self, widths: Sequence[int], activate_output: bool = False):
        super().__init__()
        widths = list(widths)
        if len(widths) < 2:
            raise DomainError(f"A dense stack needs at least input and output widths, got {widths}")
        self.input_dim, self.output_dim = widths[0], widths[-1]

        self.linears = nn.ModuleList(
            nn.Linear(w_in, w_out, dtype=DTYPE) for w_in, w_out in zip(widths[:-1], widths[1:])
        )
        n_activations = len(self.linears) if activate_output else len(self.linears) - 1
        self.activations = nn.ModuleList(
            nn.PReLU(widths[i + 1], init=NETWORK_SETTINGS['prelu_init'], dtype=DTYPE)
            for i in range(n_activations)
        )

        # Uniform in +-sqrt(6 / (fan_in + fan_out)), zero biases
        for linear in self.linears:
            nn.init.xavier_uniform_(linear.weight)
            nn.init.zeros_(linear.bias)

    def forward(self, x, cache=None):
        for i, linear in enumerate(self.linears):
            x = linear(x)
            if cache is not None:
                cache.append(x)
            if i < len(self.activations):
                x = self.activations[i](x)
        return x


class RegressionNetwork(CachedNetwork):
    """
    Mass ratio -> standardized coefficients.

    With the spiral, raw q feeds the spiral module whose 2-D output feeds
    the dense stack. Without it, q is mapped affinely onto [-1, 1].
    """

    def __init__(self, spec: NetworkSpec, q_min: float, q_max: float):
        super().__init__()
        if not q_min < q_max:
            raise DomainError(f"Need q_min < q_max, got [{q_min}, {q_max}]")
        self.spec = spec
        self.input_dim, self.output_dim = 1, spec.output_dim
        self.register_buffer('q_bounds', torch.tensor([q_min, q_max], dtype=DTYPE))

        self.spiral = SpiralLayer(SpiralParams.for_interval(q_min, q_max)) if spec.use_spiral else None
        first = 2 if spec.use_spiral else 1
        self.dense = DenseStack([first, *spec.layer_widths, spec.output_dim])

    def forward(self, q, cache=None):
        q = q.reshape(-1, 1)
        if self.spiral is not None:
            x = self.spiral(q)
            if cache is not None:
                cache.append(x)
        else:
            q_min, q_max = self.q_bounds[0], self.q_bounds[1]
            x = 2.0 * (q - q_min) / (q_max - q_min) - 1.0
        return self.dense(x, cache)


def build_network(spec: NetworkSpec, q_min: float, q_max: float, seed: int) -> RegressionNetwork:
    """Construct a regression network with seeded weight initialization."""
    with seeded(seed):
        return RegressionNetwork(spec, q_min, q_max)


# ============================================================================
# FORWARD / BACKWARD / LOSS
# ============================================================================

@dataclass
class ForwardCache:
    """Everything backward needs from one forward pass."""

    inputs: torch.Tensor
    outputs: torch.Tensor
    pre_activations: List[torch.Tensor] = field(default_factory=list)
    signature: tuple = ()


def _signature(net: nn.Module) -> tuple:
    return tuple((name, tuple(p.shape), id(p)) for name, p in net.named_parameters())


def forward(net: CachedNetwork, x_batch) -> Tuple[torch.Tensor, ForwardCache]:
    """
    Run a batch through the network and keep the graph for backward.

    Args:
        net: Network
        x_batch: N x input_dim inputs (a flat vector is accepted for input_dim 1)

    Returns:
        (N x output_dim outputs, ForwardCache)

    Raises:
        ShapeMismatchError: if the input width is wrong
    """
    x = torch.as_tensor(x_batch, dtype=DTYPE)
    if x.ndim == 1 and net.input_dim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2 or x.shape[1] != net.input_dim:
        raise ShapeMismatchError(
            f"Network expects inputs of width {net.input_dim}, got shape {tuple(x.shape)}"
        )
    pre_activations: List[torch.Tensor] = []
    y = net(x, cache=pre_activations)
    return y, ForwardCache(x, y, pre_activations, _signature(net))


def backward(net: CachedNetwork, cache: ForwardCache, loss_grad) -> Dict[str, torch.Tensor]:
    """
    Gradients of every parameter for a given gradient w.r.t. the outputs.

    Args:
        net: Network the cache was produced by
        cache: ForwardCache from ``forward``
        loss_grad: Gradient of the loss w.r.t. the outputs

    Returns:
        Mapping parameter name -> gradient (same names as named_parameters)

    Raises:
        StaleCacheError: if the network changed shape since the forward pass
        ShapeMismatchError: if loss_grad does not match the outputs
    """
    if cache.signature != _signature(net):
        raise StaleCacheError("Forward cache was produced by a different network")
    loss_grad = torch.as_tensor(loss_grad, dtype=DTYPE)
    if loss_grad.shape != cache.outputs.shape:
        raise ShapeMismatchError(
            f"Loss gradient {tuple(loss_grad.shape)} does not match outputs {tuple(cache.outputs.shape)}"
        )

    named = [(name, p) for name, p in net.named_parameters() if p.requires_grad]
    grads = torch.autograd.grad(
        cache.outputs,
        [p for _, p in named],
        grad_outputs=loss_grad,
        retain_graph=True,
        allow_unused=True,
    )
    return {
        name: torch.zeros_like(p) if g is None else g
        for (name, p), g in zip(named, grads)
    }


def mse_loss(y_pred, y_true) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Mean over the batch of the squared Euclidean row distance.

    Returns:
        (loss, gradient 2 (y_pred - y_true) / N)

    Raises:
        ShapeMismatchError: on unequal shapes
    """
    y_pred = torch.as_tensor(y_pred, dtype=DTYPE)
    y_true = torch.as_tensor(y_true, dtype=DTYPE)
    if y_pred.shape != y_true.shape:
        raise ShapeMismatchError(
            f"Prediction {tuple(y_pred.shape)} and target {tuple(y_true.shape)} differ in shape"
        )
    n = y_pred.shape[0]
    diff = y_pred - y_true
    loss = (diff ** 2).sum() / n
    return loss, 2.0 * diff.detach() / n


# ============================================================================
# FLAT PARAMETER VECTORS (persistence)
# ============================================================================

def parameter_layout(net: nn.Module) -> List[dict]:
    """Names and shapes of the state tensors in flattening order."""
    return [{'name': name, 'shape': list(t.shape)} for name, t in net.state_dict().items()]


def flatten_state(net: nn.Module) -> torch.Tensor:
    tensors = [t.detach().reshape(-1).to(DTYPE) for t in net.state_dict().values()]
    return torch.cat(tensors) if tensors else torch.zeros(0, dtype=DTYPE)


def load_flat_state(net: nn.Module, flat, layout: List[dict]) -> None:
    """Inverse of flatten_state for a network with the same layout."""
    flat = torch.as_tensor(flat, dtype=DTYPE)
    if layout != parameter_layout(net):
        raise ShapeMismatchError("Stored parameter layout does not match the network")
    state, offset = {}, 0
    for entry in layout:
        count = 1
        for dim in entry['shape']:
            count *= dim
        state[entry['name']] = flat[offset:offset + count].reshape(entry['shape'])
        offset += count
    if offset != flat.numel():
        raise ShapeMismatchError(f"Stored vector has {flat.numel()} values, layout needs {offset}")
    net.load_state_dict(state)
