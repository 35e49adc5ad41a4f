"""
CPU inference throughput and a memory-budget estimate of the largest batch.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.config import BENCHMARK_CONFIG
from src.utils.errors import DomainError
from .regressor import RegressorModel, predict_coefficients

logger = logging.getLogger(__name__)

_BYTES = 8


@dataclass(frozen=True)
class ThroughputRow:
    batch_size: int
    median_seconds: float
    coefficients_per_second: float
    repetitions: int

    def as_tuple(self) -> tuple:
        return (self.batch_size, self.median_seconds, self.coefficients_per_second, self.repetitions)


@dataclass
class BenchmarkResult:
    label: str
    rows: List[ThroughputRow] = field(default_factory=list)
    parameter_bytes: int = 0
    activation_bytes_per_row: int = 0
    memory_budget_bytes: int = 0
    max_batch_estimate: int = 0

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'parameter_bytes': self.parameter_bytes,
            'activation_bytes_per_row': self.activation_bytes_per_row,
            'memory_budget_bytes': self.memory_budget_bytes,
            'max_batch_estimate': self.max_batch_estimate,
            'rows': [row.__dict__ for row in self.rows],
        }


def parameter_bytes(model: RegressorModel) -> int:
    return sum(p.numel() for p in model.network.parameters()) * _BYTES


def activation_bytes_per_row(model: RegressorModel) -> int:
    """Input, spiral output, and pre/post-activation of every dense layer, per row."""
    values = 1
    if model.spec.use_spiral:
        values += 2 * 2
    values += sum(2 * w for w in model.spec.layer_widths)
    values += model.spec.output_dim
    return values * _BYTES


def estimate_max_batch(model: RegressorModel, budget_bytes: Optional[int] = None) -> int:
    """Largest batch whose activations fit in the budget next to the parameters."""
    budget = BENCHMARK_CONFIG['memory_budget_bytes'] if budget_bytes is None else budget_bytes
    free = budget - parameter_bytes(model)
    return max(0, free // activation_bytes_per_row(model))


def benchmark(
    model: RegressorModel,
    batch_sizes: Optional[Sequence[int]] = None,
    repetitions: Optional[int] = None,
    seed: int = 0,
) -> BenchmarkResult:
    """
    Median wall time of predict_coefficients per batch size.

    Raises:
        DomainError: for a non-positive batch size or repetition count
    """
    batch_sizes = list(BENCHMARK_CONFIG['batch_sizes'] if batch_sizes is None else batch_sizes)
    repetitions = BENCHMARK_CONFIG['repetitions'] if repetitions is None else int(repetitions)
    if not batch_sizes:
        raise DomainError("At least one batch size is required")
    if any(b <= 0 for b in batch_sizes):
        raise DomainError(f"Batch sizes must be positive, got {batch_sizes}")
    if repetitions <= 0:
        raise DomainError(f"Repetitions must be positive, got {repetitions}")

    rng = np.random.default_rng(seed)
    q_lo, q_hi = model.q_range
    result = BenchmarkResult(
        label=model.label,
        parameter_bytes=parameter_bytes(model),
        activation_bytes_per_row=activation_bytes_per_row(model),
        memory_budget_bytes=BENCHMARK_CONFIG['memory_budget_bytes'],
        max_batch_estimate=estimate_max_batch(model),
    )

    for size in batch_sizes:
        q = rng.uniform(q_lo, q_hi, size)
        predict_coefficients(model, q)                  # warm-up
        timings = []
        for _ in range(repetitions):
            start = time.perf_counter()
            predict_coefficients(model, q)
            timings.append(time.perf_counter() - start)
        median = float(np.median(timings))
        rate = size * model.n_nodes / median if median > 0 else float('inf')
        result.rows.append(ThroughputRow(size, median, rate, repetitions))
        logger.info("%s batch %d: %.3e s, %.3e coefficients/s", model.label, size, median, rate)

    return result
