"""
End-to-end surrogate package.

Components:
    - RegressorModel / train_regressor / predict_coefficients: network surrogates
    - SplineModel / fit_spline_baseline: cubic-spline baseline
    - MismatchReport / evaluate: mismatch statistics against the fiducial model
    - benchmark / estimate_max_batch: inference throughput
    - compare_architectures: spiral vs plain architecture sweep
"""

from .regressor import (
    RegressorModel,
    train_regressor,
    predict_standardized,
    predict_coefficients,
)
from .spline_baseline import SplineModel, fit_spline_baseline, predict_spline_coefficients
from .evaluation import (
    MismatchReport,
    evaluate,
    evaluate_exact_coefficients,
    nearest_rank_percentile,
)
from .benchmark import (
    ThroughputRow,
    BenchmarkResult,
    benchmark,
    estimate_max_batch,
    parameter_bytes,
    activation_bytes_per_row,
)
from .sweep import SweepRow, compare_architectures, paired_specs

__all__ = [
    'RegressorModel',
    'train_regressor',
    'predict_standardized',
    'predict_coefficients',
    'SplineModel',
    'fit_spline_baseline',
    'predict_spline_coefficients',
    'MismatchReport',
    'evaluate',
    'evaluate_exact_coefficients',
    'nearest_rank_percentile',
    'ThroughputRow',
    'BenchmarkResult',
    'benchmark',
    'estimate_max_batch',
    'parameter_bytes',
    'activation_bytes_per_row',
    'SweepRow',
    'compare_architectures',
    'paired_specs',
]
