"""Configuration package for the spiral surrogate toolkit."""

from .config import (
    PROJECT_ROOT,
    DATA_DIR,
    CONFIGS_DIR,
    OUTPUT_DIR,
    LOGS_DIR,
    WAVEFORM_CONFIG,
    ROM_CONFIG,
    DATASET_CONFIG,
    AE_TRAINING,
    REGRESSOR_TRAINING,
    NETWORK_SPECS,
    NETWORK_SETTINGS,
    BENCHMARK_CONFIG,
    OUTPUT_CONFIG,
    LOGGING_CONFIG,
)

from .constants import (
    CONTAINER_MAGIC,
    CONTAINER_HEADER_STRUCT,
    CONTAINER_DTYPES,
    FORMAT_VERSION,
    ARTIFACTS,
    REGRESSOR_ARTIFACTS,
    PROVENANCE_SUFFIX,
    FIGURE_KINDS,
    LATENT_COLUMNS,
    LOSS_COLUMNS,
    MISMATCH_COLUMNS,
    THROUGHPUT_COLUMNS,
    SWEEP_COLUMNS,
    BATCH_COLUMNS,
    FIGURE_FILES,
    REFERENCE_VALUES,
    CHIRP_REFERENCE_RUN,
)
from .run_config import RunConfig, RunConfigValidator

__all__ = [
    'PROJECT_ROOT',
    'DATA_DIR',
    'CONFIGS_DIR',
    'OUTPUT_DIR',
    'LOGS_DIR',
    'WAVEFORM_CONFIG',
    'ROM_CONFIG',
    'DATASET_CONFIG',
    'AE_TRAINING',
    'REGRESSOR_TRAINING',
    'NETWORK_SPECS',
    'NETWORK_SETTINGS',
    'BENCHMARK_CONFIG',
    'OUTPUT_CONFIG',
    'LOGGING_CONFIG',
    'CONTAINER_MAGIC',
    'CONTAINER_HEADER_STRUCT',
    'CONTAINER_DTYPES',
    'FORMAT_VERSION',
    'ARTIFACTS',
    'REGRESSOR_ARTIFACTS',
    'PROVENANCE_SUFFIX',
    'FIGURE_KINDS',
    'LATENT_COLUMNS',
    'LOSS_COLUMNS',
    'MISMATCH_COLUMNS',
    'THROUGHPUT_COLUMNS',
    'SWEEP_COLUMNS',
    'BATCH_COLUMNS',
    'FIGURE_FILES',
    'REFERENCE_VALUES',
    'CHIRP_REFERENCE_RUN',
    'RunConfig',
    'RunConfigValidator',
]
