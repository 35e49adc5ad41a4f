"""
Configuration module for the spiral surrogate toolkit.

This module contains all project-wide settings including:
- File paths and directories
- Waveform grid and fiducial model defaults
- Reduced basis, dataset and training recipes
- Logging and output settings
"""

from pathlib import Path

# ============================================================================
# PROJECT PATHS
# ============================================================================
# Get the project root directory
PROJECT_ROOT = Path(__file__).parent.parent.parent

# Data directories
DATA_DIR = PROJECT_ROOT / 'data'
CONFIGS_DIR = DATA_DIR / 'configs'
OUTPUT_DIR = DATA_DIR / 'output'

# Logs directory
LOGS_DIR = PROJECT_ROOT / 'logs'


# ============================================================================
# WAVEFORM CONFIGURATION
# ============================================================================
# Dimensionless time grid and coalescence time of the built-in chirp family.
# ~40 cycles at q=1 and >= 10 samples per cycle at the end of the grid.
WAVEFORM_CONFIG = {
    't_start': 0.0,
    't_end': 4990.0,
    'n_samples': 4096,
    't_c': 5000.0,
}


# ============================================================================
# REDUCED BASIS / EIM
# ============================================================================
ROM_CONFIG = {
    'tol': 1e-10,                        # squared projection error
    'degenerate_std': 1e-12,             # relative std below which a column is constant
}


# ============================================================================
# DATASETS
# ============================================================================
# Desk-scale defaults; full-scale presets live in data/configs/
DATASET_CONFIG = {
    'q_min': 1.0,
    'q_max': 2.0,
    'n_train': 1000,                     # equispaced
    'n_val': 200,                        # uniform random
    'n_test': 200,                       # uniform random
}


# ============================================================================
# TRAINING RECIPES
# ============================================================================
# Autoencoder: 100 epochs, batch 32, lr 1e-3, gamma 0.9 every 15 epochs
AE_TRAINING = {
    'epochs': 100,
    'batch_size': 32,
    'lr0': 1e-3,
    'schedule_gamma': 0.9,
    'schedule_step_epochs': 15,
    'hidden_width': 128,
    'latent_dim': 2,
}

# Regressors: desk-scale epochs, q in [1,2] recipe otherwise
REGRESSOR_TRAINING = {
    'epochs': 500,
    'batch_size': 16,
    'lr0': 1e-3,
    'schedule_gamma': 0.95,
    'schedule_step_epochs': 150,
}

# Architectures in the "S-32-64" notation
NETWORK_SPECS = {
    'default': 'S-32-64',
    'sweep': ['32-64', '32-64-128'],
}

NETWORK_SETTINGS = {
    'prelu_init': 0.25,
    'adam_betas': (0.9, 0.999),
    'adam_eps': 1e-8,
    'inference_block': 256,              # rows per padded inference block
    'log_every': 50,                     # epochs between training log lines
}


# ============================================================================
# BENCHMARK CONFIGURATION
# ============================================================================
BENCHMARK_CONFIG = {
    'batch_sizes': [1, 16, 256, 1024, 4096],
    'repetitions': 10,
    'memory_budget_bytes': 11 * 1024 ** 3,
}


# ============================================================================
# OUTPUT CONFIGURATIONS
# ============================================================================
OUTPUT_CONFIG = {
    'pretty_print_json': True,
    'json_indent': 2,
    'csv_float_format': '%.17g',
}

# Logging configuration
LOGGING_CONFIG = {
    'level': 'INFO',                     # DEBUG, INFO, WARNING, ERROR
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'log_file': LOGS_DIR / 'pipeline.log',
}
