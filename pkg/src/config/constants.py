"""
Constants for the spiral surrogate toolkit.

This module contains format-level constants including:
- Array container layout
- Artifact file names
- CSV schemas of the figure exports
- Reference values quoted from the literature
"""

# ============================================================================
# ARRAY CONTAINER
# ============================================================================

CONTAINER_MAGIC = b'GWSURR01'
CONTAINER_HEADER_STRUCT = '<I'          # unsigned 32-bit little-endian

# dtype code -> numpy little-endian dtype string
CONTAINER_DTYPES = {
    'f64': '<f8',
    'c128': '<c16',
}

FORMAT_VERSION = '1.0.0'


# ============================================================================
# ARTIFACT NAMES
# ============================================================================

ARTIFACTS = {
    'waveforms_train': 'waveforms_train.gws',
    'waveforms_val': 'waveforms_val.gws',
    'waveforms_test': 'waveforms_test.gws',
    'basis': 'basis.gws',
    'eim': 'eim.gws',
    'dataset_train': 'dataset_train.gws',
    'dataset_val': 'dataset_val.gws',
    'dataset_test': 'dataset_test.gws',
    'autoencoder': 'autoencoder.gws',
    'ae_report': 'ae_report.json',
    'latent': 'latent_points.gws',
    'pca_report': 'pca_report.json',
    'pca_latent': 'pca_points.gws',
    'spline_report': 'spline_report.json',
    'spline_mismatches': 'mismatches_spline.csv',
    'sweep_table': 'sweep_table.csv',
    'sweep_report': 'sweep_report.json',
    'lock': '.lock',
}

# Per-architecture artifacts, formatted with the architecture label ("S-32-64")
REGRESSOR_ARTIFACTS = {
    'weights': 'regressor_{label}.gws',
    'history': 'history_{label}.csv',
    'report': 'eval_{label}.json',
    'mismatches': 'mismatches_{label}.csv',
    'bench': 'bench_{label}.csv',
}

PROVENANCE_SUFFIX = '.provenance.json'


# ============================================================================
# FIGURE EXPORTS
# ============================================================================

FIGURE_KINDS = ('coeffs', 'latent', 'pca', 'loss', 'mismatch', 'batch')

LATENT_COLUMNS = ['q', 'y1', 'y2', 'angle_unwrapped', 'radius']
LOSS_COLUMNS = ['epoch', 'lr', 'train_loss', 'val_loss']
MISMATCH_COLUMNS = ['q', 'mismatch', 'extrapolated']
THROUGHPUT_COLUMNS = ['batch_size', 'median_seconds', 'coefficients_per_second', 'repetitions']
SWEEP_COLUMNS = ['network', 'max_M', 'median_M', 'p95_M', 'max_batch_estimate']
BATCH_COLUMNS = ['network', 'max_batch_estimate', 'median_M', 'p95_M', 'max_M']

# One CSV per figure kind, written by export-fig
FIGURE_FILES = {kind: f'fig_{kind}.csv' for kind in FIGURE_KINDS}


# ============================================================================
# REFERENCE VALUES (copied into the PCA and spline reports, never asserted)
# ============================================================================

REFERENCE_VALUES = {
    'ae_mse': 6.82e-5,
    'pca_mse': 3.82e-2,
    'basis_size_q1to2': 11,
    'best_median_mismatch_q1to2': 9.41e-9,
    'spline_mismatch_min_max_mean': (1.05e-12, 1.26e-8, 1.21e-9),
}


# ============================================================================
# CHIRP REFERENCE RUN (default grid, 1000 equispaced q in [1, 2], tol 1e-10)
# ============================================================================

CHIRP_REFERENCE_RUN = {
    'basis_size': 8,
    'condition_number': 24.6322136,
    # Sign changes of Re a_j over q, in node selection order
    're_zero_crossings': (0, 1, 2, 4, 0, 3, 1, 0),
}
