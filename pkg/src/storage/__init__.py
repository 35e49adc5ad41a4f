"""
Artifact storage: array container, per-type persistence, provenance, CSV exports.
"""

from .array_container import (
    encode_array,
    decode_array,
    write_array,
    read_array,
    atomic_write_bytes,
    atomic_write_text,
)
from .persistence import (
    save_waveform_set,
    load_waveform_set,
    save_basis,
    load_basis,
    save_eim,
    load_eim,
    save_dataset,
    load_dataset,
    save_regressor,
    load_regressor,
    save_autoencoder,
    load_autoencoder,
    save_latent_points,
    load_latent_points,
    pca_summary,
)
from .provenance import (
    file_sha256,
    provenance_path,
    write_json,
    read_json,
    write_provenance,
    read_provenance,
    OutputLock,
)
from .figure_export import (
    render_csv,
    write_csv,
    read_csv,
    figure_filename,
    coefficient_columns,
    coefficient_table,
    latent_table,
    loss_table,
    mismatch_table,
    throughput_table,
    sweep_table,
    batch_table,
    loss_history_from_rows,
)

__all__ = [
    'encode_array',
    'decode_array',
    'write_array',
    'read_array',
    'atomic_write_bytes',
    'atomic_write_text',
    'save_waveform_set',
    'load_waveform_set',
    'save_basis',
    'load_basis',
    'save_eim',
    'load_eim',
    'save_dataset',
    'load_dataset',
    'save_regressor',
    'load_regressor',
    'save_autoencoder',
    'load_autoencoder',
    'save_latent_points',
    'load_latent_points',
    'pca_summary',
    'file_sha256',
    'provenance_path',
    'write_json',
    'read_json',
    'write_provenance',
    'read_provenance',
    'OutputLock',
    'render_csv',
    'write_csv',
    'read_csv',
    'figure_filename',
    'coefficient_columns',
    'coefficient_table',
    'latent_table',
    'loss_table',
    'mismatch_table',
    'throughput_table',
    'sweep_table',
    'batch_table',
    'loss_history_from_rows',
]
