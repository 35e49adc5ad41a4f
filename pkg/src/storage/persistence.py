"""
Save/load of every pipeline artifact through the array container.
"""

import logging
from pathlib import Path
from typing import Tuple

import numpy as np
import torch

from src.models.eim import CoefficientDataset, EimModel
from src.models.latent import AutoencoderModel, AutoencoderNetwork, PcaModel
from src.models.nnet import (
    LossHistory,
    NetworkSpec,
    RegressionNetwork,
    TrainConfig,
    flatten_state,
    load_flat_state,
    parameter_layout,
)
from src.models.rom import ReducedBasis
from src.models.surrogate import RegressorModel
from src.utils.errors import CorruptArtifactError
from src.waveforms import TimeGrid, WaveformSet
from .array_container import PathLike, read_array, write_array

logger = logging.getLogger(__name__)


def _expect_kind(metadata: dict, kind: str, path: PathLike) -> None:
    if metadata.get('kind') != kind:
        raise CorruptArtifactError(f"{path}: expected a {kind} artifact, found {metadata.get('kind')!r}")


def _floats(values) -> list:
    return [float(v) for v in np.asarray(values).reshape(-1)]


# ============================================================================
# WAVEFORMS / BASIS / INTERPOLANT / DATASETS
# ============================================================================

def save_waveform_set(path: PathLike, waveforms: WaveformSet) -> Path:
    return write_array(path, waveforms.waveforms, {
        'kind': 'waveform_set',
        'q_values': _floats(waveforms.q_values),
        'grid': waveforms.grid.to_dict(),
    })


def load_waveform_set(path: PathLike) -> WaveformSet:
    values, meta = read_array(path)
    _expect_kind(meta, 'waveform_set', path)
    return WaveformSet(np.array(meta['q_values']), values, TimeGrid.from_dict(meta['grid']))


def save_basis(path: PathLike, basis: ReducedBasis) -> Path:
    return write_array(path, basis.basis, {
        'kind': 'reduced_basis',
        'greedy_q': _floats(basis.greedy_q),
        'greedy_indices': [int(i) for i in basis.greedy_indices],
        'greedy_errors': _floats(basis.greedy_errors),
        'tol': float(basis.tol),
        'grid': basis.grid.to_dict(),
    })


def load_basis(path: PathLike) -> ReducedBasis:
    values, meta = read_array(path)
    _expect_kind(meta, 'reduced_basis', path)
    return ReducedBasis(
        basis=values,
        greedy_q=np.array(meta['greedy_q']),
        greedy_indices=np.array(meta['greedy_indices'], dtype=np.int64),
        greedy_errors=np.array(meta['greedy_errors']),
        tol=float(meta['tol']),
        grid=TimeGrid.from_dict(meta['grid']),
    )


def save_eim(path: PathLike, eim: EimModel) -> Path:
    return write_array(path, eim.interpolant, {
        'kind': 'eim',
        'node_indices': [int(i) for i in eim.node_indices],
        'condition_number': float(eim.condition_number),
    })


def load_eim(path: PathLike, basis: ReducedBasis) -> EimModel:
    values, meta = read_array(path)
    _expect_kind(meta, 'eim', path)
    if values.shape != (basis.grid.n_samples, basis.size):
        raise CorruptArtifactError(
            f"{path}: interpolant {values.shape} does not fit a basis of {basis.size} "
            f"rows on {basis.grid.n_samples} samples"
        )
    return EimModel(
        node_indices=np.array(meta['node_indices'], dtype=np.int64),
        interpolant=values,
        basis=basis,
        condition_number=float(meta['condition_number']),
    )


def save_dataset(path: PathLike, dataset: CoefficientDataset) -> Path:
    return write_array(path, dataset.a, {
        'kind': 'coefficient_dataset',
        'q': _floats(dataset.q),
        'mean': _floats(dataset.mean),
        'std': _floats(dataset.std),
    })


def load_dataset(path: PathLike) -> CoefficientDataset:
    values, meta = read_array(path)
    _expect_kind(meta, 'coefficient_dataset', path)
    return CoefficientDataset(
        q=np.array(meta['q']), a=values, mean=np.array(meta['mean']), std=np.array(meta['std'])
    )


# ============================================================================
# NETWORKS
# ============================================================================

def save_regressor(path: PathLike, model: RegressorModel, seed: int = 0) -> Path:
    return write_array(path, flatten_state(model.network).numpy(), {
        'kind': 'regressor',
        'layers': parameter_layout(model.network),
        'spec': model.spec.to_dict(),
        'q_range': list(model.q_range),
        'mean': _floats(model.mean),
        'std': _floats(model.std),
        'train_config': model.config.to_dict() if model.config else None,
        'seed': seed,
        'spiral_params': model.spiral_params(),
        'eim_ref': model.eim_ref,
    })


def load_regressor(path: PathLike) -> RegressorModel:
    flat, meta = read_array(path)
    _expect_kind(meta, 'regressor', path)
    spec = NetworkSpec.from_dict(meta['spec'])
    q_range = tuple(meta['q_range'])
    network = RegressionNetwork(spec, *q_range)
    load_flat_state(network, torch.from_numpy(flat), meta['layers'])
    network.eval()
    config = TrainConfig(**meta['train_config']) if meta.get('train_config') else None
    return RegressorModel(
        spec=spec,
        network=network,
        mean=np.array(meta['mean']),
        std=np.array(meta['std']),
        q_range=q_range,
        history=LossHistory(),
        config=config,
        eim_ref=meta.get('eim_ref'),
    )


def save_autoencoder(path: PathLike, model: AutoencoderModel) -> Path:
    return write_array(path, flatten_state(model.network).numpy(), {
        'kind': 'autoencoder',
        'layers': parameter_layout(model.network),
        'mean': _floats(model.mean),
        'std': _floats(model.std),
        **model.to_dict(),
    })


def load_autoencoder(path: PathLike) -> AutoencoderModel:
    flat, meta = read_array(path)
    _expect_kind(meta, 'autoencoder', path)
    network = AutoencoderNetwork(meta['input_dim'], meta['hidden_width'], meta['latent_dim'])
    load_flat_state(network, torch.from_numpy(flat), meta['layers'])
    network.eval()
    history = LossHistory(initial_train=meta.get('initial_mse'))
    return AutoencoderModel(
        network=network,
        mean=np.array(meta['mean']),
        std=np.array(meta['std']),
        history=history,
        mse=float(meta['mse']),
        config=TrainConfig(**meta['train_config']),
    )


# ============================================================================
# LATENT POINTS
# ============================================================================

def save_latent_points(path: PathLike, points: np.ndarray, q_values, summary: dict) -> Path:
    return write_array(path, points, {
        'kind': 'latent_points',
        'q_values': _floats(q_values),
        'diagnostics': summary,
    })


def load_latent_points(path: PathLike) -> Tuple[np.ndarray, np.ndarray, dict]:
    points, meta = read_array(path)
    _expect_kind(meta, 'latent_points', path)
    return points, np.array(meta['q_values']), meta.get('diagnostics', {})


def pca_summary(model: PcaModel, mse: float) -> dict:
    return {
        'k': model.k,
        'mse': mse,
        'singular_values': _floats(model.singular_values),
    }
