"""Shared fixtures: a small chirp training set, the desk-scale set, and everything built on them."""

import numpy as np
import pytest

from src.models.eim import build_dataset, build_eim
from src.models.rom import greedy_build
from src.waveforms import (
    NewtonianChirpModel,
    build_training_set,
    default_grid,
    equispaced_q,
    random_q,
)

N_TRAIN = 120
N_HELDOUT = 30
TOL = 1e-10

# Desk-scale run: 1000 equispaced training chirps, 200 random validation and test chirps
DESK_TRAIN = 1000
DESK_HELDOUT = 200


@pytest.fixture(scope='session')
def chirp():
    return NewtonianChirpModel()


@pytest.fixture(scope='session')
def grid():
    return default_grid()


@pytest.fixture(scope='session')
def train_set(chirp, grid):
    return build_training_set(chirp, equispaced_q(1.0, 2.0, N_TRAIN), grid)


@pytest.fixture(scope='session')
def heldout_set(chirp, grid):
    rng = np.random.default_rng(1234)
    return build_training_set(chirp, random_q(1.0, 2.0, N_HELDOUT, rng), grid)


@pytest.fixture(scope='session')
def basis(train_set):
    return greedy_build(train_set, tol=TOL)


@pytest.fixture(scope='session')
def eim(basis):
    return build_eim(basis)


@pytest.fixture(scope='session')
def dataset(train_set, eim):
    return build_dataset(train_set, eim)


@pytest.fixture(scope='session')
def heldout_dataset(heldout_set, eim, dataset):
    return build_dataset(heldout_set, eim, reference=dataset)


# ============================================================================
# DESK SCALE
# ============================================================================

@pytest.fixture(scope='session')
def desk_train_set(chirp, grid):
    return build_training_set(chirp, equispaced_q(1.0, 2.0, DESK_TRAIN), grid)


@pytest.fixture(scope='session')
def desk_heldout_sets(chirp, grid):
    """(validation, test) waveform sets drawn from one seeded generator."""
    rng = np.random.default_rng(0)
    val = build_training_set(chirp, random_q(1.0, 2.0, DESK_HELDOUT, rng), grid)
    test = build_training_set(chirp, random_q(1.0, 2.0, DESK_HELDOUT, rng), grid)
    return val, test


@pytest.fixture(scope='session')
def desk_basis(desk_train_set):
    return greedy_build(desk_train_set, tol=TOL)


@pytest.fixture(scope='session')
def desk_eim(desk_basis):
    return build_eim(desk_basis)


@pytest.fixture(scope='session')
def desk_dataset(desk_train_set, desk_eim):
    return build_dataset(desk_train_set, desk_eim)
