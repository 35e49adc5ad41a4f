"""
Greedy reduced basis construction and projection.

The greedy sweep seeds the basis with the first training waveform and then
repeatedly appends the worst-approximated training waveform, orthonormalized
against the current basis, until every training projection error
||h - sum_i <e_i, h> e_i||^2 is at most the tolerance.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from src.config import ROM_CONFIG
from src.utils.errors import DomainError, GreedyConvergenceError, GridMismatchError
from src.waveforms import ComplexWaveform, TimeGrid, WaveformSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedBasis:
    """
    Orthonormal reduced basis selected by the greedy sweep.

    Attributes:
        basis: m x L complex matrix with orthonormal rows e_i
        greedy_q: Mass ratio of the training waveform behind each row
        greedy_indices: Training-set index behind each row
        greedy_errors: Worst training projection error after each iteration
        tol: Tolerance the sweep stopped at
        grid: Grid of the basis rows
    """

    basis: np.ndarray = field(repr=False)
    greedy_q: np.ndarray
    greedy_indices: np.ndarray
    greedy_errors: np.ndarray
    tol: float
    grid: TimeGrid

    @property
    def size(self) -> int:
        return self.basis.shape[0]

    def gram_matrix(self) -> np.ndarray:
        return (self.basis.conj() @ self.basis.T) * self.grid.dt


@dataclass(frozen=True)
class ProjectionCoefficients:
    """Projection coefficients c_i = <e_i, h> of one waveform."""

    c: np.ndarray

    def reconstruct(self, basis: ReducedBasis) -> ComplexWaveform:
        return ComplexWaveform(basis.grid, self.c @ basis.basis)


def _orthonormalize(vector: np.ndarray, rows: list, dt: float) -> np.ndarray:
    """Modified Gram-Schmidt against ``rows``, repeated once, then normalized."""
    v = vector.copy()
    for _ in range(2):
        for e in rows:
            v -= np.vdot(e, v) * dt * e
    v_norm = np.sqrt(np.vdot(v, v).real * dt)
    return v / v_norm


def greedy_build(train: WaveformSet, tol: float = None) -> ReducedBasis:
    """
    Build a reduced basis that represents every training waveform to tol.

    Args:
        train: Unit-norm training set (rows ordered by q)
        tol: Tolerance on the squared projection error (default ROM_CONFIG)

    Returns:
        ReducedBasis

    Raises:
        DomainError: for an empty set or a non-positive tolerance
        GreedyConvergenceError: if the set is exhausted before reaching tol
    """
    tol = ROM_CONFIG['tol'] if tol is None else float(tol)
    if len(train) == 0:
        raise DomainError("Cannot build a reduced basis from an empty training set")
    if not tol > 0:
        raise DomainError(f"Greedy tolerance must be positive, got {tol}")

    dt = train.grid.dt
    n_train = len(train)
    residuals = np.array(train.waveforms, dtype=np.complex128)

    rows, indices, errors = [], [], []
    selected = 0                                   # seed: first waveform in q-order

    while True:
        e = _orthonormalize(residuals[selected], rows, dt)
        rows.append(e)
        indices.append(selected)

        # Remove the new direction from every residual
        coefficients = (residuals @ e.conj()) * dt
        residuals -= np.outer(coefficients, e)
        sigma = np.einsum('ij,ij->i', residuals.conj(), residuals).real * dt

        # np.argmax returns the lowest index on ties
        selected = int(np.argmax(sigma))
        worst = float(sigma[selected])
        errors.append(worst)
        logger.debug("Greedy iteration %d: q=%.6f, max error %.3e",
                     len(rows), train.q_values[indices[-1]], worst)

        if worst <= tol:
            break
        if len(rows) == n_train:
            raise GreedyConvergenceError(
                f"Greedy sweep used all {n_train} training waveforms without reaching tol={tol:g}",
                achieved_error=worst,
            )

    indices = np.array(indices, dtype=np.int64)
    logger.info("Reduced basis of size %d reached error %.3e (tol %.1e)", len(rows), errors[-1], tol)
    return ReducedBasis(
        basis=np.array(rows),
        greedy_q=train.q_values[indices].copy(),
        greedy_indices=indices,
        greedy_errors=np.array(errors),
        tol=tol,
        grid=train.grid,
    )


def _check_length(h: ComplexWaveform, basis: ReducedBasis) -> None:
    if h.values.shape[0] != basis.basis.shape[1] or h.grid != basis.grid:
        raise GridMismatchError(
            f"Waveform of length {h.values.shape[0]} does not match basis length {basis.basis.shape[1]}"
        )


def project(h: ComplexWaveform, basis: ReducedBasis) -> ProjectionCoefficients:
    """
    Project a waveform onto the reduced basis, c_i = <e_i, h>.

    Args:
        h: Waveform on the basis grid
        basis: Reduced basis

    Returns:
        ProjectionCoefficients
    """
    _check_length(h, basis)
    return ProjectionCoefficients(basis.basis.conj() @ h.values * basis.grid.dt)


def reconstruction_error(h: ComplexWaveform, basis: ReducedBasis) -> float:
    """Squared norm of h minus its projection onto the basis."""
    residual = h.values - project(h, basis).c @ basis.basis
    return float(np.vdot(residual, residual).real * basis.grid.dt)


def projection_errors(waveforms: np.ndarray, basis: ReducedBasis) -> np.ndarray:
    """Row-wise reconstruction errors of an N x L array on the basis grid."""
    waveforms = np.atleast_2d(waveforms)
    if waveforms.shape[1] != basis.basis.shape[1]:
        raise GridMismatchError(
            f"Rows of length {waveforms.shape[1]} do not match basis length {basis.basis.shape[1]}"
        )
    dt = basis.grid.dt
    coefficients = waveforms @ basis.basis.conj().T * dt
    residuals = waveforms - coefficients @ basis.basis
    return np.einsum('ij,ij->i', residuals.conj(), residuals).real * dt
