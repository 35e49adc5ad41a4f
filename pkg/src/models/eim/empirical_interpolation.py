"""
Empirical interpolation: node selection, interpolant operator, coefficients.

Nodes are chosen greedily from the reduced basis: the first at the peak of
|e_1|, each next one at the peak of the residual between e_k and its
interpolant on the current nodes. The interpolant B = E V^-1 maps the
values of a waveform at the nodes back to the full grid.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve

from src.models.rom import ReducedBasis
from src.utils.errors import (
    DomainError,
    GridMismatchError,
    ShapeMismatchError,
    SingularNodeMatrixError,
)
from src.waveforms import ComplexWaveform, TimeGrid, normalize, normalize_rows

logger = logging.getLogger(__name__)

# V with a condition number past this is numerically singular in float64
_MAX_CONDITION = 1.0 / np.finfo(np.float64).eps


@dataclass(frozen=True)
class EimModel:
    """
    Empirical interpolant built on a reduced basis.

    Attributes:
        node_indices: Grid positions T_j of the empirical nodes
        interpolant: L x m complex matrix B, waveform ~= B @ a
        basis: Reduced basis the nodes were selected from
        condition_number: 2-norm condition number of the node matrix V
    """

    node_indices: np.ndarray
    interpolant: np.ndarray = field(repr=False)
    basis: ReducedBasis = field(repr=False)
    condition_number: float

    @property
    def size(self) -> int:
        return self.node_indices.size

    @property
    def grid(self) -> TimeGrid:
        return self.basis.grid

    @property
    def node_times(self) -> np.ndarray:
        return self.grid.times[self.node_indices]


def _next_node(E: np.ndarray, nodes: list) -> int:
    """Peak of the residual between E[k] and its interpolant on ``nodes``."""
    k = len(nodes)
    V = E[:k, nodes].T                       # V[i, j] = e_j(T_i)
    try:
        weights = np.linalg.solve(V, E[k, nodes])
    except np.linalg.LinAlgError as exc:
        raise SingularNodeMatrixError(
            f"Node matrix became singular while selecting node {k + 1}", np.inf
        ) from exc
    residual = np.abs(E[k] - weights @ E[:k])
    residual[nodes] = -1.0                   # keep nodes distinct
    return int(np.argmax(residual))


def build_eim(basis: ReducedBasis) -> EimModel:
    """
    Select empirical nodes and build the interpolant operator.

    Args:
        basis: Non-empty orthonormal reduced basis

    Returns:
        EimModel

    Raises:
        SingularNodeMatrixError: if the basis restricted to the nodes is singular
    """
    E = basis.basis
    if E.shape[0] == 0:
        raise DomainError("Cannot build an empirical interpolant from an empty basis")

    nodes = [int(np.argmax(np.abs(E[0])))]
    for _ in range(1, E.shape[0]):
        nodes.append(_next_node(E, nodes))

    V = E[:, nodes].T
    condition = float(np.linalg.cond(V))
    if not np.isfinite(condition) or condition > _MAX_CONDITION:
        raise SingularNodeMatrixError("Empirical node matrix is numerically singular", condition)

    try:
        lu = lu_factor(V)
    except (LinAlgError, ValueError) as exc:
        raise SingularNodeMatrixError("LU factorization of the node matrix failed", condition) from exc

    # B = E^T V^-1  <=>  V^T B^T = E
    interpolant = lu_solve(lu, E, trans=1).T

    logger.info("Empirical interpolant with %d nodes, cond(V) = %.6e", len(nodes), condition)
    return EimModel(
        node_indices=np.array(nodes, dtype=np.int64),
        interpolant=np.ascontiguousarray(interpolant),
        basis=basis,
        condition_number=condition,
    )


def eim_coefficients(h: ComplexWaveform, eim: EimModel) -> np.ndarray:
    """
    Values of a waveform at the empirical nodes, a_j = h(T_j).

    Args:
        h: Waveform on the interpolant grid
        eim: Empirical interpolant

    Returns:
        Complex vector of length m
    """
    if h.values.shape[0] != eim.interpolant.shape[0]:
        raise GridMismatchError(
            f"Waveform of length {h.values.shape[0]} does not match interpolant length "
            f"{eim.interpolant.shape[0]}"
        )
    return h.values[eim.node_indices].copy()


def eim_interpolate(a: np.ndarray, eim: EimModel) -> np.ndarray:
    """Unnormalized interpolant B @ a; exact at the nodes."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[-1] != eim.size:
        raise ShapeMismatchError(f"Expected {eim.size} coefficients, got {a.shape[-1]}")
    return a @ eim.interpolant.T


def eim_reconstruct(a: np.ndarray, eim: EimModel) -> ComplexWaveform:
    """
    Rebuild a unit-norm waveform from its node values.

    Raises:
        ShapeMismatchError: if ``a`` does not have one entry per node
        ZeroNormError: if the reconstruction vanishes (e.g. a = 0)
    """
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    return normalize(ComplexWaveform(eim.grid, eim_interpolate(a, eim)))


def eim_reconstruct_rows(coefficients: np.ndarray, eim: EimModel) -> np.ndarray:
    """Row-wise eim_reconstruct of an N x m coefficient matrix."""
    coefficients = np.atleast_2d(coefficients)
    return normalize_rows(eim_interpolate(coefficients, eim), eim.grid.dt)
