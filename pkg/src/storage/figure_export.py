"""
Plain-CSV tables behind the figures: coefficients, latent scatter, loss
curves, mismatch samples, throughput and the sweep table.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.config import (
    BATCH_COLUMNS,
    FIGURE_FILES,
    FIGURE_KINDS,
    LATENT_COLUMNS,
    LOSS_COLUMNS,
    MISMATCH_COLUMNS,
    OUTPUT_CONFIG,
    SWEEP_COLUMNS,
    THROUGHPUT_COLUMNS,
)
from src.models.eim import CoefficientDataset
from src.models.latent import LatentDiagnostics
from src.models.nnet import LossHistory
from src.models.surrogate import BenchmarkResult, MismatchReport, SweepRow
from src.utils.errors import DomainError, MissingArtifactError
from .array_container import PathLike, atomic_write_text

logger = logging.getLogger(__name__)


def _format(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return OUTPUT_CONFIG['csv_float_format'] % float(value)
    return str(value)


def render_csv(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        if len(row) != len(columns):
            raise DomainError(f"Row {row!r} does not match columns {list(columns)}")
        writer.writerow([_format(v) for v in row])
    return buffer.getvalue()


def write_csv(path: PathLike, columns: Sequence[str], rows: Sequence[Sequence]) -> Path:
    path = atomic_write_text(path, render_csv(columns, rows))
    logger.debug("Wrote %s (%d rows)", Path(path).name, len(rows))
    return path


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    path = Path(path)
    if not path.is_file():
        raise MissingArtifactError(f"Missing artifact: {path}")
    with open(path, newline='', encoding='utf-8') as handle:
        return list(csv.DictReader(handle))


def figure_filename(kind: str, label: Optional[str] = None) -> str:
    if kind not in FIGURE_KINDS:
        raise DomainError(f"Unknown figure kind '{kind}'; choose from {', '.join(FIGURE_KINDS)}")
    name = FIGURE_FILES[kind]
    return name if label is None else name.replace('.csv', f'_{label}.csv')


# ============================================================================
# TABLES
# ============================================================================

def coefficient_columns(n_nodes: int) -> List[str]:
    return (['q']
            + [f're_a{j}' for j in range(1, n_nodes + 1)]
            + [f'im_a{j}' for j in range(1, n_nodes + 1)])


def coefficient_table(dataset: CoefficientDataset):
    rows = [(q, *a) for q, a in zip(dataset.q, dataset.a)]
    return coefficient_columns(dataset.n_nodes), rows


def latent_table(diagnostics: LatentDiagnostics):
    return LATENT_COLUMNS, diagnostics.rows()


def loss_table(history: LossHistory):
    return LOSS_COLUMNS, history.rows()


def mismatch_table(report: MismatchReport):
    return MISMATCH_COLUMNS, report.rows()


def throughput_table(result: BenchmarkResult):
    return THROUGHPUT_COLUMNS, [row.as_tuple() for row in result.rows]


def sweep_table(rows: Sequence[SweepRow]):
    return SWEEP_COLUMNS, [row.as_tuple() for row in rows]


def batch_table(records: Sequence[Dict[str, str]]):
    """
    Mismatch against estimated batch capacity, ordered by capacity.

    Args:
        records: Sweep-table rows keyed by SWEEP_COLUMNS
    """
    ordered = sorted(records, key=lambda r: (int(r['max_batch_estimate']), r['network']))
    return BATCH_COLUMNS, [
        (r['network'], int(r['max_batch_estimate']), float(r['median_M']),
         float(r['p95_M']), float(r['max_M']))
        for r in ordered
    ]


def loss_history_from_rows(rows: Sequence[Dict[str, str]]) -> LossHistory:
    """Rebuild a LossHistory from a history CSV."""
    history = LossHistory()
    for row in rows:
        history.lr.append(float(row['lr']))
        history.train.append(float(row['train_loss']))
        history.val.append(float(row['val_loss']))
    return history
