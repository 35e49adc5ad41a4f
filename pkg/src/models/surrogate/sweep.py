"""
Architecture sweep: every listed network with and without the spiral module.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from src.models.eim import CoefficientDataset, EimModel
from src.models.nnet import NetworkSpec, TrainConfig
from src.waveforms import BaseWaveformModel, WaveformSet
from .benchmark import estimate_max_batch
from .evaluation import MismatchReport, evaluate
from .regressor import RegressorModel, train_regressor

logger = logging.getLogger(__name__)


@dataclass
class SweepRow:
    network: str
    max_M: float
    median_M: float
    p95_M: float
    max_batch_estimate: int
    report: MismatchReport = field(repr=False)
    model: RegressorModel = field(repr=False)

    def as_tuple(self) -> tuple:
        return (self.network, self.max_M, self.median_M, self.p95_M, self.max_batch_estimate)


def paired_specs(labels: Sequence[str], width: int) -> List[NetworkSpec]:
    """For each label, the plain network followed by its spiral counterpart."""
    specs = []
    for label in labels:
        base = NetworkSpec.parse(label, output_dim=width)
        specs.append(NetworkSpec(base.layer_widths, False, 1, width))
        specs.append(NetworkSpec(base.layer_widths, True, 1, width))
    return specs


def compare_architectures(
    train: CoefficientDataset,
    validation: Optional[CoefficientDataset],
    test: WaveformSet,
    eim: EimModel,
    fiducial: BaseWaveformModel,
    labels: Sequence[str],
    config: TrainConfig,
) -> List[SweepRow]:
    """
    Train, evaluate and size every architecture in ``labels`` in both variants.

    Returns:
        One SweepRow per trained network, plain before spiral
    """
    rows = []
    specs = paired_specs(labels, train.width)
    for k, spec in enumerate(specs, start=1):
        logger.info("[%d/%d] sweep: %s", k, len(specs), spec.label)
        model = train_regressor(train, spec, config, validation)
        report = evaluate(model, test.q_values, fiducial, eim, truth=test)
        rows.append(SweepRow(spec.label, report.max, report.median, report.p95,
                             estimate_max_batch(model), report, model))
    return rows
