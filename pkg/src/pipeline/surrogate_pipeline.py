"""
Pipeline orchestrator for the spiral surrogate.

Each step reads its predecessors' artifacts from the output directory,
writes its own artifact and a provenance record next to it. ``run_all``
chains every step in order.
"""

import logging
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.config import (
    ARTIFACTS,
    FIGURE_KINDS,
    MISMATCH_COLUMNS,
    REFERENCE_VALUES,
    REGRESSOR_ARTIFACTS,
    RunConfig,
)
from src.models.eim import build_dataset, build_eim, eim_reconstruct_rows
from src.models.latent import encode, latent_spiral_diagnostics, pca_fit, train_autoencoder
from src.models.nnet import NetworkSpec, TrainConfig
from src.models.rom import greedy_build
from src.models.surrogate import (
    benchmark,
    compare_architectures,
    evaluate,
    evaluate_exact_coefficients,
    fit_spline_baseline,
    predict_spline_coefficients,
    train_regressor,
)
from src.storage import (
    batch_table,
    coefficient_table,
    figure_filename,
    file_sha256,
    latent_table,
    load_basis,
    load_dataset,
    load_eim,
    load_latent_points,
    load_regressor,
    load_waveform_set,
    loss_history_from_rows,
    loss_table,
    pca_summary,
    read_csv,
    read_json,
    save_autoencoder,
    save_basis,
    save_dataset,
    save_eim,
    save_latent_points,
    save_regressor,
    save_waveform_set,
    sweep_table,
    throughput_table,
    mismatch_table,
    write_csv,
    write_json,
    write_provenance,
)
from src.utils.errors import DomainError, MissingArtifactError
from src.waveforms import (
    NewtonianChirpModel,
    TimeGrid,
    build_training_set,
    equispaced_q,
    random_q,
)

logger = logging.getLogger(__name__)

SEED_STREAMS = ('val_q', 'test_q', 'autoencoder', 'regressor', 'benchmark')


def derive_seeds(seed: int) -> Dict[str, int]:
    """Independent integer seeds for every random consumer, all from one seed."""
    children = np.random.SeedSequence(seed).spawn(len(SEED_STREAMS))
    return {name: int(child.generate_state(1)[0]) for name, child in zip(SEED_STREAMS, children)}


def normalize_label(label: str) -> str:
    """Canonical form of an architecture label ("s-32-64" -> "S-32-64")."""
    return NetworkSpec.parse(label).label


def _circle_summary(points: np.ndarray, q_values: np.ndarray) -> Optional[dict]:
    """Latent diagnostics about the least-squares circle center, None for collinear points."""
    try:
        return latent_spiral_diagnostics(points, q_values, center='circle').summary()
    except DomainError as exc:
        logger.warning("No circle fit for the latent points: %s", exc)
        return None


class SurrogatePipeline:
    """
    Runs the surrogate pipeline steps against one output directory.

    Example:
        >>> pipeline = SurrogatePipeline(RunConfig.from_file('data/configs/desk.json'))
        >>> pipeline.run_all()
        >>> print(pipeline.read_report('S-32-64')['median'])
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.out = config.output_path
        self.seeds = derive_seeds(config.seed)
        self.grid = TimeGrid(config.grid['t_start'], config.grid['t_end'], int(config.grid['n_samples']))
        self.fiducial = NewtonianChirpModel(t_c=config.grid['t_c'])

    # ------------------------------------------------------------------
    # paths
    # ------------------------------------------------------------------

    def path(self, key: str) -> Path:
        return self.out / ARTIFACTS[key]

    def regressor_path(self, key: str, label: str) -> Path:
        return self.out / REGRESSOR_ARTIFACTS[key].format(label=label)

    def _require(self, *paths: Path) -> None:
        for path in paths:
            if not path.is_file():
                raise MissingArtifactError(f"Missing artifact: {path.name} (expected in {path.parent})")

    def _provenance(self, artifact: Path, command: str, inputs: Sequence[Path], extra: Optional[dict] = None):
        write_provenance(artifact, command, inputs, self.config.to_dict(), self.config.seed, extra)

    def _training_config(self, recipe: dict, stream: str) -> TrainConfig:
        return TrainConfig.from_recipe(recipe, seed=self.seeds[stream])

    def _load_eim(self):
        self._require(self.path('basis'), self.path('eim'))
        return load_eim(self.path('eim'), load_basis(self.path('basis')))

    # ------------------------------------------------------------------
    # steps
    # ------------------------------------------------------------------

    def gen_data(self) -> Dict[str, Path]:
        """Equispaced training q, uniform random validation/test q, waveform sets on disk."""
        cfg = self.config
        q_sets = {
            'waveforms_train': equispaced_q(cfg.q_min, cfg.q_max, cfg.n_train),
            'waveforms_val': random_q(cfg.q_min, cfg.q_max, cfg.n_val,
                                      np.random.default_rng(self.seeds['val_q'])),
            'waveforms_test': random_q(cfg.q_min, cfg.q_max, cfg.n_test,
                                       np.random.default_rng(self.seeds['test_q'])),
        }
        written = {}
        for key, q_values in q_sets.items():
            waveforms = build_training_set(self.fiducial, q_values, self.grid)
            path = save_waveform_set(self.path(key), waveforms)
            self._provenance(path, 'gen-data', [], {'fiducial': self.fiducial.to_dict()})
            written[key] = path
            logger.info("Wrote %d waveforms to %s", len(waveforms), path.name)
        return written

    def build_basis(self) -> Path:
        source = self.path('waveforms_train')
        self._require(source)
        basis = greedy_build(load_waveform_set(source), tol=self.config.tol)
        path = save_basis(self.path('basis'), basis)
        self._provenance(path, 'build-basis', [source], {'basis_size': basis.size,
                          'reference_basis_size': REFERENCE_VALUES['basis_size_q1to2']})
        return path

    def build_eim(self) -> Dict[str, Path]:
        """Interpolant plus the train/val/test coefficient datasets (train statistics)."""
        self._require(self.path('basis'))
        basis = load_basis(self.path('basis'))
        eim = build_eim(basis)
        eim_path = save_eim(self.path('eim'), eim)
        self._provenance(eim_path, 'build-eim', [self.path('basis')],
                         {'condition_number': eim.condition_number})

        written = {'eim': eim_path}
        reference = None
        for split in ('train', 'val', 'test'):
            source = self.path(f'waveforms_{split}')
            self._require(source)
            dataset = build_dataset(load_waveform_set(source), eim, reference)
            if reference is None:
                reference = dataset
            path = save_dataset(self.path(f'dataset_{split}'), dataset)
            self._provenance(path, 'build-eim', [source, eim_path],
                             {'re_zero_crossings': dataset.zero_crossings()})
            written[f'dataset_{split}'] = path
        return written

    def train_ae(self) -> Dict:
        inputs = [self.path('dataset_train'), self.path('dataset_val')]
        self._require(*inputs)
        train, val = (load_dataset(p) for p in inputs)
        recipe = self.config.ae_training
        model, mse = train_autoencoder(
            train,
            d=int(recipe['latent_dim']),
            config=self._training_config(recipe, 'autoencoder'),
            validation=val,
            hidden_width=int(recipe['hidden_width']),
        )
        weights = save_autoencoder(self.path('autoencoder'), model)
        self._provenance(weights, 'train-ae', inputs)

        points = encode(model, train)
        diagnostics = latent_spiral_diagnostics(points, train.q)
        latent = save_latent_points(self.path('latent'), points, train.q, diagnostics.summary())
        self._provenance(latent, 'train-ae', [weights, inputs[0]])

        report = {
            'mse': mse,
            'initial_mse': model.history.initial_train,
            'weights_sha256': file_sha256(weights),
            'latent': diagnostics.summary(),
            'latent_circle': _circle_summary(points, train.q),
        }
        report_path = write_json(self.path('ae_report'), report)
        self._provenance(report_path, 'train-ae', [weights])
        return report

    def pca(self) -> Dict:
        source = self.path('dataset_train')
        self._require(source)
        train = load_dataset(source)
        model, mse = pca_fit(train, k=2)
        points = model.transform(train.standardized)
        diagnostics = latent_spiral_diagnostics(points, train.q)
        latent = save_latent_points(self.path('pca_latent'), points, train.q, diagnostics.summary())
        self._provenance(latent, 'pca', [source])

        report = {**pca_summary(model, mse), 'latent': diagnostics.summary()}
        if self.path('ae_report').is_file():
            ae_mse = read_json(self.path('ae_report'))['mse']
            report['ae_mse'] = ae_mse
            report['ae_to_pca_ratio'] = ae_mse / mse if mse > 0 else None
        report['reference'] = {k: REFERENCE_VALUES[k] for k in ('ae_mse', 'pca_mse')}
        report_path = write_json(self.path('pca_report'), report)
        self._provenance(report_path, 'pca', [source])
        return report

    def train_reg(self, labels: Optional[Sequence[str]] = None) -> List[Path]:
        inputs = [self.path('dataset_train'), self.path('dataset_val'), self.path('eim')]
        self._require(*inputs)
        train, val = load_dataset(inputs[0]), load_dataset(inputs[1])
        eim_ref = file_sha256(inputs[2])
        config = self._training_config(self.config.regressor_training, 'regressor')

        written = []
        labels = list(labels or self.config.specs)
        for k, label in enumerate(labels, start=1):
            logger.info("[%d/%d] train-reg %s", k, len(labels), label)
            model = train_regressor(train, label, config, val)
            model.eim_ref = eim_ref
            weights = save_regressor(self.regressor_path('weights', model.label), model, config.seed)
            history = write_csv(self.regressor_path('history', model.label), *loss_table(model.history))
            self._provenance(weights, 'train-reg', inputs, {'spiral_params': model.spiral_params()})
            self._provenance(history, 'train-reg', [weights])
            written.append(weights)
        return written

    def evaluate(self, labels: Optional[Sequence[str]] = None) -> Dict[str, Dict]:
        eim = self._load_eim()
        test_path = self.path('waveforms_test')
        self._require(test_path)
        test = load_waveform_set(test_path)
        floor = evaluate_exact_coefficients(eim, test)

        reports = {}
        for label in map(normalize_label, labels or self.config.specs):
            weights = self.regressor_path('weights', label)
            self._require(weights)
            model = load_regressor(weights)
            report = evaluate(model, test.q_values, self.fiducial, eim, truth=test)
            data = {
                **report.to_dict(),
                'weights': weights.name,
                'weights_sha256': file_sha256(weights),
                'exact_coefficient_max': floor.max,
                'reference_median': REFERENCE_VALUES['best_median_mismatch_q1to2'],
            }
            path = write_json(self.regressor_path('report', label), data)
            samples = write_csv(self.regressor_path('mismatches', label), *mismatch_table(report))
            self._provenance(path, 'eval', [weights, self.path('eim'), test_path],
                             {'wall_time_per_batch': report.wall_time_per_batch})
            self._provenance(samples, 'eval', [weights])
            reports[label] = data
        return reports

    def spline(self) -> Dict:
        inputs = [self.path('dataset_train'), self.path('waveforms_test')]
        self._require(*inputs)
        train, test = load_dataset(inputs[0]), load_waveform_set(inputs[1])
        eim = self._load_eim()

        start = time.perf_counter()
        model = fit_spline_baseline(train)
        fit_seconds = time.perf_counter() - start
        start = time.perf_counter()
        eim_reconstruct_rows(predict_spline_coefficients(model, test.q_values), eim)
        predict_seconds = time.perf_counter() - start

        report = evaluate(model, test.q_values, self.fiducial, eim, truth=test)
        knot_error = float(np.max(np.abs(model(train.q) - train.a)))
        data = {**report.to_dict(), 'knot_max_error': knot_error,
                'reference_min_max_mean': list(REFERENCE_VALUES['spline_mismatch_min_max_mean'])}
        path = write_json(self.path('spline_report'), data)
        samples = write_csv(self.path('spline_mismatches'), *mismatch_table(report))
        timing = {
            'fit_seconds': fit_seconds,
            'predict_seconds': predict_seconds,
            'waveforms_per_second': len(test) / predict_seconds if predict_seconds > 0 else None,
        }
        self._provenance(path, 'spline', inputs + [self.path('eim')], {'timing': timing})
        self._provenance(samples, 'spline', inputs)
        return data

    def bench(self, labels: Optional[Sequence[str]] = None, batch_sizes=None) -> Dict[str, Dict]:
        results = {}
        for label in map(normalize_label, labels or self.config.specs):
            weights = self.regressor_path('weights', label)
            self._require(weights)
            result = benchmark(load_regressor(weights), batch_sizes, seed=self.seeds['benchmark'])
            path = write_csv(self.regressor_path('bench', label), *throughput_table(result))
            self._provenance(path, 'bench', [weights], {'benchmark': result.to_dict()})
            results[label] = result.to_dict()
        return results

    def sweep(self, labels: Optional[Sequence[str]] = None) -> List[Dict]:
        inputs = [self.path('dataset_train'), self.path('dataset_val'), self.path('waveforms_test')]
        self._require(*inputs)
        train, val = load_dataset(inputs[0]), load_dataset(inputs[1])
        test = load_waveform_set(inputs[2])
        eim = self._load_eim()
        config = self._training_config(self.config.regressor_training, 'regressor')

        rows = compare_architectures(train, val, test, eim, self.fiducial,
                                     list(labels or self.config.sweep_specs), config)
        table = write_csv(self.path('sweep_table'), *sweep_table(rows))
        records = [
            {**row.report.to_dict(), 'network': row.network,
             'max_batch_estimate': row.max_batch_estimate,
             'spiral_params': row.model.spiral_params()}
            for row in rows
        ]
        report = write_json(self.path('sweep_report'), {'rows': records})
        self._provenance(table, 'sweep', inputs + [self.path('eim')])
        self._provenance(report, 'sweep', inputs + [self.path('eim')])
        return records

    def export_fig(self, kind: str, label: Optional[str] = None) -> Path:
        """Write the CSV behind one figure kind."""
        label = normalize_label(label or self.config.specs[0])
        per_network = kind in ('loss', 'mismatch')
        target = self.out / figure_filename(kind, label if per_network else None)

        if kind == 'coeffs':
            source = self.path('dataset_train')
            self._require(source)
            table = coefficient_table(load_dataset(source))
        elif kind in ('latent', 'pca'):
            source = self.path('latent' if kind == 'latent' else 'pca_latent')
            self._require(source)
            points, q_values, _ = load_latent_points(source)
            table = latent_table(latent_spiral_diagnostics(points, q_values))
        elif kind == 'loss':
            source = self.regressor_path('history', label)
            table = loss_table(loss_history_from_rows(read_csv(source)))
        elif kind == 'mismatch':
            source = self.regressor_path('mismatches', label)
            table = (MISMATCH_COLUMNS,
                     [(float(r['q']), float(r['mismatch']), int(r['extrapolated'])) for r in read_csv(source)])
        else:
            source = self.path('sweep_table')
            table = batch_table(read_csv(source))

        path = write_csv(target, *table)
        self._provenance(path, 'export-fig', [source], {'kind': kind})
        logger.info("Exported %s figure data to %s", kind, path.name)
        return path

    def run_all(self, include_sweep: bool = False) -> Dict:
        """Every step in order; the sweep (and its batch figure) only on request."""
        steps = [
            ('gen-data', self.gen_data),
            ('build-basis', self.build_basis),
            ('build-eim', self.build_eim),
            ('train-ae', self.train_ae),
            ('pca', self.pca),
            ('train-reg', self.train_reg),
            ('eval', self.evaluate),
            ('spline', self.spline),
            ('bench', self.bench),
        ]
        if include_sweep:
            steps.append(('sweep', self.sweep))

        results = {}
        for k, (name, step) in enumerate(steps, start=1):
            logger.info("[%d/%d] %s", k, len(steps), name)
            results[name] = step()

        kinds = [kind for kind in FIGURE_KINDS if include_sweep or kind != 'batch']
        results['export-fig'] = [self.export_fig(kind) for kind in kinds]
        logger.info("Pipeline complete; artifacts in %s", self.out)
        return results

    def read_report(self, label: str) -> Dict:
        return read_json(self.regressor_path('report', normalize_label(label)))
