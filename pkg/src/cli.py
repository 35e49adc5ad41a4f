"""
Command-line entry point of the spiral surrogate toolkit.

    python -m src.cli gen-data --config data/configs/desk.json --out runs/desk
    python -m src.cli build-basis --out runs/desk
    python -m src.cli train-reg --out runs/desk --spec S-32-64 --epochs 200
    python -m src.cli run-all --config data/configs/desk.json

Every command exits 0 on success and 1 with a one-line diagnostic on any
toolkit error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from src.config import FIGURE_KINDS, LOGGING_CONFIG, RunConfig
from src.pipeline import SurrogatePipeline
from src.storage import OutputLock
from src.utils import SurrogateError, setup_logging

logger = logging.getLogger(__name__)

COMMANDS = {
    'gen-data': 'Generate train/val/test waveform sets',
    'build-basis': 'Greedy reduced basis of the training waveforms',
    'build-eim': 'Empirical interpolant and coefficient datasets',
    'train-ae': 'Train the 2-D autoencoder and export its latent points',
    'pca': 'PCA(2) baseline of the coefficient dataset',
    'train-reg': 'Train coefficient regressors',
    'eval': 'Mismatch statistics of trained regressors on the test set',
    'spline': 'Cubic-spline baseline and its mismatch statistics',
    'bench': 'Inference throughput of trained regressors',
    'export-fig': 'Write the CSV behind one figure',
    'sweep': 'Train and evaluate every sweep architecture with and without the spiral',
    'run-all': 'Run every step in order',
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', type=str, default=None, help='Run config JSON (default: built-in defaults).')
    parser.add_argument('--seed', type=int, default=None, help='Seed of every random stream.')
    parser.add_argument('--out', type=str, default=None, help='Output directory.')
    parser.add_argument('--log-level', type=str, default=LOGGING_CONFIG['level'],
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--log-file', type=str, default=None, help='Mirror log output into this file.')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='python -m src.cli',
        description='Spiral surrogate toolkit: waveform surrogates with a learnable spiral input module.',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    for name, help_text in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        _add_common(sub)
        if name in ('build-basis', 'run-all'):
            sub.add_argument('--tol', type=float, default=None, help='Greedy tolerance on the squared projection error.')
        if name in ('train-reg', 'eval', 'bench', 'export-fig', 'run-all'):
            sub.add_argument('--spec', type=str, default=None, help='Network in "S-32-64" notation.')
        if name in ('train-ae', 'train-reg', 'sweep', 'run-all'):
            sub.add_argument('--epochs', type=int, default=None)
            sub.add_argument('--batch-size', type=int, default=None)
        if name == 'export-fig':
            sub.add_argument('kind', choices=FIGURE_KINDS)
        if name == 'bench':
            sub.add_argument('--batch-sizes', type=int, nargs='+', default=None)
        if name == 'run-all':
            sub.add_argument('--sweep', action='store_true', help='Also run the architecture sweep.')

    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    return config.with_overrides(
        seed=args.seed,
        out_dir=args.out,
        tol=getattr(args, 'tol', None),
        spec=getattr(args, 'spec', None),
        epochs=getattr(args, 'epochs', None),
        batch_size=getattr(args, 'batch_size', None),
        recipe='ae_training' if args.command == 'train-ae' else 'regressor_training',
    )


def run_command(pipeline: SurrogatePipeline, args: argparse.Namespace):
    command = args.command
    if command == 'gen-data':
        return pipeline.gen_data()
    if command == 'build-basis':
        return pipeline.build_basis()
    if command == 'build-eim':
        return pipeline.build_eim()
    if command == 'train-ae':
        return pipeline.train_ae()
    if command == 'pca':
        return pipeline.pca()
    if command == 'train-reg':
        return pipeline.train_reg()
    if command == 'eval':
        return pipeline.evaluate()
    if command == 'spline':
        return pipeline.spline()
    if command == 'bench':
        return pipeline.bench(batch_sizes=args.batch_sizes)
    if command == 'export-fig':
        return pipeline.export_fig(args.kind)
    if command == 'sweep':
        return pipeline.sweep()
    return pipeline.run_all(include_sweep=args.sweep)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, args.log_file)

    try:
        config = load_config(args)
        pipeline = SurrogatePipeline(config)
        with OutputLock(config.output_path):
            result = run_command(pipeline, args)
    except SurrogateError as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if isinstance(result, dict) and args.command in ('eval', 'spline', 'pca', 'train-ae'):
        print(json.dumps(result, indent=2, sort_keys=True, default=str))
    logger.info("%s finished", args.command)
    return 0


if __name__ == '__main__':
    sys.exit(main())
