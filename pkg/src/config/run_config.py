"""
Run configuration: one JSON-loadable record of every setting a pipeline run uses.
"""

import json
import logging
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Union

from src.utils.errors import DomainError
from .config import (
    AE_TRAINING,
    DATASET_CONFIG,
    NETWORK_SPECS,
    OUTPUT_DIR,
    REGRESSOR_TRAINING,
    ROM_CONFIG,
    WAVEFORM_CONFIG,
)

logger = logging.getLogger(__name__)

_RECIPE_KEYS = ('epochs', 'batch_size', 'lr0', 'schedule_gamma', 'schedule_step_epochs')


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one pipeline run; defaults come from src.config.config.

    Example:
        >>> cfg = RunConfig.from_file('data/configs/desk.json').with_overrides(seed=7)
        >>> cfg.seed
        7
    """

    q_min: float = DATASET_CONFIG['q_min']
    q_max: float = DATASET_CONFIG['q_max']
    n_train: int = DATASET_CONFIG['n_train']
    n_val: int = DATASET_CONFIG['n_val']
    n_test: int = DATASET_CONFIG['n_test']
    grid: Dict[str, float] = field(default_factory=lambda: dict(WAVEFORM_CONFIG))
    tol: float = ROM_CONFIG['tol']
    specs: List[str] = field(default_factory=lambda: [NETWORK_SPECS['default']])
    sweep_specs: List[str] = field(default_factory=lambda: list(NETWORK_SPECS['sweep']))
    ae_training: Dict[str, float] = field(default_factory=lambda: dict(AE_TRAINING))
    regressor_training: Dict[str, float] = field(default_factory=lambda: dict(REGRESSOR_TRAINING))
    seed: int = 0
    out_dir: str = str(OUTPUT_DIR)

    @classmethod
    def from_dict(cls, data: dict) -> 'RunConfig':
        """Overlay ``data`` on the defaults; nested dicts are merged key by key."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise DomainError(f"Unknown run config keys: {', '.join(unknown)}")

        base = cls()
        values = {}
        for key, value in data.items():
            default = getattr(base, key)
            if isinstance(default, dict):
                merged = dict(default)
                merged.update(value)
                value = merged
            values[key] = value
        config = replace(base, **values)
        config.validate()
        return config

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'RunConfig':
        path = Path(path)
        if not path.is_file():
            raise DomainError(f"Config file not found: {path}")
        with open(path, 'r', encoding='utf-8') as handle:
            try:
                data = json.load(handle)
            except json.JSONDecodeError as exc:
                raise DomainError(f"Config file {path} is not valid JSON: {exc}") from exc
        logger.debug("Loaded run config %s", path)
        return cls.from_dict(data)

    def with_overrides(
        self,
        seed: Optional[int] = None,
        out_dir: Optional[str] = None,
        tol: Optional[float] = None,
        spec: Optional[str] = None,
        epochs: Optional[int] = None,
        batch_size: Optional[int] = None,
        recipe: str = 'regressor_training',
    ) -> 'RunConfig':
        """Apply command-line overrides; epochs/batch size go to ``recipe``."""
        values = {}
        if seed is not None:
            values['seed'] = seed
        if out_dir is not None:
            values['out_dir'] = str(out_dir)
        if tol is not None:
            values['tol'] = tol
        if spec is not None:
            values['specs'] = [spec]
        if epochs is not None or batch_size is not None:
            training = dict(getattr(self, recipe))
            if epochs is not None:
                training['epochs'] = epochs
            if batch_size is not None:
                training['batch_size'] = batch_size
            values[recipe] = training
        config = replace(self, **values)
        config.validate()
        return config

    def validate(self) -> None:
        errors = RunConfigValidator().validate(self)
        if errors:
            raise DomainError("Invalid run config: " + '; '.join(errors))

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def output_path(self) -> Path:
        return Path(self.out_dir)


class RunConfigValidator:
    """
    Collect every problem in a RunConfig instead of stopping at the first.

    Example:
        >>> RunConfigValidator().validate(RunConfig(q_min=0.5))
        ['q_min must be >= 1 (got 0.5)']
    """

    def validate(self, config: RunConfig) -> List[str]:
        errors = []
        errors.extend(self._check_range(config))
        errors.extend(self._check_counts(config))
        errors.extend(self._check_grid(config.grid))
        if not config.tol > 0:
            errors.append(f"tol must be positive (got {config.tol})")
        if not config.specs:
            errors.append("at least one network spec is required")
        for name in ('ae_training', 'regressor_training'):
            errors.extend(self._check_recipe(name, getattr(config, name)))
        if not isinstance(config.seed, int) or config.seed < 0:
            errors.append(f"seed must be a non-negative integer (got {config.seed})")
        return errors

    def _check_range(self, config: RunConfig) -> List[str]:
        errors = []
        if config.q_min < 1.0:
            errors.append(f"q_min must be >= 1 (got {config.q_min})")
        if not config.q_min < config.q_max:
            errors.append(f"q_min must be < q_max (got {config.q_min}, {config.q_max})")
        return errors

    def _check_counts(self, config: RunConfig) -> List[str]:
        return [
            f"{name} must be a positive integer (got {getattr(config, name)})"
            for name in ('n_train', 'n_val', 'n_test')
            if not isinstance(getattr(config, name), int) or getattr(config, name) <= 0
        ]

    def _check_grid(self, grid: dict) -> List[str]:
        missing = [k for k in ('t_start', 't_end', 'n_samples', 't_c') if k not in grid]
        if missing:
            return [f"grid is missing {', '.join(missing)}"]
        errors = []
        if not grid['t_start'] < grid['t_end']:
            errors.append("grid t_start must be < t_end")
        if grid['n_samples'] < 2:
            errors.append("grid needs at least 2 samples")
        if not grid['t_c'] > grid['t_end']:
            errors.append("coalescence time t_c must lie after the grid end")
        return errors

    def _check_recipe(self, name: str, recipe: dict) -> List[str]:
        missing = [k for k in _RECIPE_KEYS if k not in recipe]
        if missing:
            return [f"{name} is missing {', '.join(missing)}"]
        errors = []
        for key in ('epochs',):
            if recipe[key] < 0:
                errors.append(f"{name}.{key} must be >= 0")
        for key in ('batch_size', 'schedule_step_epochs'):
            if recipe[key] <= 0:
                errors.append(f"{name}.{key} must be positive")
        if not recipe['lr0'] > 0:
            errors.append(f"{name}.lr0 must be positive")
        if not 0 < recipe['schedule_gamma'] <= 1:
            errors.append(f"{name}.schedule_gamma must lie in (0, 1]")
        return errors
