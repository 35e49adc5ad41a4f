"""Pipeline package: step-by-step orchestration of the surrogate."""

from .surrogate_pipeline import SurrogatePipeline, derive_seeds, normalize_label

__all__ = ['SurrogatePipeline', 'derive_seeds', 'normalize_label']
