"""Experiment configuration schema."""

from .experiment_config import (
    ArchitectureConfig,
    DatasetConfig,
    ExperimentConfig,
    TrainSettings,
    apply_overrides,
    config_hash,
    validate_config,
)

__all__ = [
    "ArchitectureConfig",
    "DatasetConfig",
    "ExperimentConfig",
    "TrainSettings",
    "apply_overrides",
    "config_hash",
    "validate_config",
]
