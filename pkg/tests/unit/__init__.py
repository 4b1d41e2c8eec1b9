"""Unit tests package.

This module provides centralized imports specifically for unit tests,
focusing on the numerical domain services, value objects and use cases.
"""

# Import common unit test dependencies
import pytest
from unittest.mock import Mock

import numpy as np

# Import domain components that are frequently used in unit tests
from src.domain.entities.detector import CentroidModel, Detector
from src.domain.entities.labeled_dataset import LabeledDataset
from src.domain.exceptions import (
    ArtifactNotFoundError,
    ConfigurationError,
    DetectorStateError,
    InputDataError,
    NumericalError,
    TrainingError,
)
from src.domain.services.aggregation import (
    MSE_FLOOR,
    aggregate_by_errors,
    fedavg_aggregate,
    mse_on_dev,
    mseavg_aggregate,
)
from src.domain.services.autoencoder import (
    ae_loss,
    backward,
    forward_decoder,
    forward_encoder,
    initialize_params,
    sae_loss,
)
from src.domain.services.optimizer import adam_step, init_adam
from src.domain.services.local_training import train_local
from src.domain.value_objects.adam_state import AdamState
from src.domain.value_objects.dense_layer import DenseLayer
from src.domain.value_objects.enums import (
    Activation,
    AggregationAlgorithm,
    DetectorKind,
    JSMeasure,
    Label,
    NormalizationScope,
)
from src.domain.value_objects.model_params import ModelParams
from src.domain.value_objects.train_config import TrainConfig

# Import application components
from src.application.config import ExperimentConfig, apply_overrides, config_hash

# Import shared builders
from tests.factories import (
    identity_model,
    make_gateway,
    perturbed,
    random_model,
    tiny_config_payload,
    zero_decoder_model,
)

__all__ = [
    # Test utilities
    "pytest",
    "Mock",
    "np",
    # Domain objects
    "AdamState",
    "CentroidModel",
    "DenseLayer",
    "Detector",
    "LabeledDataset",
    "ModelParams",
    "TrainConfig",
    # Enums
    "Activation",
    "AggregationAlgorithm",
    "DetectorKind",
    "JSMeasure",
    "Label",
    "NormalizationScope",
    # Exceptions
    "ArtifactNotFoundError",
    "ConfigurationError",
    "DetectorStateError",
    "InputDataError",
    "NumericalError",
    "TrainingError",
    # Autoencoder and training
    "ae_loss",
    "adam_step",
    "backward",
    "forward_decoder",
    "forward_encoder",
    "init_adam",
    "initialize_params",
    "sae_loss",
    "train_local",
    # Aggregation
    "MSE_FLOOR",
    "aggregate_by_errors",
    "fedavg_aggregate",
    "mse_on_dev",
    "mseavg_aggregate",
    # Configuration
    "ExperimentConfig",
    "apply_overrides",
    "config_hash",
    # Builders
    "identity_model",
    "make_gateway",
    "perturbed",
    "random_model",
    "tiny_config_payload",
    "zero_decoder_model",
]
