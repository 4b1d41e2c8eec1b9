"""Test package.

This module provides centralized imports for all test modules,
following the same pattern as the application layer.
"""

# Import common test dependencies
import pytest
from unittest.mock import Mock, patch

import numpy as np

# Import domain entities and value objects for testing
from src.domain.entities.detector import CentroidModel, Detector
from src.domain.entities.labeled_dataset import LabeledDataset
from src.domain.value_objects.dense_layer import DenseLayer
from src.domain.value_objects.enums import Activation, DetectorKind, Label
from src.domain.value_objects.model_params import ModelParams

# Import application layer components
from src.application.config import ExperimentConfig, validate_config

# Import presentation layer for integration tests
from src.presentation.main import main

__all__ = [
    # Test utilities
    "pytest",
    "Mock",
    "patch",
    "np",
    # Domain objects
    "Activation",
    "CentroidModel",
    "DenseLayer",
    "Detector",
    "DetectorKind",
    "Label",
    "LabeledDataset",
    "ModelParams",
    # Configuration
    "ExperimentConfig",
    "validate_config",
    # CLI entry point
    "main",
]
