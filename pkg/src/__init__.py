"""Federated intrusion detection simulator - Root Package."""

# Command-line entry point
from .presentation.main import main

# Domain layer
from .domain import (
    Detector,
    LabeledDataset,
    ModelParams,
    PartitionPlan,
    RunReport,
)

# Application layer - Use cases
from .application import (
    BuildReportUseCase,
    PartitionDatasetUseCase,
    RunSweepUseCase,
    ScoreSamplesUseCase,
    TrainFederationUseCase,
)

# Infrastructure layer
from .infrastructure import (
    CsvDatasetRepository,
    FileArtifactRepository,
)

__all__ = [
    # Entry point
    "main",
    # Domain
    "Detector",
    "LabeledDataset",
    "ModelParams",
    "PartitionPlan",
    "RunReport",
    # Application
    "BuildReportUseCase",
    "PartitionDatasetUseCase",
    "RunSweepUseCase",
    "ScoreSamplesUseCase",
    "TrainFederationUseCase",
    # Infrastructure
    "CsvDatasetRepository",
    "FileArtifactRepository",
]
