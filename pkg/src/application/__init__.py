"""Application layer."""

# Import all use cases for convenient access
from .use_cases import (
    # Build Report
    BuildReportUseCase,
    BuildReportRequest,
    BuildReportResponse,
    # Partition Dataset
    PartitionDatasetUseCase,
    PartitionDatasetRequest,
    PartitionDatasetResponse,
    # Run Sweep
    RunSweepUseCase,
    RunSweepRequest,
    RunSweepResponse,
    # Score Samples
    ScoreSamplesUseCase,
    ScoreSamplesRequest,
    ScoreSamplesResponse,
    # Train Federation
    TrainFederationUseCase,
    TrainFederationRequest,
    TrainFederationResponse,
)

__all__ = [
    # Build Report
    "BuildReportUseCase",
    "BuildReportRequest",
    "BuildReportResponse",
    # Partition Dataset
    "PartitionDatasetUseCase",
    "PartitionDatasetRequest",
    "PartitionDatasetResponse",
    # Run Sweep
    "RunSweepUseCase",
    "RunSweepRequest",
    "RunSweepResponse",
    # Score Samples
    "ScoreSamplesUseCase",
    "ScoreSamplesRequest",
    "ScoreSamplesResponse",
    # Train Federation
    "TrainFederationUseCase",
    "TrainFederationRequest",
    "TrainFederationResponse",
]
