"""Application use cases."""

# Use Cases
from .build_report import (
    BuildReportUseCase,
    BuildReportRequest,
    BuildReportResponse,
)
from .partition_dataset import (
    PartitionDatasetUseCase,
    PartitionDatasetRequest,
    PartitionDatasetResponse,
)
from .run_sweep import (
    RunSweepUseCase,
    RunSweepRequest,
    RunSweepResponse,
    SweepPoint,
)
from .score_samples import (
    ScoreSamplesUseCase,
    ScoreSamplesRequest,
    ScoreSamplesResponse,
)
from .train_federation import (
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
    "SweepPoint",
    # Score Samples
    "ScoreSamplesUseCase",
    "ScoreSamplesRequest",
    "ScoreSamplesResponse",
    # Train Federation
    "TrainFederationUseCase",
    "TrainFederationRequest",
    "TrainFederationResponse",
]
