"""Domain layer."""

# Entities
from .entities import (
    CentroidModel,
    Detector,
    GatewayResult,
    GatewayState,
    LabeledDataset,
    RoundRecord,
    RunReport,
)

# Value Objects
from .value_objects import (
    AggregationAlgorithm,
    DetectorKind,
    Label,
    ModelParams,
    NormalizerStats,
    PartitionPlan,
    TrainConfig,
)

# Repositories
from .repositories import ArtifactRepository, DatasetRepository

__all__ = [
    # Entities
    "CentroidModel",
    "Detector",
    "GatewayResult",
    "GatewayState",
    "LabeledDataset",
    "RoundRecord",
    "RunReport",
    # Value Objects
    "AggregationAlgorithm",
    "DetectorKind",
    "Label",
    "ModelParams",
    "NormalizerStats",
    "PartitionPlan",
    "TrainConfig",
    # Repositories
    "ArtifactRepository",
    "DatasetRepository",
]
