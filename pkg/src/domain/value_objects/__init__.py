"""Domain value objects."""

from .adam_state import AdamState
from .aggregation_weights import AggregationWeights
from .dense_layer import DenseLayer
from .enums import (
    Activation,
    AggregationAlgorithm,
    DetectorKind,
    JSMeasure,
    Label,
    NormalizationScope,
)
from .model_params import ModelParams
from .normalizer_stats import SIGMA_FLOOR, NormalizerStats
from .partition_plan import UNASSIGNED, PartitionPlan
from .train_config import TrainConfig

__all__ = [
    "Activation",
    "AdamState",
    "AggregationAlgorithm",
    "AggregationWeights",
    "DenseLayer",
    "DetectorKind",
    "JSMeasure",
    "Label",
    "ModelParams",
    "NormalizationScope",
    "NormalizerStats",
    "PartitionPlan",
    "SIGMA_FLOOR",
    "TrainConfig",
    "UNASSIGNED",
]
