"""Domain entities."""

from .detector import CentroidModel, Detector
from .gateway_state import GatewayState
from .labeled_dataset import LabeledDataset
from .reports import (
    GatewayResult,
    GatewaySummary,
    RepeatResult,
    RoundRecord,
    RunReport,
    SummaryStat,
)

__all__ = [
    "CentroidModel",
    "Detector",
    "GatewayResult",
    "GatewayState",
    "GatewaySummary",
    "LabeledDataset",
    "RepeatResult",
    "RoundRecord",
    "RunReport",
    "SummaryStat",
]
