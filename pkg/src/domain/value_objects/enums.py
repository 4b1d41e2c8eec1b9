"""
Enumerations shared across the domain.

This module contains the small closed vocabularies of the simulator: traffic
labels, layer activations, detector kinds and aggregation algorithms.
"""

from enum import Enum, IntEnum


class Label(IntEnum):
    """Ground-truth label of a traffic sample."""

    NORMAL = 0
    ANOMALOUS = 1


class Activation(str, Enum):
    """Activation applied element-wise after a dense layer."""

    TANH = "tanh"
    IDENTITY = "identity"


class DetectorKind(str, Enum):
    """Anomaly detector family."""

    AE = "ae"
    SAECEN = "sae_cen"

    @property
    def display_name(self) -> str:
        """Column label used in report tables."""
        return "Autoencoder" if self is DetectorKind.AE else "SAE-CEN"


class AggregationAlgorithm(str, Enum):
    """Server-side aggregation algorithm."""

    FEDAVG = "fedavg"
    FEDPROX = "fedprox"
    MSEAVG = "mseavg"

    @property
    def display_name(self) -> str:
        """Column label used in report tables."""
        return {
            AggregationAlgorithm.FEDAVG: "FedAvg",
            AggregationAlgorithm.FEDPROX: "FedProx",
            AggregationAlgorithm.MSEAVG: "MSEAvg",
        }[self]


class JSMeasure(str, Enum):
    """How per-gateway Jensen-Shannon values are reported."""

    DISTANCE = "distance"
    DIVERGENCE = "divergence"


class NormalizationScope(str, Enum):
    """Which rows the z-score statistics are fitted on."""

    NETWORK = "network"
    GATEWAY = "gateway"
