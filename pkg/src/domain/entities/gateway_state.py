"""
Gateway domain entity.

This module contains the GatewayState entity which represents one simulated
IoT gateway: its processed local splits, normalizer and current model.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..exceptions import InputDataError
from ..value_objects.model_params import ModelParams
from ..value_objects.normalizer_stats import NormalizerStats
from .labeled_dataset import LabeledDataset


@dataclass
class GatewayState:
    """
    Gateway domain entity.

    All matrices are already z-scored with the gateway's normalizer.
    ``train``, ``val``, ``dev_contribution`` and ``test_holdout`` hold normal
    rows only; anomalies reach the gateway only through ``test_set``.
    """

    id: int
    train: np.ndarray
    val: np.ndarray
    dev_contribution: np.ndarray
    test_holdout: np.ndarray
    normalizer: NormalizerStats
    device_types: Tuple[int, ...] = ()
    local_params: Optional[ModelParams] = None
    test_set: Optional[LabeledDataset] = None
    rounds_participated: int = field(default=0)

    def __post_init__(self) -> None:
        """Validate the local splits after initialization."""
        if self.train.ndim != 2 or self.train.shape[0] == 0:
            raise InputDataError(
                "Gateway training split cannot be empty",
                details={"gateway_id": self.id},
            )
        width = self.train.shape[1]
        for name in ("val", "dev_contribution", "test_holdout"):
            split = getattr(self, name)
            if split.ndim != 2 or split.shape[1] != width:
                raise InputDataError(
                    f"Gateway split {name} has the wrong feature count",
                    details={"gateway_id": self.id, "shape": split.shape},
                )

    @property
    def sample_count(self) -> int:
        """Training-set size, the FedAvg weight of the gateway."""
        return int(self.train.shape[0])

    @property
    def n_features(self) -> int:
        """Number of features in the processed data."""
        return int(self.train.shape[1])

    def receive_params(self, params: ModelParams) -> None:
        """
        Replace the local model with parameters sent by the server.

        Args:
            params: Parameters broadcast by the server
        """
        self.local_params = params

    def complete_round(self, params: ModelParams) -> None:
        """Store the locally trained parameters after a round."""
        self.local_params = params
        self.rounds_participated += 1

    def __repr__(self) -> str:
        """Detailed string representation of the gateway."""
        return (
            f"GatewayState(id={self.id}, train={self.train.shape[0]}, "
            f"val={self.val.shape[0]}, dev={self.dev_contribution.shape[0]}, "
            f"test={self.test_holdout.shape[0]}, device_types={self.device_types})"
        )
