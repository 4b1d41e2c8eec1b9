"""
Partition plan value object.

This module contains PartitionPlan, the Dirichlet allocation of device-type
data to simulated gateways together with its realized non-IIDness.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..exceptions import ConfigurationError
from .enums import JSMeasure

UNASSIGNED = -1


@dataclass(frozen=True, eq=False)
class PartitionPlan:
    """
    Allocation of dataset rows to gateways.

    Attributes:
        proportions: Matrix (device types x gateways); each row sums to 1
        device_types: Device type id of each proportions row
        concentration: Dirichlet concentration used for sampling
        realized_js: Jensen-Shannon non-IIDness of the actual assignment
        js_measure: Which Jensen-Shannon value ``realized_js`` holds
        assignment: Gateway id per dataset row, UNASSIGNED for rows that are
            not part of the training pool
    """

    proportions: np.ndarray
    device_types: Tuple[int, ...]
    concentration: float
    realized_js: float
    assignment: np.ndarray
    js_measure: JSMeasure = JSMeasure.DISTANCE

    def __post_init__(self) -> None:
        """Validate the plan after initialization."""
        proportions = np.array(self.proportions, dtype=np.float64, copy=True)
        assignment = np.array(self.assignment, dtype=np.int64, copy=True)
        if proportions.ndim != 2 or proportions.shape[0] != len(self.device_types):
            raise ConfigurationError("Proportions need one row per device type")
        if not np.allclose(proportions.sum(axis=1), 1.0, atol=1e-9):
            raise ConfigurationError("Each proportions row must sum to 1")
        if np.any(proportions < 0):
            raise ConfigurationError("Proportions cannot be negative")
        if not 0.0 <= self.realized_js <= 1.0:
            raise ConfigurationError(
                "Realized JS must lie in [0, 1]",
                field="realized_js",
                value=self.realized_js,
            )
        proportions.setflags(write=False)
        assignment.setflags(write=False)
        object.__setattr__(self, "proportions", proportions)
        object.__setattr__(self, "assignment", assignment)
        device_types = tuple(int(t) for t in self.device_types)
        object.__setattr__(self, "device_types", device_types)
        object.__setattr__(self, "js_measure", JSMeasure(self.js_measure))

    @property
    def n_gateways(self) -> int:
        """Number of gateways in the plan."""
        return int(self.proportions.shape[1])

    def rows_of(self, gateway_id: int) -> np.ndarray:
        """Dataset row indices assigned to one gateway, ascending."""
        return np.flatnonzero(self.assignment == gateway_id)

    def gateway_sizes(self) -> List[int]:
        """Number of rows per gateway."""
        return [int(np.sum(self.assignment == g)) for g in range(self.n_gateways)]

    def assigned_pairs(self) -> List[Tuple[int, int]]:
        """(row_index, gateway_id) for every assigned row."""
        rows = np.flatnonzero(self.assignment != UNASSIGNED)
        return [(int(r), int(self.assignment[r])) for r in rows]

    def summary(self) -> Dict[str, object]:
        """Metadata persisted next to the assignment file."""
        return {
            "n_gateways": self.n_gateways,
            "concentration": self.concentration,
            "realized_js": self.realized_js,
            "js_measure": self.js_measure.value,
            "device_types": list(self.device_types),
            "gateway_sizes": self.gateway_sizes(),
            "proportions": self.proportions.tolist(),
        }
