"""
Labeled dataset entity.

This module contains LabeledDataset, a feature matrix with per-row traffic
labels and device-type ids.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InputDataError
from ..value_objects.enums import Label


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """
    Feature rows with labels and device types.

    Features are stored as a float64 matrix of shape (rows, n_features);
    labels hold ``Label`` values and device types are integer ids.
    """

    features: np.ndarray
    labels: np.ndarray
    device_types: np.ndarray

    def __post_init__(self) -> None:
        """Validate row alignment after initialization."""
        features = np.array(self.features, dtype=np.float64, copy=True)
        labels = np.array(self.labels, dtype=np.int8, copy=True)
        device_types = np.array(self.device_types, dtype=np.int64, copy=True)
        if features.ndim != 2:
            raise InputDataError(
                "Features must be a 2-D matrix",
                details={"shape": features.shape},
            )
        if labels.shape != (features.shape[0],) or device_types.shape != labels.shape:
            raise InputDataError(
                "Features, labels and device types need equal row counts",
                details={
                    "features": features.shape[0],
                    "labels": labels.shape,
                    "device_types": device_types.shape,
                },
            )
        if labels.size and not np.isin(labels, [Label.NORMAL, Label.ANOMALOUS]).all():
            raise InputDataError("Labels must be NORMAL or ANOMALOUS")
        for array in (features, labels, device_types):
            array.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "device_types", device_types)

    @classmethod
    def empty(cls, n_features: int) -> "LabeledDataset":
        """Create a dataset with zero rows."""
        return cls(
            features=np.zeros((0, n_features)),
            labels=np.zeros(0, dtype=np.int8),
            device_types=np.zeros(0, dtype=np.int64),
        )

    @classmethod
    def concat(cls, parts: Sequence["LabeledDataset"]) -> "LabeledDataset":
        """
        Stack datasets row-wise.

        Raises:
            InputDataError: If no parts are given or feature counts differ
        """
        if not parts:
            raise InputDataError("Nothing to concatenate")
        widths = {part.n_features for part in parts}
        if len(widths) != 1:
            raise InputDataError(
                "Datasets have different feature counts",
                details={"widths": sorted(widths)},
            )
        return cls(
            features=np.vstack([part.features for part in parts]),
            labels=np.concatenate([part.labels for part in parts]),
            device_types=np.concatenate([part.device_types for part in parts]),
        )

    @property
    def n_rows(self) -> int:
        """Number of rows."""
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        """Number of feature columns."""
        return int(self.features.shape[1])

    @property
    def normal_mask(self) -> np.ndarray:
        """Boolean mask of normal rows."""
        return self.labels == Label.NORMAL

    @property
    def anomalous_mask(self) -> np.ndarray:
        """Boolean mask of anomalous rows."""
        return self.labels == Label.ANOMALOUS

    def device_type_ids(self) -> Tuple[int, ...]:
        """Sorted distinct device types present in the dataset."""
        return tuple(int(t) for t in np.unique(self.device_types))

    def subset(self, indices: np.ndarray) -> "LabeledDataset":
        """Rows at the given indices, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(
            features=self.features[indices],
            labels=self.labels[indices],
            device_types=self.device_types[indices],
        )

    def with_features(self, features: np.ndarray) -> "LabeledDataset":
        """Same labels and device types with replaced features."""
        return LabeledDataset(
            features=features,
            labels=self.labels,
            device_types=self.device_types,
        )

    def count_by_label(self) -> Tuple[int, int]:
        """(normal rows, anomalous rows)."""
        return int(self.normal_mask.sum()), int(self.anomalous_mask.sum())

    def __repr__(self) -> str:
        """Detailed string representation of the dataset."""
        normal, anomalous = self.count_by_label()
        return (
            f"LabeledDataset(rows={self.n_rows}, features={self.n_features}, "
            f"normal={normal}, anomalous={anomalous})"
        )
