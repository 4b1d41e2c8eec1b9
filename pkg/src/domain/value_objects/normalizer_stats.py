"""
Normalizer statistics value object.

This module contains NormalizerStats, the per-feature z-score parameters a
gateway applies to its rows, fitted on normal training data.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError

SIGMA_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class NormalizerStats:
    """
    Z-score statistics.

    ``std`` entries are clamped to ``SIGMA_FLOOR`` so constant features do
    not divide by zero.
    """

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self) -> None:
        """Validate and freeze the statistics."""
        mean = np.array(self.mean, dtype=np.float64, copy=True)
        std = np.array(self.std, dtype=np.float64, copy=True)
        if mean.ndim != 1 or mean.shape != std.shape:
            raise ConfigurationError("Mean and std must be equal-length vectors")
        std = np.maximum(std, SIGMA_FLOOR)
        mean.setflags(write=False)
        std.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)

    @property
    def n_features(self) -> int:
        """Number of features the statistics were fitted on."""
        return int(self.mean.shape[0])

    @property
    def clamped(self) -> np.ndarray:
        """Boolean mask of features whose std hit the floor."""
        return self.std <= SIGMA_FLOOR
