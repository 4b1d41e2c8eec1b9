"""
Detector domain entity.

This module contains the fitted anomaly detectors: the reconstruction-error
autoencoder and the stripped-encoder centroid hybrid.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ..exceptions import DetectorStateError, InputDataError
from ..value_objects.enums import DetectorKind
from ..value_objects.model_params import ModelParams
from ..value_objects.normalizer_stats import NormalizerStats


@dataclass(frozen=True, eq=False)
class CentroidModel:
    """Centroid of normal latent vectors."""

    centroid: np.ndarray

    def __post_init__(self) -> None:
        """Validate the centroid after initialization."""
        centroid = np.array(self.centroid, dtype=np.float64, copy=True)
        if centroid.ndim != 1 or centroid.size == 0:
            raise InputDataError("Centroid must be a non-empty vector")
        if not np.all(np.isfinite(centroid)):
            raise InputDataError("Centroid entries must be finite")
        centroid.setflags(write=False)
        object.__setattr__(self, "centroid", centroid)

    @property
    def dim(self) -> int:
        """Latent dimension of the centroid."""
        return int(self.centroid.shape[0])


@dataclass(frozen=True, eq=False)
class Detector:
    """
    Fitted anomaly detector.

    An AE detector scores by reconstruction error and needs the full model.
    A SAE-CEN detector keeps only the encoder and scores by the distance of
    the latent vector to its centroid. Detectors are immutable once fitted.
    """

    kind: DetectorKind
    params: ModelParams
    centroid: Optional[CentroidModel] = None
    threshold: Optional[float] = None
    normalizer: Optional[NormalizerStats] = None

    def __post_init__(self) -> None:
        """Validate the detector after initialization."""
        object.__setattr__(self, "kind", DetectorKind(self.kind))
        if self.kind is DetectorKind.AE and self.params.is_stripped:
            raise DetectorStateError("An AE detector needs the decoder")
        if self.centroid is not None and self.centroid.dim != self.params.latent_dim:
            raise DetectorStateError(
                "Centroid dimension does not match the latent dimension",
                details={
                    "centroid": self.centroid.dim,
                    "latent": self.params.latent_dim,
                },
            )

    @property
    def is_fitted(self) -> bool:
        """True when the detector can score."""
        return self.kind is DetectorKind.AE or self.centroid is not None

    def require_fitted(self) -> None:
        """
        Raise unless the detector can score.

        Raises:
            DetectorStateError: If a SAE-CEN detector has no centroid
        """
        if not self.is_fitted:
            raise DetectorStateError("SAE-CEN detector has no fitted centroid")

    def with_threshold(self, threshold: float) -> "Detector":
        """Copy of the detector with a decision threshold."""
        return replace(self, threshold=float(threshold))

    def with_normalizer(self, normalizer: NormalizerStats) -> "Detector":
        """Copy of the detector that normalizes raw inputs first."""
        return replace(self, normalizer=normalizer)
