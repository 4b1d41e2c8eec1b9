"""
Anomaly detection service.

This module contains the scorers of both detector families, centroid fitting
and the quantile threshold used to turn scores into verdicts.
"""

from typing import Optional, Sequence

import numpy as np

from ..entities.detector import CentroidModel, Detector
from ..exceptions import ConfigurationError, DetectorStateError, InputDataError
from ..value_objects.enums import DetectorKind, Label
from ..value_objects.model_params import ModelParams
from .autoencoder import forward_encoder, reconstruction_errors
from .preprocessing import zscore_apply


def fit_centroid(latents: np.ndarray) -> CentroidModel:
    """
    Centroid of latent vectors (arithmetic mean of the rows).

    Raises:
        InputDataError: If there are no rows
    """
    latents = np.asarray(latents, dtype=np.float64)
    if latents.ndim != 2 or latents.shape[0] == 0:
        raise InputDataError("Cannot fit a centroid without latent vectors")
    return CentroidModel(centroid=latents.mean(axis=0))


def score_ae(x: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    Squared L2 reconstruction error.

    Args:
        x: Feature vector (n,) or batch (rows, n)

    Returns:
        Scalar-shaped array for a vector, vector of scores for a batch

    Raises:
        InputDataError: On dimension mismatch
    """
    batch = _as_input(x, params.input_dim)
    scores = reconstruction_errors(batch, params)
    return scores[0] if np.ndim(x) == 1 else scores


def score_saecen(x: np.ndarray, detector: Detector) -> np.ndarray:
    """
    Euclidean distance between the encoded input and the centroid.

    Only the encoder is evaluated; the decoder never influences the score.

    Raises:
        DetectorStateError: If the centroid has not been fitted
        InputDataError: On dimension mismatch
    """
    if detector.centroid is None:
        raise DetectorStateError("SAE-CEN detector has no fitted centroid")
    batch = _as_input(x, detector.params.input_dim)
    latent = forward_encoder(batch, detector.params)
    scores = np.linalg.norm(latent - detector.centroid.centroid, axis=1)
    return scores[0] if np.ndim(x) == 1 else scores


def _as_input(x: np.ndarray, expected_dim: int) -> np.ndarray:
    batch = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if batch.ndim != 2 or batch.shape[1] != expected_dim:
        raise InputDataError(
            "Input dimension does not match the model",
            details={"expected": expected_dim, "got": batch.shape[-1]},
        )
    return batch


def score_batch(
    detector: Detector, features: np.ndarray, raw: bool = False
) -> np.ndarray:
    """
    Anomaly scores of every row.

    Args:
        detector: Fitted detector
        features: Matrix of feature rows
        raw: When True, apply the detector's normalizer first

    Returns:
        Vector of non-negative scores
    """
    detector.require_fitted()
    batch = np.asarray(features, dtype=np.float64)
    if batch.ndim == 2 and batch.shape[0] == 0:
        _as_input(np.zeros((1, batch.shape[1])), detector.params.input_dim)
        return np.zeros(0)
    batch = _as_input(batch, detector.params.input_dim)
    if raw:
        if detector.normalizer is None:
            raise DetectorStateError("Detector has no normalizer for raw inputs")
        batch = zscore_apply(batch, detector.normalizer)
    if detector.kind is DetectorKind.AE:
        return score_ae(batch, detector.params)
    return score_saecen(batch, detector)


def classify(detector: Detector, scores: np.ndarray) -> np.ndarray:
    """
    Verdicts for precomputed scores: anomalous iff score > threshold.

    Raises:
        DetectorStateError: If the detector has no threshold
    """
    if detector.threshold is None:
        raise DetectorStateError("Detector has no decision threshold")
    anomalous = np.asarray(scores) > detector.threshold
    return np.where(anomalous, Label.ANOMALOUS, Label.NORMAL)


def threshold_from_quantile(train_scores: Sequence[float], q: float) -> float:
    """
    Linearly interpolated q-quantile of training-normal scores.

    Raises:
        InputDataError: If there are no scores
        ConfigurationError: If q lies outside [0, 1]
    """
    scores = np.asarray(train_scores, dtype=np.float64)
    if scores.size == 0:
        raise InputDataError("Cannot derive a threshold from no scores")
    if not 0.0 <= q <= 1.0:
        raise ConfigurationError("Quantile must lie in [0, 1]", field="q", value=q)
    return float(np.quantile(scores, q, method="linear"))


def build_detector(
    kind: DetectorKind,
    params: ModelParams,
    train_normals: np.ndarray,
    threshold_quantile: Optional[float] = None,
) -> Detector:
    """
    Fit a detector from the final global parameters on local normal data.

    SAE-CEN detectors drop the decoder and fit the centroid on the latent
    vectors of ``train_normals``; AE detectors keep the full model.

    Args:
        kind: Detector family
        params: Final global parameters
        train_normals: Normalized local normal training rows
        threshold_quantile: When given, also fit the decision threshold

    Returns:
        Fitted detector
    """
    kind = DetectorKind(kind)
    if kind is DetectorKind.SAECEN:
        encoder_only = params.strip_decoder()
        centroid = fit_centroid(forward_encoder(train_normals, encoder_only))
        detector = Detector(kind=kind, params=encoder_only, centroid=centroid)
    else:
        detector = Detector(kind=kind, params=params)

    if threshold_quantile is not None:
        scores = score_batch(detector, train_normals)
        threshold = threshold_from_quantile(scores, threshold_quantile)
        detector = detector.with_threshold(threshold)
    return detector


def latent_matrix(detector: Detector, features: np.ndarray) -> np.ndarray:
    """Latent vectors of normalized rows, for inspection exports."""
    batch = _as_input(features, detector.params.input_dim)
    return forward_encoder(batch, detector.params)
