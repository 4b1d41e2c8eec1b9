"""
Aggregation service.

This module contains the server-side averaging rules: training-size weighted
averaging (FedAvg, also used after FedProx rounds) and the inverse
development-error weighting of MSEAvg.
"""

from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InputDataError
from ..value_objects.aggregation_weights import AggregationWeights
from ..value_objects.model_params import ModelParams, require_same_shape
from .autoencoder import ae_loss

MSE_FLOOR = 1e-12


def weighted_average(
    models: Sequence[ModelParams], alphas: Sequence[float]
) -> ModelParams:
    """
    Per-parameter average ``sum(alpha_i * W_i) / sum(alpha_i)``.

    The average is accumulated as offsets from the first model, so averaging
    copies of one model returns it bit-exactly.

    Args:
        models: Models with one shared layer structure
        alphas: Positive raw weight of each model

    Returns:
        Averaged parameters

    Raises:
        InputDataError: If no models are given, counts differ or shapes differ
    """
    models = list(models)
    if not models:
        raise InputDataError("At least one model is required for aggregation")
    if len(alphas) != len(models):
        raise InputDataError(
            "One weight per model is required",
            details={"models": len(models), "weights": len(alphas)},
        )
    require_same_shape(models, error_cls=InputDataError)

    weights = np.asarray(AggregationWeights(alphas=tuple(alphas)).normalized)
    stacked = np.stack([model.flatten() for model in models])
    base = stacked[0]
    return models[0].with_flat(base + weights @ (stacked - base))


def size_weights(sizes: Sequence[int]) -> AggregationWeights:
    """Training-set sizes as aggregation weights."""
    if any(int(size) <= 0 for size in sizes):
        raise InputDataError(
            "Training-set sizes must be positive",
            details={"sizes": [int(size) for size in sizes]},
        )
    return AggregationWeights(alphas=tuple(float(size) for size in sizes))


def fedavg_aggregate(
    models: Sequence[ModelParams], sizes: Sequence[int]
) -> ModelParams:
    """
    Size-weighted parameter average.

    Args:
        models: Local models of the selected gateways
        sizes: Training-set size of each gateway

    Returns:
        Global parameters with per-entry weights ``sizes / sum(sizes)``

    Raises:
        InputDataError: If there are no models, on shape mismatch or on
            non-positive sizes
    """
    if len(models) == 0 or len(sizes) == 0:
        raise InputDataError("At least one local model is required")
    return weighted_average(models, size_weights(sizes).alphas)


def mse_on_dev(model: ModelParams, dev: np.ndarray) -> float:
    """
    Full reconstruction MSE of a model on the development dataset.

    The shrink term is excluded. The value is clamped to ``MSE_FLOOR`` so it
    can be inverted.

    Raises:
        InputDataError: If the development dataset is empty
    """
    dev = np.asarray(dev, dtype=np.float64)
    if dev.ndim != 2 or dev.shape[0] == 0:
        raise InputDataError("Development dataset is empty")
    return max(ae_loss(dev, model), MSE_FLOOR)


def aggregate_by_errors(
    models: Sequence[ModelParams],
    mses: Sequence[float],
) -> Tuple[ModelParams, AggregationWeights]:
    """
    Inverse-error weighted average with ``alpha_i = 1 / max(MSE_i, floor)``.

    Args:
        models: Local models
        mses: Development-set error of each model

    Returns:
        Global parameters and the weights used
    """
    clamped = tuple(max(float(mse), MSE_FLOOR) for mse in mses)
    weights = AggregationWeights(
        alphas=tuple(1.0 / mse for mse in clamped), mses=clamped
    )
    return weighted_average(models, weights.alphas), weights


def mseavg_aggregate(
    models: Sequence[ModelParams],
    dev: np.ndarray,
) -> Tuple[ModelParams, AggregationWeights]:
    """
    MSEAvg aggregation.

    Every local model is evaluated on the development dataset and weighted by
    the inverse of its reconstruction error, so models that reconstruct the
    shared normal data well dominate the global model.

    Args:
        models: Local models of the selected gateways
        dev: Normalized development dataset held by the server

    Returns:
        Global parameters and the per-model weights for logging

    Raises:
        InputDataError: On shape mismatch or empty development data
    """
    models = list(models)
    if not models:
        raise InputDataError("At least one model is required for aggregation")
    require_same_shape(models, error_cls=InputDataError)
    mses = [mse_on_dev(model, dev) for model in models]
    return aggregate_by_errors(models, mses)
