"""
Dense autoencoder service.

This module contains the forward passes, the reconstruction and shrink losses
and their analytic gradients for the feed-forward autoencoder. All arithmetic
is double precision.
"""

import math
from typing import List, Optional, Tuple

import numpy as np

from ..exceptions import ConfigurationError, DetectorStateError, InputDataError
from ..value_objects.dense_layer import DenseLayer
from ..value_objects.enums import Activation
from ..value_objects.model_params import ModelParams, require_same_shape


def latent_dim_for(input_dim: int) -> int:
    """Latent size rule of thumb ``floor(1 + sqrt(n))``."""
    return int(math.floor(1 + math.sqrt(input_dim)))


def hidden_dim_for(input_dim: int, latent_dim: int) -> int:
    """Hidden layer size ``ceil((n + m) / 2)``."""
    return int(math.ceil((input_dim + latent_dim) / 2))


def glorot_layer(
    in_dim: int,
    out_dim: int,
    activation: Activation,
    rng: np.random.Generator,
) -> DenseLayer:
    """Layer with uniform Glorot weights and zero biases."""
    limit = math.sqrt(6.0 / (in_dim + out_dim))
    weights = rng.uniform(-limit, limit, size=(out_dim, in_dim))
    return DenseLayer(weights=weights, biases=np.zeros(out_dim), activation=activation)


def initialize_params(
    input_dim: int,
    rng: np.random.Generator,
    latent_dim: Optional[int] = None,
    hidden_dim: Optional[int] = None,
) -> ModelParams:
    """
    Build a freshly initialized autoencoder.

    The encoder is input -> hidden (tanh) -> latent (identity) and the decoder
    mirrors it: latent -> hidden (tanh) -> input (identity).

    Args:
        input_dim: Feature dimension n
        rng: Random generator used for the weights
        latent_dim: Latent size m, defaults to the rule of thumb
        hidden_dim: Hidden size, defaults to ceil((n + m) / 2)

    Returns:
        Initialized parameters

    Raises:
        ConfigurationError: If a dimension is not positive
    """
    if input_dim < 1:
        raise ConfigurationError("Input dimension must be positive", value=input_dim)
    m = latent_dim if latent_dim is not None else latent_dim_for(input_dim)
    h = hidden_dim if hidden_dim is not None else hidden_dim_for(input_dim, m)
    if m < 1 or h < 1:
        raise ConfigurationError(
            "Latent and hidden sizes must be positive",
            details={"latent_dim": m, "hidden_dim": h},
        )
    encoder = (
        glorot_layer(input_dim, h, Activation.TANH, rng),
        glorot_layer(h, m, Activation.IDENTITY, rng),
    )
    decoder = (
        glorot_layer(m, h, Activation.TANH, rng),
        glorot_layer(h, input_dim, Activation.IDENTITY, rng),
    )
    return ModelParams(encoder_layers=encoder, decoder_layers=decoder)


def _as_batch(x: np.ndarray, expected_dim: int, what: str) -> Tuple[np.ndarray, bool]:
    array = np.asarray(x, dtype=np.float64)
    single = array.ndim == 1
    batch = array.reshape(1, -1) if single else array
    if batch.ndim != 2 or batch.shape[1] != expected_dim:
        raise ConfigurationError(
            f"{what} has dimension {batch.shape[-1]}, expected {expected_dim}",
            details={"shape": array.shape},
        )
    return batch, single


def _run_layers(layers, batch: np.ndarray) -> List[np.ndarray]:
    outputs = [batch]
    for layer in layers:
        outputs.append(layer.apply(outputs[-1]))
    return outputs


def forward_encoder(x: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    Encode feature vectors into latent vectors.

    Args:
        x: One feature vector (n,) or a batch (rows, n)

    Returns:
        Latent vector (m,) or batch (rows, m), matching the input rank

    Raises:
        ConfigurationError: On dimension mismatch
    """
    batch, single = _as_batch(x, params.input_dim, "Feature vector")
    latent = _run_layers(params.encoder_layers, batch)[-1]
    return latent[0] if single else latent


def forward_decoder(h: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    Map latent vectors back to the feature space.

    Raises:
        ConfigurationError: On dimension mismatch
        DetectorStateError: If the decoder has been stripped
    """
    if params.is_stripped:
        raise DetectorStateError("Decoder was removed from these parameters")
    batch, single = _as_batch(h, params.latent_dim, "Latent vector")
    reconstruction = _run_layers(params.decoder_layers, batch)[-1]
    return reconstruction[0] if single else reconstruction


def reconstruct(x: np.ndarray, params: ModelParams) -> np.ndarray:
    """Full encoder + decoder pass."""
    return forward_decoder(forward_encoder(x, params), params)


def _require_rows(batch: np.ndarray) -> None:
    if batch.ndim != 2 or batch.shape[0] == 0:
        raise InputDataError("Batch must contain at least one row")


def reconstruction_errors(batch: np.ndarray, params: ModelParams) -> np.ndarray:
    """Squared L2 reconstruction error of every row."""
    batch = np.asarray(batch, dtype=np.float64)
    residual = batch - reconstruct(batch, params)
    return np.sum(residual * residual, axis=1)


def ae_loss(batch: np.ndarray, params: ModelParams) -> float:
    """
    Mean squared-L2 reconstruction error over the batch.

    Raises:
        InputDataError: If the batch is empty
    """
    batch = np.asarray(batch, dtype=np.float64)
    _require_rows(batch)
    return float(np.mean(reconstruction_errors(batch, params)))


def sae_loss(batch: np.ndarray, params: ModelParams, shrink_lambda: float) -> float:
    """
    Shrink autoencoder loss.

    ``ae_loss + lambda * mean ||h||^2``; with ``lambda = 0`` the result equals
    ``ae_loss`` bit for bit.

    Raises:
        ConfigurationError: If lambda is negative
        InputDataError: If the batch is empty
    """
    if shrink_lambda < 0:
        raise ConfigurationError(
            "Shrink factor cannot be negative", value=shrink_lambda
        )
    batch = np.asarray(batch, dtype=np.float64)
    _require_rows(batch)
    latent = forward_encoder(batch, params)
    residual = batch - forward_decoder(latent, params)
    reconstruction = float(np.mean(np.sum(residual * residual, axis=1)))
    shrink = float(np.mean(np.sum(latent * latent, axis=1)))
    return reconstruction + shrink_lambda * shrink


def _backprop_layers(
    layers,
    outputs: List[np.ndarray],
    upstream: np.ndarray,
) -> Tuple[List[Tuple[np.ndarray, np.ndarray]], np.ndarray]:
    grads: List[Tuple[np.ndarray, np.ndarray]] = []
    delta = upstream
    for index in range(len(layers) - 1, -1, -1):
        layer = layers[index]
        activated = outputs[index + 1]
        if layer.activation is Activation.TANH:
            delta = delta * (1.0 - activated * activated)
        grads.append((delta.T @ outputs[index], delta.sum(axis=0)))
        delta = delta @ layer.weights
    grads.reverse()
    return grads, delta


def backward(
    batch: np.ndarray,
    params: ModelParams,
    shrink_lambda: float,
    prox_mu: float = 0.0,
    anchor_params: Optional[ModelParams] = None,
) -> ModelParams:
    """
    Analytic gradient of the shrink loss plus an optional proximal term.

    The objective is ``sae_loss(batch, params, lambda)`` and, when
    ``prox_mu > 0``, ``(mu / 2) * ||params - anchor||^2`` summed over every
    parameter.

    Args:
        batch: Mini-batch of feature rows
        params: Point at which the gradient is evaluated
        shrink_lambda: Shrink factor lambda
        prox_mu: Proximal factor mu, 0 disables the term
        anchor_params: Anchor of the proximal term, required iff mu > 0

    Returns:
        Gradient with the same structure as ``params``

    Raises:
        ConfigurationError: On a missing or mis-shaped anchor
        InputDataError: If the batch is empty
    """
    if params.is_stripped:
        raise DetectorStateError("Cannot train parameters without a decoder")
    if prox_mu > 0 and anchor_params is None:
        raise ConfigurationError("A proximal term needs anchor parameters")
    if anchor_params is not None:
        require_same_shape([params, anchor_params])

    batch, _ = _as_batch(batch, params.input_dim, "Batch")
    _require_rows(batch)
    rows = batch.shape[0]

    encoder_outputs = _run_layers(params.encoder_layers, batch)
    latent = encoder_outputs[-1]
    decoder_outputs = _run_layers(params.decoder_layers, latent)
    reconstruction = decoder_outputs[-1]

    upstream = 2.0 * (reconstruction - batch) / rows
    decoder_grads, d_latent = _backprop_layers(
        params.decoder_layers, decoder_outputs, upstream
    )
    d_latent = d_latent + 2.0 * shrink_lambda * latent / rows
    encoder_grads, _ = _backprop_layers(
        params.encoder_layers, encoder_outputs, d_latent
    )

    grad_layers = [
        layer.with_arrays(gw, gb)
        for layer, (gw, gb) in zip(params.layers, encoder_grads + decoder_grads)
    ]
    n_encoder = len(params.encoder_layers)
    gradient = ModelParams(
        encoder_layers=tuple(grad_layers[:n_encoder]),
        decoder_layers=tuple(grad_layers[n_encoder:]),
    )
    if prox_mu > 0 and anchor_params is not None:
        prox = prox_mu * (params.flatten() - anchor_params.flatten())
        gradient = gradient.with_flat(gradient.flatten() + prox)
    return gradient
