"""
Local training service.

This module contains the gateway update: mini-batch Adam training of the
(shrink) autoencoder with validation-based early stopping.
"""

from typing import Optional

import numpy as np

from ..exceptions import InputDataError
from ..value_objects.model_params import ModelParams
from ..value_objects.train_config import TrainConfig
from .autoencoder import backward, sae_loss
from .optimizer import adam_step, init_adam


def train_local(
    data: np.ndarray,
    val: np.ndarray,
    init: ModelParams,
    cfg: TrainConfig,
    rng_seed: int,
    anchor: Optional[ModelParams] = None,
) -> ModelParams:
    """
    Train a local model from the received global parameters.

    Runs at most ``cfg.local_epochs`` epochs over shuffled mini-batches of
    ``cfg.batch_size`` rows (the last batch may be smaller). After each epoch
    the validation shrink loss is measured; training stops once it fails to
    improve by ``cfg.min_delta`` for ``cfg.patience`` consecutive epochs. The
    parameters with the lowest validation loss seen, the initial ones
    included, are returned, however small their margin.

    When ``cfg.prox_mu > 0`` the proximal term pulls towards ``anchor``, which
    defaults to ``init`` (the current global model).

    Args:
        data: Normalized local training rows
        val: Normalized local validation rows
        init: Parameters received from the server
        cfg: Local training hyperparameters
        rng_seed: Seed of the mini-batch shuffling stream

    Returns:
        Best parameters found

    Raises:
        InputDataError: If the training or validation data is empty
    """
    data = np.asarray(data, dtype=np.float64)
    val = np.asarray(val, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] == 0:
        raise InputDataError("Local training data is empty")
    if val.ndim != 2 or val.shape[0] == 0:
        raise InputDataError("Local validation data is empty")
    if cfg.local_epochs == 0:
        return init

    rng = np.random.default_rng(rng_seed)
    anchor_params = None
    if cfg.prox_mu > 0:
        anchor_params = anchor if anchor is not None else init

    params = init
    state = init_adam(params)
    best_params = init
    best_loss = sae_loss(val, init, cfg.shrink_lambda)
    reference_loss = best_loss
    stale_epochs = 0
    rows = data.shape[0]

    for _epoch in range(cfg.local_epochs):
        order = rng.permutation(rows)
        for start in range(0, rows, cfg.batch_size):
            batch = data[order[start : start + cfg.batch_size]]
            grads = backward(
                batch,
                params,
                cfg.shrink_lambda,
                prox_mu=cfg.prox_mu,
                anchor_params=anchor_params,
            )
            params, state = adam_step(params, grads, state, cfg.learning_rate)

        val_loss = sae_loss(val, params, cfg.shrink_lambda)
        if val_loss < best_loss:
            best_loss = val_loss
            best_params = params
        if val_loss < reference_loss - cfg.min_delta:
            reference_loss = val_loss
            stale_epochs = 0
        else:
            stale_epochs += 1
            if stale_epochs >= cfg.patience:
                break

    return best_params
