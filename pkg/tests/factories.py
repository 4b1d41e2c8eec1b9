"""Builders of small models, gateways and configs shared by the tests."""

import json
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from src.domain.entities.gateway_state import GatewayState
from src.domain.services.autoencoder import initialize_params
from src.domain.services.preprocessing import zscore_fit
from src.domain.value_objects.dense_layer import DenseLayer
from src.domain.value_objects.enums import Activation
from src.domain.value_objects.model_params import ModelParams


def identity_model(dim: int = 2) -> ModelParams:
    """Single-layer encoder and decoder, both the identity map."""
    eye = np.eye(dim)
    return ModelParams(
        encoder_layers=(DenseLayer(eye, np.zeros(dim), Activation.IDENTITY),),
        decoder_layers=(DenseLayer(eye, np.zeros(dim), Activation.IDENTITY),),
    )


def zero_decoder_model(dim: int = 2) -> ModelParams:
    """Identity encoder with a decoder that always outputs zero."""
    return ModelParams(
        encoder_layers=(
            DenseLayer(np.eye(dim), np.zeros(dim), Activation.IDENTITY),
        ),
        decoder_layers=(
            DenseLayer(np.zeros((dim, dim)), np.zeros(dim), Activation.IDENTITY),
        ),
    )


def random_model(seed: int, input_dim: int = 4, **dims: int) -> ModelParams:
    """Glorot-initialized autoencoder."""
    return initialize_params(input_dim, np.random.default_rng(seed), **dims)


def perturbed(params: ModelParams, seed: int, scale: float = 0.1) -> ModelParams:
    """Copy of ``params`` with Gaussian noise on every parameter."""
    rng = np.random.default_rng(seed)
    flat = params.flatten()
    return params.with_flat(flat + scale * rng.standard_normal(flat.size))


def make_gateway(
    gateway_id: int,
    seed: int = 0,
    n_features: int = 4,
    n_train: int = 24,
    n_val: int = 6,
    n_dev: int = 24,
    n_test: int = 6,
) -> GatewayState:
    """Gateway with standard-normal splits."""
    rng = np.random.default_rng([seed, gateway_id])
    train = rng.standard_normal((n_train, n_features))
    return GatewayState(
        id=gateway_id,
        train=train,
        val=rng.standard_normal((n_val, n_features)),
        dev_contribution=rng.standard_normal((n_dev, n_features)),
        test_holdout=rng.standard_normal((n_test, n_features)),
        normalizer=zscore_fit(train),
    )


def tiny_config_payload(**overrides: Any) -> Dict[str, Any]:
    """Experiment settings small enough to train in about a second."""
    payload: Dict[str, Any] = {
        "dataset": {
            "source": "synthetic",
            "n_device_types": 3,
            "dims": 4,
            "normals_per_type": 60,
            "anomalies_per_type": 20,
        },
        "n_gateways": 3,
        "gateway_ratio": 1.0,
        "dirichlet_alpha": 100.0,
        "train": {
            "learning_rate": 0.001,
            "batch_size": 12,
            "local_epochs": 2,
        },
        "global_rounds": 2,
        "repeats": 1,
        "master_seed": 7,
    }
    payload.update(overrides)
    return payload


def write_config(path: Path, payload: Optional[Dict[str, Any]] = None) -> Path:
    """Write a config file and return its path."""
    path.write_text(json.dumps(payload or tiny_config_payload()), encoding="utf-8")
    return path
