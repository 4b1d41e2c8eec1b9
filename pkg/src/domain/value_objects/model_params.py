"""
Model parameters value object.

This module contains ModelParams, the layered weights of the autoencoder and
the unit exchanged between gateways and the server in every global round.
"""

from dataclasses import dataclass
from typing import Iterable, Tuple, Type

import numpy as np

from ..exceptions import ConfigurationError, SimulationError
from .dense_layer import DenseLayer


@dataclass(frozen=True, eq=False)
class ModelParams:
    """
    Autoencoder parameters.

    Holds the encoder layers and the decoder layers. The decoder mirrors the
    encoder dimensions in reverse; an empty decoder marks a stripped model
    whose decoder was removed for centroid scoring. The same structure is used
    for gradients.
    """

    encoder_layers: Tuple[DenseLayer, ...]
    decoder_layers: Tuple[DenseLayer, ...] = ()

    def __post_init__(self) -> None:
        """Validate layer chaining after initialization."""
        encoder = tuple(self.encoder_layers)
        decoder = tuple(self.decoder_layers)
        if not encoder:
            raise ConfigurationError("Encoder needs at least one layer")
        _check_chain(encoder, "encoder_layers")

        if decoder:
            _check_chain(decoder, "decoder_layers")
            encoder_dims = [encoder[0].in_dim] + [layer.out_dim for layer in encoder]
            decoder_dims = [decoder[0].in_dim] + [layer.out_dim for layer in decoder]
            if decoder_dims != encoder_dims[::-1]:
                raise ConfigurationError(
                    "Decoder must mirror encoder dimensions in reverse",
                    field="decoder_layers",
                    details={"encoder": encoder_dims, "decoder": decoder_dims},
                )

        object.__setattr__(self, "encoder_layers", encoder)
        object.__setattr__(self, "decoder_layers", decoder)

    @property
    def input_dim(self) -> int:
        """Dimension n of the feature space."""
        return self.encoder_layers[0].in_dim

    @property
    def latent_dim(self) -> int:
        """Dimension m of the latent space."""
        return self.encoder_layers[-1].out_dim

    @property
    def layers(self) -> Tuple[DenseLayer, ...]:
        """All layers, encoder first."""
        return self.encoder_layers + self.decoder_layers

    @property
    def is_stripped(self) -> bool:
        """True when the decoder has been removed."""
        return not self.decoder_layers

    @property
    def parameter_count(self) -> int:
        """Total number of scalar parameters."""
        return sum(layer.parameter_count for layer in self.layers)

    def strip_decoder(self) -> "ModelParams":
        """Return encoder-only parameters."""
        return ModelParams(encoder_layers=self.encoder_layers)

    def flatten(self) -> np.ndarray:
        """
        Concatenate all parameters into one vector.

        Layers are visited encoder first; within a layer the weights come
        row-major, followed by the biases.

        Returns:
            1-D float64 vector of length parameter_count
        """
        parts = []
        for layer in self.layers:
            parts.append(layer.weights.ravel())
            parts.append(layer.biases)
        return np.concatenate(parts)

    def with_flat(self, vector: np.ndarray) -> "ModelParams":
        """
        Build parameters of this shape from a flat vector.

        Args:
            vector: 1-D vector laid out as produced by flatten()

        Returns:
            New ModelParams with the same layer shapes and activations

        Raises:
            ConfigurationError: If the vector length does not match
        """
        vector = np.asarray(vector, dtype=np.float64)
        if vector.ndim != 1 or vector.size != self.parameter_count:
            raise ConfigurationError(
                "Flat parameter vector has the wrong length",
                details={"expected": self.parameter_count, "got": vector.size},
            )
        layers = []
        offset = 0
        for layer in self.layers:
            w_size = layer.weights.size
            b_size = layer.biases.size
            weights = vector[offset : offset + w_size].reshape(layer.weights.shape)
            offset += w_size
            biases = vector[offset : offset + b_size]
            offset += b_size
            layers.append(layer.with_arrays(weights, biases))
        n_encoder = len(self.encoder_layers)
        return ModelParams(
            encoder_layers=tuple(layers[:n_encoder]),
            decoder_layers=tuple(layers[n_encoder:]),
        )

    def same_shape(self, other: "ModelParams") -> bool:
        """Check whether another ModelParams has identical layer shapes."""
        if len(self.encoder_layers) != len(other.encoder_layers):
            return False
        if len(self.decoder_layers) != len(other.decoder_layers):
            return False
        return all(a.same_shape(b) for a, b in zip(self.layers, other.layers))

    def equals(self, other: "ModelParams") -> bool:
        """Bit-exact equality of shapes, activations and values."""
        if not self.same_shape(other):
            return False
        for a, b in zip(self.layers, other.layers):
            if a.activation is not b.activation:
                return False
            if not (
                np.array_equal(a.weights, b.weights)
                and np.array_equal(a.biases, b.biases)
            ):
                return False
        return True

    def distance_to(self, other: "ModelParams") -> float:
        """L2 distance over all parameters."""
        require_same_shape([self, other])
        return float(np.linalg.norm(self.flatten() - other.flatten()))

    def __repr__(self) -> str:
        """Detailed string representation of the parameters."""
        dims = [self.input_dim] + [layer.out_dim for layer in self.layers]
        return f"ModelParams(dims={dims}, stripped={self.is_stripped})"


def _check_chain(layers: Tuple[DenseLayer, ...], name: str) -> None:
    for previous, current in zip(layers, layers[1:]):
        if previous.out_dim != current.in_dim:
            raise ConfigurationError(
                "Consecutive layers have mismatched dimensions",
                field=name,
                details={"out_dim": previous.out_dim, "in_dim": current.in_dim},
            )


def require_same_shape(
    models: Iterable[ModelParams],
    error_cls: Type[SimulationError] = ConfigurationError,
) -> None:
    """
    Check that all models share one layer structure.

    Args:
        models: Models to compare against the first one
        error_cls: Exception class raised on mismatch

    Raises:
        ConfigurationError: If any model differs in shape from the first
    """
    models = list(models)
    for index, model in enumerate(models[1:], start=1):
        if not models[0].same_shape(model):
            raise error_cls(
                "Model parameter shapes do not match",
                details={"index": index},
            )
