"""
Dense layer value object.

This module contains the DenseLayer value object which holds the weight
matrix, bias vector and activation of one fully connected layer.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError, NumericalError
from .enums import Activation


def _frozen_array(values, ndim: int, name: str) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise ConfigurationError(
            f"{name} must be {ndim}-dimensional, got shape {array.shape}",
            field=name,
        )
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DenseLayer:
    """
    Dense layer value object.

    Computes ``activation(W @ x + b)`` with ``W`` of shape
    ``(out_dim, in_dim)``. Arrays are copied and made read-only on
    construction, so a layer is a value snapshot that can be shared freely.
    """

    weights: np.ndarray
    biases: np.ndarray
    activation: Activation = Activation.IDENTITY

    def __post_init__(self) -> None:
        """Validate shapes and finiteness after initialization."""
        weights = _frozen_array(self.weights, 2, "weights")
        biases = _frozen_array(self.biases, 1, "biases")
        if biases.shape[0] != weights.shape[0]:
            raise ConfigurationError(
                "Bias length must equal the layer output dimension",
                field="biases",
                details={"weights": weights.shape, "biases": biases.shape},
            )
        if not (np.all(np.isfinite(weights)) and np.all(np.isfinite(biases))):
            raise NumericalError("Layer parameters must be finite")

        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "biases", biases)
        object.__setattr__(self, "activation", Activation(self.activation))

    @property
    def in_dim(self) -> int:
        """Input dimension of the layer."""
        return int(self.weights.shape[1])

    @property
    def out_dim(self) -> int:
        """Output dimension of the layer."""
        return int(self.weights.shape[0])

    @property
    def parameter_count(self) -> int:
        """Number of scalar parameters in the layer."""
        return int(self.weights.size + self.biases.size)

    def apply(self, inputs: np.ndarray) -> np.ndarray:
        """
        Apply the layer to a batch of row vectors.

        Args:
            inputs: Matrix of shape (batch, in_dim)

        Returns:
            Matrix of shape (batch, out_dim)
        """
        pre_activation = inputs @ self.weights.T + self.biases
        if self.activation is Activation.TANH:
            return np.tanh(pre_activation)
        return pre_activation

    def with_arrays(self, weights: np.ndarray, biases: np.ndarray) -> "DenseLayer":
        """Return a layer with the same activation and new arrays."""
        return DenseLayer(weights=weights, biases=biases, activation=self.activation)

    def same_shape(self, other: "DenseLayer") -> bool:
        """Check whether another layer has identical dimensions."""
        return (
            self.weights.shape == other.weights.shape
            and self.biases.shape == other.biases.shape
        )

    def __repr__(self) -> str:
        """Detailed string representation of the layer."""
        return (
            f"DenseLayer(in_dim={self.in_dim}, out_dim={self.out_dim}, "
            f"activation={self.activation.value})"
        )
