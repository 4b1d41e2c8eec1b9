"""
Local training configuration value object.

This module contains TrainConfig, the hyperparameters of one gateway update.
"""

from dataclasses import dataclass, replace

from ..exceptions import ConfigurationError


@dataclass(frozen=True)
class TrainConfig:
    """
    Hyperparameters of local training.

    Defaults are the common values used for every experiment: mini-batches
    of 12, learning rate 1e-5, 100 local epochs, shrink factor 10 and a
    proximal factor of 0.001 (only used by FedProx).
    """

    learning_rate: float = 1e-5
    batch_size: int = 12
    local_epochs: int = 100
    shrink_lambda: float = 10.0
    prox_mu: float = 0.0
    patience: int = 5
    min_delta: float = 1e-6

    def __post_init__(self) -> None:
        """Validate the hyperparameters after initialization."""
        if not self.learning_rate > 0:
            raise ConfigurationError(
                "Learning rate must be positive",
                field="learning_rate",
                value=self.learning_rate,
            )
        if self.batch_size < 1:
            raise ConfigurationError(
                "Batch size must be at least 1",
                field="batch_size",
                value=self.batch_size,
            )
        if self.local_epochs < 0:
            raise ConfigurationError(
                "Local epochs cannot be negative",
                field="local_epochs",
                value=self.local_epochs,
            )
        if self.shrink_lambda < 0:
            raise ConfigurationError(
                "Shrink factor cannot be negative",
                field="shrink_lambda",
                value=self.shrink_lambda,
            )
        if self.prox_mu < 0:
            raise ConfigurationError(
                "Proximal factor cannot be negative",
                field="prox_mu",
                value=self.prox_mu,
            )
        if self.patience < 1:
            raise ConfigurationError(
                "Patience must be at least 1",
                field="patience",
                value=self.patience,
            )
        if self.min_delta < 0:
            raise ConfigurationError(
                "Minimum improvement cannot be negative",
                field="min_delta",
                value=self.min_delta,
            )

    def with_overrides(self, **changes) -> "TrainConfig":
        """Return a validated copy with some fields replaced."""
        return replace(self, **changes)
