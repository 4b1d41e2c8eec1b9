"""
Adam optimizer state value object.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigurationError


@dataclass(frozen=True, eq=False)
class AdamState:
    """
    Adam moment estimates.

    The moments are flat vectors laid out like ``ModelParams.flatten()``.
    """

    first_moment: np.ndarray
    second_moment: np.ndarray
    step_count: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self) -> None:
        """Validate moment shapes after initialization."""
        first = np.array(self.first_moment, dtype=np.float64, copy=True)
        second = np.array(self.second_moment, dtype=np.float64, copy=True)
        if first.ndim != 1 or first.shape != second.shape:
            raise ConfigurationError("Adam moments must be equal-length vectors")
        if self.step_count < 0:
            raise ConfigurationError("Adam step count cannot be negative")
        first.setflags(write=False)
        second.setflags(write=False)
        object.__setattr__(self, "first_moment", first)
        object.__setattr__(self, "second_moment", second)

    @classmethod
    def zeros(cls, size: int, **constants: float) -> "AdamState":
        """Create a fresh state with zero moments for ``size`` parameters."""
        return cls(
            first_moment=np.zeros(size),
            second_moment=np.zeros(size),
            **constants,
        )
