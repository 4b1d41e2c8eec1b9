"""
Aggregation weights value object.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..exceptions import ConfigurationError


@dataclass(frozen=True)
class AggregationWeights:
    """
    Per-model weights used by one aggregation step.

    ``alphas`` are the raw (unnormalized) weights; they are divided by their
    sum when applied. ``mses`` is filled only for inverse-MSE aggregation.
    """

    alphas: Tuple[float, ...]
    mses: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        """Validate the weights after initialization."""
        if not self.alphas:
            raise ConfigurationError("At least one aggregation weight is required")
        if any(not a > 0 for a in self.alphas):
            raise ConfigurationError("Aggregation weights must be positive")
        if self.mses is not None and len(self.mses) != len(self.alphas):
            raise ConfigurationError("One MSE per weight is required")

    @property
    def normalized(self) -> List[float]:
        """Weights divided by their sum."""
        total = sum(self.alphas)
        return [a / total for a in self.alphas]

    def as_dict(self) -> Dict[str, object]:
        """Serializable view for logging and reports."""
        return {
            "alphas": list(self.alphas),
            "normalized": self.normalized,
            "mses": list(self.mses) if self.mses is not None else None,
        }
