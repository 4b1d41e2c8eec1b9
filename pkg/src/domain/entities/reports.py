"""
Run report entities.

This module contains the records produced by a federated run: one entry per
global round, one result per gateway, and the cross-repeat report.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from ..value_objects.enums import AggregationAlgorithm, DetectorKind, JSMeasure


@dataclass
class RoundRecord:
    """One global round of the federation protocol."""

    round_index: int
    selected_gateway_ids: List[int]
    dev_mse_of_global: float
    wall_time: float
    aggregation_weights: List[float] = field(default_factory=list)


@dataclass
class SummaryStat:
    """Arithmetic mean and population standard deviation."""

    mean: float
    std: float
    count: int

    def format(self, scale: float = 100.0) -> str:
        """Render as ``mean±std`` with the given scale (percent by default)."""
        return f"{self.mean * scale:.2f}±{self.std * scale:.2f}"


@dataclass
class GatewayResult:
    """Detection quality of one gateway on its test set."""

    gateway_id: int
    auc: float
    n_test: int
    n_anomalous: int
    score_min: float
    score_median: float
    score_max: float

    def __post_init__(self) -> None:
        """Validate the AUC range."""
        if not 0.0 <= self.auc <= 1.0:
            raise ValueError("AUC must lie in [0, 1]")


@dataclass
class GatewaySummary:
    """Mean and spread of one gateway's AUC across repeats."""

    gateway_id: int
    auc: SummaryStat


@dataclass
class RepeatResult:
    """Outcome of one seeded repetition of an experiment."""

    repeat_index: int
    run_seed: int
    rounds: List[RoundRecord]
    gateway_results: List[GatewayResult]
    across_gateways: SummaryStat
    best_dev_mse: float
    stopped_early: bool = False


@dataclass
class RunReport:
    """
    Report of one model/algorithm experiment.

    ``repeat_summary`` is the mean and spread of the per-repeat mean AUCs;
    ``gateway_summaries`` gives each gateway's mean and spread across repeats.
    ``js_measure`` names the Jensen-Shannon value held by ``realized_js``.
    """

    config_hash: str
    model: str
    algorithm: str
    n_gateways: int
    gateway_ratio: float
    dirichlet_alpha: float
    realized_js: float
    repeats: List[RepeatResult]
    repeat_summary: SummaryStat
    gateway_summaries: List[GatewaySummary]
    js_measure: str = JSMeasure.DISTANCE.value
    created_at: Optional[str] = None

    @property
    def column_label(self) -> str:
        """``model/algorithm`` display label used in merged tables."""
        model = DetectorKind(self.model).display_name
        algorithm = AggregationAlgorithm(self.algorithm).display_name
        return f"{model}/{algorithm}"
