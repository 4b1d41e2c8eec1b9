"""
Evaluation metrics service.

This module contains the rank-based ROC-AUC and the mean/standard-deviation
summaries reported across gateways and across repeats.
"""

from typing import Dict, List, Sequence

import numpy as np
from scipy.stats import rankdata

from ..entities.reports import GatewayResult, GatewaySummary, SummaryStat
from ..exceptions import InputDataError, NumericalError
from ..value_objects.enums import Label


def roc_auc(scores: Sequence[float], labels: Sequence[int]) -> float:
    """
    Area under the ROC curve from the Mann-Whitney rank statistic.

    Equals the probability that a random anomalous score exceeds a random
    normal score, ties counted one half.

    Args:
        scores: Anomaly scores, higher means more anomalous
        labels: ``Label`` of each score

    Returns:
        AUC in [0, 1]

    Raises:
        InputDataError: If lengths differ or only one label is present
        NumericalError: If a score is not finite
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise InputDataError(
            "Scores and labels must be vectors of equal length",
            details={"scores": scores.shape, "labels": labels.shape},
        )
    if not np.all(np.isfinite(scores)):
        raise NumericalError("Scores must be finite to compute AUC")

    anomalous = labels == Label.ANOMALOUS
    n_anomalous = int(anomalous.sum())
    n_normal = int(scores.size - n_anomalous)
    if n_anomalous == 0 or n_normal == 0:
        raise InputDataError(
            "AUC is undefined without both normal and anomalous samples",
            details={"normal": n_normal, "anomalous": n_anomalous},
        )

    ranks = rankdata(scores, method="average")
    u_statistic = ranks[anomalous].sum() - n_anomalous * (n_anomalous + 1) / 2.0
    return float(u_statistic / (n_anomalous * n_normal))


def summarize(values: Sequence[float]) -> SummaryStat:
    """
    Arithmetic mean and population standard deviation.

    Raises:
        InputDataError: If no values are given
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise InputDataError("Nothing to summarize")
    return SummaryStat(
        mean=float(values.mean()),
        std=float(values.std(ddof=0)),
        count=int(values.size),
    )


def summarize_gateways(results: Sequence[GatewayResult]) -> SummaryStat:
    """Mean and spread of per-gateway AUCs within one run."""
    return summarize([result.auc for result in results])


def summarize_repeats(repeat_means: Sequence[float]) -> SummaryStat:
    """Mean and spread of run-level mean AUCs across repeats."""
    return summarize(repeat_means)


def summarize_per_gateway(
    runs: Sequence[Sequence[GatewayResult]],
) -> List[GatewaySummary]:
    """Each gateway's AUC mean and spread across repeats, ordered by id."""
    by_gateway: Dict[int, List[float]] = {}
    for results in runs:
        for result in results:
            by_gateway.setdefault(result.gateway_id, []).append(result.auc)
    return [
        GatewaySummary(gateway_id=gateway_id, auc=summarize(aucs))
        for gateway_id, aucs in sorted(by_gateway.items())
    ]


def gateway_result(
    gateway_id: int,
    scores: Sequence[float],
    labels: Sequence[int],
) -> GatewayResult:
    """AUC and score distribution of one gateway's test set."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    return GatewayResult(
        gateway_id=int(gateway_id),
        auc=roc_auc(scores, labels),
        n_test=int(scores.size),
        n_anomalous=int(np.sum(labels == Label.ANOMALOUS)),
        score_min=float(scores.min()),
        score_median=float(np.median(scores)),
        score_max=float(scores.max()),
    )
