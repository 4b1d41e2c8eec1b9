"""
Non-IID partitioning service.

This module contains the Dirichlet allocation of device-type data across
gateways and the Jensen-Shannon measurement of the resulting non-IIDness.
"""

from typing import Optional, Sequence

import numpy as np
import structlog
from scipy.special import rel_entr

from ..entities.labeled_dataset import LabeledDataset
from ..exceptions import ConfigurationError, InputDataError
from ..value_objects.enums import JSMeasure
from ..value_objects.partition_plan import UNASSIGNED, PartitionPlan
from .preprocessing import largest_remainder

logger = structlog.get_logger(__name__)

MAX_REDRAWS = 100


def jensen_shannon_divergence(p: Sequence[float], q: Sequence[float]) -> float:
    """
    Base-2 Jensen-Shannon divergence of two distributions, in [0, 1].

    Inputs are normalized to sum to one.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    p = p / p.sum()
    q = q / q.sum()
    m = (p + q) / 2.0
    divergence = (rel_entr(p, m).sum() + rel_entr(q, m).sum()) / (2.0 * np.log(2.0))
    return float(np.clip(divergence, 0.0, 1.0))


def gateway_type_counts(
    assignment: np.ndarray,
    device_types: np.ndarray,
    type_ids: Sequence[int],
    n_gateways: int,
) -> np.ndarray:
    """Matrix (gateways x device types) of assigned row counts."""
    counts = np.zeros((n_gateways, len(type_ids)), dtype=np.int64)
    assigned = assignment != UNASSIGNED
    for column, type_id in enumerate(type_ids):
        rows = assigned & (device_types == type_id)
        counts[:, column] = np.bincount(assignment[rows], minlength=n_gateways)
    return counts


def jensen_shannon_noniidness(
    counts: np.ndarray,
    measure: JSMeasure = JSMeasure.DISTANCE,
) -> float:
    """
    Mean Jensen-Shannon value between each gateway and the pooled data.

    Each gateway's device-type distribution is compared with the distribution
    of all gateways pooled. ``DIVERGENCE`` averages the base-2 divergences;
    ``DISTANCE`` averages their square roots.

    Args:
        counts: Matrix (gateways x device types) of row counts
        measure: Which Jensen-Shannon value to average

    Returns:
        Non-IIDness score in [0, 1]

    Raises:
        InputDataError: If any gateway holds no rows
    """
    counts = np.asarray(counts, dtype=np.float64)
    if counts.ndim != 2 or counts.shape[0] == 0:
        raise InputDataError("Counts must be a non-empty gateways x types matrix")
    sizes = counts.sum(axis=1)
    if np.any(sizes == 0):
        raise InputDataError(
            "A gateway without rows has no device-type distribution",
            details={"empty_gateways": np.flatnonzero(sizes == 0).tolist()},
        )
    pooled = counts.sum(axis=0)
    values = [jensen_shannon_divergence(row, pooled) for row in counts]
    if JSMeasure(measure) is JSMeasure.DISTANCE:
        values = [float(np.sqrt(v)) for v in values]
    return float(np.clip(np.mean(values), 0.0, 1.0))


def dirichlet_partition(
    dataset: LabeledDataset,
    n_gateways: int,
    concentration: float,
    rng: np.random.Generator,
    eligible: Optional[np.ndarray] = None,
    min_rows: int = 1,
    max_redraws: int = MAX_REDRAWS,
    measure: JSMeasure = JSMeasure.DISTANCE,
) -> PartitionPlan:
    """
    Allocate device-type data to gateways with Dirichlet proportions.

    For each device type k, ``p_k ~ Dir(concentration)`` over the gateways
    and the rows of type k are dealt out in largest-remainder counts of
    ``p_k * count_k``. Draws that leave a gateway with fewer than
    ``min_rows`` rows are repeated up to ``max_redraws`` times.

    Args:
        dataset: Dataset whose rows are allocated
        n_gateways: Number of gateways (at least 2)
        concentration: Dirichlet concentration alpha (> 0)
        rng: Random generator of the allocation
        eligible: Mask of rows to allocate, defaults to the normal rows
        min_rows: Smallest acceptable gateway size
        max_redraws: Number of allocation attempts
        measure: Jensen-Shannon value reported as ``realized_js``

    Returns:
        PartitionPlan with the realized non-IIDness of the assignment

    Raises:
        ConfigurationError: On invalid gateway count or concentration
        InputDataError: If no eligible rows exist or every draw is rejected
    """
    if n_gateways < 2:
        raise ConfigurationError(
            "At least two gateways are required",
            field="n_gateways",
            value=n_gateways,
        )
    if not concentration > 0:
        raise ConfigurationError(
            "Dirichlet concentration must be positive",
            field="dirichlet_alpha",
            value=concentration,
        )
    mask = dataset.normal_mask if eligible is None else np.asarray(eligible, dtype=bool)
    type_ids = tuple(int(t) for t in np.unique(dataset.device_types[mask]))
    if not type_ids:
        raise InputDataError("No rows are eligible for partitioning")
    rows_by_type = [
        np.flatnonzero(mask & (dataset.device_types == t)) for t in type_ids
    ]
    prior = np.full(n_gateways, concentration)

    for attempt in range(1, max_redraws + 1):
        proportions = rng.dirichlet(prior, size=len(type_ids))
        assignment = np.full(dataset.n_rows, UNASSIGNED, dtype=np.int64)
        for k, rows in enumerate(rows_by_type):
            shuffled = rows[rng.permutation(rows.size)]
            counts = largest_remainder(proportions[k], rows.size)
            assignment[shuffled] = np.repeat(np.arange(n_gateways), counts)

        type_counts = gateway_type_counts(
            assignment, dataset.device_types, type_ids, n_gateways
        )
        sizes = type_counts.sum(axis=1)
        if sizes.min() >= max(min_rows, 1):
            realized = jensen_shannon_noniidness(type_counts, measure)
            logger.info(
                "Partition drawn",
                attempt=attempt,
                n_gateways=n_gateways,
                concentration=concentration,
                realized_js=realized,
                js_measure=JSMeasure(measure).value,
            )
            return PartitionPlan(
                proportions=proportions,
                device_types=type_ids,
                concentration=float(concentration),
                realized_js=realized,
                assignment=assignment,
                js_measure=JSMeasure(measure),
            )
        logger.debug(
            "Partition redraw",
            attempt=attempt,
            smallest_gateway=int(sizes.min()),
            min_rows=min_rows,
        )

    raise InputDataError(
        "Could not allocate enough rows to every gateway",
        details={
            "n_gateways": n_gateways,
            "concentration": concentration,
            "min_rows": min_rows,
            "attempts": max_redraws,
        },
    )
