"""
Preprocessing service.

This module contains z-score normalization, the largest-remainder count
allocation and the local train/validation/development/test split.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..exceptions import ConfigurationError, InputDataError
from ..value_objects.normalizer_stats import NormalizerStats

# train / validation / development pool / test holdout, 40/10/40/10
LOCAL_SPLIT_WEIGHTS = (4, 1, 4, 1)
MIN_LOCAL_ROWS = 10


def largest_remainder(weights: Sequence[float], total: int) -> np.ndarray:
    """
    Integer allocation of ``total`` items proportional to ``weights``.

    Each share gets the floor of its quota; the leftover items go to the
    largest fractional remainders, ties broken by the lower index. The result
    always sums to ``total``.

    Raises:
        ConfigurationError: If weights are negative or all zero
    """
    weights = np.asarray(weights, dtype=np.float64)
    if total < 0:
        raise ConfigurationError("Total must be non-negative", value=total)
    if weights.ndim != 1 or weights.size == 0 or np.any(weights < 0):
        raise ConfigurationError("Weights must be a non-negative vector")
    weight_sum = weights.sum()
    if not weight_sum > 0:
        raise ConfigurationError("Weights cannot all be zero")

    quotas = weights * total / weight_sum
    counts = np.floor(quotas).astype(np.int64)
    leftover = int(total - counts.sum())
    if leftover > 0:
        remainders = quotas - counts
        order = np.argsort(-remainders, kind="stable")
        counts[order[:leftover]] += 1
    return counts


def zscore_fit(train: np.ndarray) -> NormalizerStats:
    """
    Fit per-feature mean and population standard deviation.

    Raises:
        InputDataError: If fewer than two rows are given
    """
    train = np.asarray(train, dtype=np.float64)
    if train.ndim != 2 or train.shape[0] < 2:
        raise InputDataError(
            "Normalizer needs at least two training rows",
            details={"shape": train.shape},
        )
    return NormalizerStats(mean=train.mean(axis=0), std=train.std(axis=0, ddof=0))


def zscore_apply(x: np.ndarray, stats: NormalizerStats) -> np.ndarray:
    """
    Normalize a vector or matrix: ``(x - mean) / std``.

    Raises:
        InputDataError: On feature-count mismatch
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != stats.n_features:
        raise InputDataError(
            "Feature count does not match the normalizer",
            details={"expected": stats.n_features, "got": x.shape[-1]},
        )
    return (x - stats.mean) / stats.std


def zscore_invert(z: np.ndarray, stats: NormalizerStats) -> np.ndarray:
    """Undo normalization: ``z * std + mean``."""
    return np.asarray(z, dtype=np.float64) * stats.std + stats.mean


@dataclass(frozen=True, eq=False)
class LocalSplit:
    """Disjoint index sets of a gateway's local rows."""

    train: np.ndarray
    val: np.ndarray
    dev_pool: np.ndarray
    test_add: np.ndarray

    def sizes(self) -> tuple:
        """(train, val, dev_pool, test_add) sizes."""
        return (self.train.size, self.val.size, self.dev_pool.size, self.test_add.size)


def split_local(rows: np.ndarray, rng: np.random.Generator) -> LocalSplit:
    """
    Randomly split a gateway's rows 40/10/40/10.

    Sizes follow ``largest_remainder`` on the fractions, so they are exact and
    conserve the row count.

    Args:
        rows: Indices (or any 1-D identifiers) of the gateway's normal rows
        rng: Random generator of the split

    Returns:
        LocalSplit with train, val, dev_pool and test_add identifiers

    Raises:
        InputDataError: If fewer than ten rows are given
    """
    rows = np.asarray(rows)
    if rows.ndim != 1 or rows.size < MIN_LOCAL_ROWS:
        raise InputDataError(
            f"A gateway needs at least {MIN_LOCAL_ROWS} rows to split",
            details={"rows": int(rows.size)},
        )
    counts = largest_remainder(LOCAL_SPLIT_WEIGHTS, rows.size)
    shuffled = rows[rng.permutation(rows.size)]
    bounds = np.cumsum(counts)[:-1]
    train, val, dev_pool, test_add = np.split(shuffled, bounds)
    return LocalSplit(train=train, val=val, dev_pool=dev_pool, test_add=test_add)
