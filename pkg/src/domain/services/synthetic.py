"""
Synthetic traffic generator.

Produces a small labeled stand-in for per-device feature datasets: each device
type is a Gaussian cluster of normal traffic, and its attacks form a wider
cluster pushed several standard deviations away.
"""

import numpy as np

from ..entities.labeled_dataset import LabeledDataset
from ..exceptions import ConfigurationError
from ..value_objects.enums import Label
from .seeding import Stream, stream_rng

MEAN_SPREAD = 3.0
SIGMA_RANGE = (0.5, 1.5)


def synth_generate(
    n_device_types: int = 9,
    dims: int = 16,
    seed: int = 0,
    normals_per_type: int = 300,
    anomalies_per_type: int = 100,
    separation: float = 4.0,
    anomaly_scale: float = 2.0,
) -> LabeledDataset:
    """
    Generate a labeled dataset of device-type clusters.

    Device type k has a mean drawn from N(0, 3^2) per dimension and a diagonal
    spread sigma_k drawn from [0.5, 1.5]. Its anomalies are centred at
    ``mu_k + separation * sigma_k * s`` for a random sign vector s and spread
    ``anomaly_scale * sigma_k``. Rows are ordered by device type, normals
    first.

    Args:
        n_device_types: Number of device types (ids 0..n-1)
        dims: Feature dimension, at least 2
        seed: Seed of the generator
        normals_per_type: Normal rows per device type
        anomalies_per_type: Anomalous rows per device type
        separation: Anomaly offset in units of sigma_k
        anomaly_scale: Anomaly spread in units of sigma_k

    Returns:
        LabeledDataset with exact per-type counts

    Raises:
        ConfigurationError: On invalid sizes
    """
    if dims < 2:
        raise ConfigurationError(
            "Synthetic data needs at least two dimensions", field="dims", value=dims
        )
    if n_device_types < 1:
        raise ConfigurationError(
            "At least one device type is required",
            field="n_device_types",
            value=n_device_types,
        )
    if normals_per_type < 0 or anomalies_per_type < 0:
        raise ConfigurationError("Per-type counts must be non-negative")

    rng = stream_rng(seed, Stream.SYNTHETIC)
    features, labels, device_types = [], [], []
    for device_type in range(n_device_types):
        mean = rng.normal(0.0, MEAN_SPREAD, size=dims)
        sigma = rng.uniform(*SIGMA_RANGE, size=dims)
        signs = rng.choice([-1.0, 1.0], size=dims)

        normals = mean + sigma * rng.standard_normal((normals_per_type, dims))
        anomaly_center = mean + separation * sigma * signs
        anomalies = anomaly_center + anomaly_scale * sigma * rng.standard_normal(
            (anomalies_per_type, dims)
        )

        features.extend([normals, anomalies])
        labels.append(np.full(normals_per_type, Label.NORMAL, dtype=np.int8))
        labels.append(np.full(anomalies_per_type, Label.ANOMALOUS, dtype=np.int8))
        device_types.append(np.full(normals_per_type + anomalies_per_type, device_type))

    return LabeledDataset(
        features=np.vstack(features),
        labels=np.concatenate(labels),
        device_types=np.concatenate(device_types),
    )
