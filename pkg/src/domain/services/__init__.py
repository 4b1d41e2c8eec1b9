"""Domain services: the numerical operations of the simulator."""

from .aggregation import (
    MSE_FLOOR,
    aggregate_by_errors,
    fedavg_aggregate,
    mse_on_dev,
    mseavg_aggregate,
)
from .autoencoder import (
    ae_loss,
    backward,
    forward_decoder,
    forward_encoder,
    initialize_params,
    sae_loss,
)
from .detection import (
    build_detector,
    classify,
    fit_centroid,
    latent_matrix,
    score_ae,
    score_batch,
    score_saecen,
    threshold_from_quantile,
)
from .federation import (
    FederatedTrainer,
    FederationConfig,
    TrainingOutcome,
    assemble_dev_dataset,
    run_training,
    select_gateways,
)
from .local_training import train_local
from .metrics import roc_auc, summarize_gateways, summarize_repeats
from .optimizer import adam_step, init_adam
from .partitioning import (
    dirichlet_partition,
    jensen_shannon_divergence,
    jensen_shannon_noniidness,
)
from .preprocessing import split_local, zscore_apply, zscore_fit, zscore_invert
from .synthetic import synth_generate
from .test_sets import build_test_sets

__all__ = [
    "MSE_FLOOR",
    "FederatedTrainer",
    "FederationConfig",
    "TrainingOutcome",
    "adam_step",
    "ae_loss",
    "aggregate_by_errors",
    "assemble_dev_dataset",
    "backward",
    "build_detector",
    "build_test_sets",
    "classify",
    "dirichlet_partition",
    "fedavg_aggregate",
    "fit_centroid",
    "forward_decoder",
    "forward_encoder",
    "init_adam",
    "initialize_params",
    "jensen_shannon_divergence",
    "jensen_shannon_noniidness",
    "latent_matrix",
    "mse_on_dev",
    "mseavg_aggregate",
    "roc_auc",
    "run_training",
    "sae_loss",
    "score_ae",
    "score_batch",
    "score_saecen",
    "select_gateways",
    "split_local",
    "summarize_gateways",
    "summarize_repeats",
    "synth_generate",
    "threshold_from_quantile",
    "train_local",
    "zscore_apply",
    "zscore_fit",
    "zscore_invert",
]
