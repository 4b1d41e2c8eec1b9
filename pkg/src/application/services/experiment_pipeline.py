"""
Experiment pipeline.

This module contains the steps shared by the train and sweep use cases:
loading and partitioning the dataset, preparing the gateways of one repeat,
running the federation, evaluating every gateway and persisting the results.
"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ...domain.entities.detector import Detector
from ...domain.entities.gateway_state import GatewayState
from ...domain.entities.labeled_dataset import LabeledDataset
from ...domain.entities.reports import RepeatResult, RunReport
from ...domain.repositories.artifact_repository import ArtifactRepository
from ...domain.repositories.dataset_repository import DatasetRepository
from ...domain.services.autoencoder import initialize_params
from ...domain.services.detection import build_detector, latent_matrix, score_batch
from ...domain.services.federation import FederatedTrainer, assemble_dev_dataset
from ...domain.services.metrics import (
    gateway_result,
    summarize_gateways,
    summarize_per_gateway,
    summarize_repeats,
)
from ...domain.services.partitioning import dirichlet_partition
from ...domain.services.preprocessing import split_local, zscore_apply, zscore_fit
from ...domain.services.seeding import Stream, derive_seed, run_seed, stream_rng
from ...domain.services.synthetic import synth_generate
from ...domain.services.test_sets import build_test_sets
from ...domain.value_objects.enums import (
    AggregationAlgorithm,
    DetectorKind,
    NormalizationScope,
)
from ...domain.value_objects.model_params import ModelParams
from ...domain.value_objects.normalizer_stats import NormalizerStats
from ...domain.value_objects.partition_plan import PartitionPlan
from ..config.experiment_config import ExperimentConfig, config_hash

logger = structlog.get_logger(__name__)

Combination = Tuple[DetectorKind, AggregationAlgorithm]


def load_dataset(
    config: ExperimentConfig, dataset_repository: DatasetRepository
) -> LabeledDataset:
    """Generate or load the dataset an experiment runs on."""
    source = config.dataset
    if source.source == "synthetic":
        dataset = synth_generate(
            n_device_types=source.n_device_types,
            dims=source.dims,
            seed=config.master_seed,
            normals_per_type=source.normals_per_type,
            anomalies_per_type=source.anomalies_per_type,
            separation=source.separation,
            anomaly_scale=source.anomaly_scale,
        )
    else:
        dataset = dataset_repository.load_manifest(
            Path(str(source.manifest)),
            subsample_fraction=source.subsample_fraction,
            seed=derive_seed(config.master_seed, Stream.SUBSAMPLE),
        )
    logger.info(
        "Dataset ready",
        source=source.source,
        rows=dataset.n_rows,
        features=dataset.n_features,
        device_types=list(dataset.device_type_ids()),
    )
    return dataset


def held_out_mask(
    dataset: LabeledDataset, held_out_types: Sequence[int]
) -> np.ndarray:
    """Rows of device types kept out of training."""
    types = np.asarray(list(held_out_types), dtype=np.int64)
    return np.isin(dataset.device_types, types)


def partition_dataset(
    config: ExperimentConfig, dataset: LabeledDataset
) -> PartitionPlan:
    """
    Partition the training pool once per configuration.

    Only normal rows of device types that are not held out are allocated.
    The partition stream is seeded from the master seed alone, so every
    repeat and every model/algorithm pair shares one partition.
    """
    eligible = dataset.normal_mask & ~held_out_mask(
        dataset, config.dataset.held_out_device_types
    )
    return dirichlet_partition(
        dataset,
        config.n_gateways,
        config.dirichlet_alpha,
        stream_rng(config.master_seed, Stream.PARTITION),
        eligible=eligible,
        min_rows=config.min_gateway_rows,
        measure=config.js_measure,
    )


def combinations_for(
    config: ExperimentConfig, all_combinations: bool
) -> List[Combination]:
    """Model/algorithm pairs to run."""
    if not all_combinations:
        return [(config.model, config.algorithm)]
    return [
        (kind, algorithm)
        for kind in DetectorKind
        for algorithm in AggregationAlgorithm
    ]


def combination_dir(kind: DetectorKind, algorithm: AggregationAlgorithm) -> str:
    """Output sub-directory of one model/algorithm pair."""
    return f"{kind.value}-{algorithm.value}"


@dataclass
class RepeatOutcome:
    """Everything one repeat produced."""

    result: RepeatResult
    global_params: ModelParams
    detectors: Dict[int, Detector]
    latents: Dict[int, Tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)


class ExperimentPipeline:
    """
    Runs the repeats of one model/algorithm experiment.

    Data preparation inside a repeat (local splits, normalizers, test sets,
    development set, initial weights) and all training streams are derived
    from the repeat's run seed.
    """

    def __init__(self, config: ExperimentConfig, max_workers: int = 1):
        """
        Initialize the pipeline.

        Args:
            config: Effective experiment configuration
            max_workers: Threads used for local training
        """
        self.config = config
        self.max_workers = max_workers

    def prepare_gateways(
        self, dataset: LabeledDataset, plan: PartitionPlan, seed: int
    ) -> List[GatewayState]:
        """
        Split, normalize and equip every gateway with its test set.

        With network normalization one set of statistics is fitted on the
        raw training splits of all gateways together, so every gateway, the
        development set and the centroid detectors share one feature space.
        With gateway normalization each gateway fits its own statistics on
        its raw training split. Either way the statistics are applied to all
        of the gateway's other rows.
        """
        source = self.config.dataset
        gateways: List[GatewayState] = []
        holdouts: Dict[int, LabeledDataset] = {}
        features = dataset.features
        splits = [
            split_local(
                plan.rows_of(gateway_id), stream_rng(seed, Stream.SPLIT, gateway_id)
            )
            for gateway_id in range(plan.n_gateways)
        ]
        shared: Optional[NormalizerStats] = None
        if source.normalization is NormalizationScope.NETWORK:
            pooled = np.concatenate([split.train for split in splits])
            shared = zscore_fit(features[pooled])
        for gateway_id, split in enumerate(splits):
            rows = plan.rows_of(gateway_id)
            stats = shared
            if stats is None:
                stats = zscore_fit(features[split.train])
            device_types = tuple(int(t) for t in np.unique(dataset.device_types[rows]))
            gateways.append(
                GatewayState(
                    id=gateway_id,
                    train=zscore_apply(features[split.train], stats),
                    val=zscore_apply(features[split.val], stats),
                    dev_contribution=zscore_apply(features[split.dev_pool], stats),
                    test_holdout=zscore_apply(features[split.test_add], stats),
                    normalizer=stats,
                    device_types=device_types,
                )
            )
            holdouts[gateway_id] = dataset.subset(split.test_add)

        held_out = held_out_mask(dataset, source.held_out_device_types)
        test_sets = build_test_sets(
            holdouts,
            {gateway.id: gateway.device_types for gateway in gateways},
            anomaly_pool=dataset.subset(
                np.flatnonzero(dataset.anomalous_mask & ~held_out)
            ),
            new_device_pool=dataset.subset(np.flatnonzero(held_out)),
            rng=stream_rng(seed, Stream.TEST_SET),
            anomaly_ratio=source.anomaly_ratio,
            new_device_ratio=source.new_device_ratio,
        )
        for gateway in gateways:
            raw = test_sets[gateway.id]
            normalized = zscore_apply(raw.features, gateway.normalizer)
            gateway.test_set = raw.with_features(normalized)
        return gateways

    def run_repeat(
        self, dataset: LabeledDataset, plan: PartitionPlan, repeat_index: int
    ) -> RepeatOutcome:
        """Run and evaluate one seeded repetition."""
        config = self.config
        seed = run_seed(config.master_seed, repeat_index)
        log = logger.bind(
            model=config.model.value,
            algorithm=config.algorithm.value,
            repeat_index=repeat_index,
        )

        gateways = self.prepare_gateways(dataset, plan, seed)
        dev = assemble_dev_dataset(gateways, stream_rng(seed, Stream.DEV_SET))
        initial = initialize_params(
            dataset.n_features,
            stream_rng(seed, Stream.INIT),
            latent_dim=config.architecture.latent_dim,
            hidden_dim=config.architecture.hidden_dim,
        )
        trainer = FederatedTrainer(config.federation_config(), self.max_workers)
        outcome = trainer.run_training(gateways, initial, dev, seed)

        results = []
        detectors: Dict[int, Detector] = {}
        latents: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
        for gateway in gateways:
            assert gateway.test_set is not None
            detector = build_detector(
                config.model,
                outcome.global_params,
                gateway.train,
                threshold_quantile=config.threshold_quantile,
            ).with_normalizer(gateway.normalizer)
            scores = score_batch(detector, gateway.test_set.features)
            result = gateway_result(gateway.id, scores, gateway.test_set.labels)
            results.append(result)
            detectors[gateway.id] = detector
            if config.export_latent:
                latents[gateway.id] = (
                    latent_matrix(detector, gateway.test_set.features),
                    gateway.test_set.labels,
                )
            log.info("Gateway evaluated", gateway_id=gateway.id, auc=result.auc)

        across = summarize_gateways(results)
        log.info(
            "Repeat completed",
            rounds=len(outcome.history),
            stopped_early=outcome.stopped_early,
            mean_auc=across.mean,
            std_auc=across.std,
        )
        return RepeatOutcome(
            result=RepeatResult(
                repeat_index=repeat_index,
                run_seed=seed,
                rounds=outcome.history,
                gateway_results=results,
                across_gateways=across,
                best_dev_mse=outcome.best_dev_mse,
                stopped_early=outcome.stopped_early,
            ),
            global_params=outcome.global_params,
            detectors=detectors,
            latents=latents,
        )

    def build_report(
        self, plan: PartitionPlan, repeats: Sequence[RepeatResult]
    ) -> RunReport:
        """Combine the repeats into a run report."""
        config = self.config
        return RunReport(
            config_hash=config_hash(config),
            model=config.model.value,
            algorithm=config.algorithm.value,
            n_gateways=config.n_gateways,
            gateway_ratio=config.gateway_ratio,
            dirichlet_alpha=config.dirichlet_alpha,
            realized_js=plan.realized_js,
            js_measure=plan.js_measure.value,
            repeats=list(repeats),
            repeat_summary=summarize_repeats(
                [r.across_gateways.mean for r in repeats]
            ),
            gateway_summaries=summarize_per_gateway(
                [r.gateway_results for r in repeats]
            ),
            created_at=datetime.now(timezone.utc).isoformat(),
        )


class ExperimentRunner:
    """
    Runs and persists every model/algorithm pair of one configuration.

    Artifacts are written below ``prefix`` in the output directory:
    ``<model>-<algorithm>/repeat-<r>/`` holds the global model, the gateway
    detectors and optional latent exports; ``<model>-<algorithm>/`` holds
    the run report.
    """

    def __init__(self, artifact_repository: ArtifactRepository, max_workers: int = 1):
        """
        Initialize the runner.

        Args:
            artifact_repository: Repository of the output directory
            max_workers: Threads used for local training
        """
        self.artifact_repository = artifact_repository
        self.max_workers = max_workers

    def run(
        self,
        config: ExperimentConfig,
        dataset: LabeledDataset,
        plan: PartitionPlan,
        combinations: Sequence[Combination],
        prefix: Optional[str] = None,
    ) -> List[RunReport]:
        """Run every pair and return their reports in order."""
        reports = []
        for kind, algorithm in combinations:
            variant = config.with_updates(model=kind, algorithm=algorithm)
            base = combination_dir(kind, algorithm)
            if prefix:
                base = f"{prefix}/{base}"
            pipeline = ExperimentPipeline(variant, max_workers=self.max_workers)

            repeats = []
            for repeat_index in range(variant.repeats):
                outcome = pipeline.run_repeat(dataset, plan, repeat_index)
                self._persist_repeat(outcome, f"{base}/repeat-{repeat_index}")
                repeats.append(outcome.result)

            report = pipeline.build_report(plan, repeats)
            path = self.artifact_repository.save_report(
                report, f"{base}/run_report.json"
            )
            logger.info(
                "Run report saved",
                path=str(path),
                label=report.column_label,
                mean_auc=report.repeat_summary.mean,
            )
            reports.append(report)
        return reports

    def _persist_repeat(self, outcome: RepeatOutcome, directory: str) -> None:
        artifacts = self.artifact_repository
        artifacts.save_model(outcome.global_params, f"{directory}/global_model.json")
        for gateway_id, detector in outcome.detectors.items():
            artifacts.save_detector(
                detector, f"{directory}/gateway-{gateway_id}.detector.json"
            )
        for gateway_id, (latents, labels) in outcome.latents.items():
            artifacts.save_latents(
                latents, labels, f"{directory}/latents-gateway-{gateway_id}.csv"
            )
