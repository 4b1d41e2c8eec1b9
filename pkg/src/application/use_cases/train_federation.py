"""
Train Federation use case.

This module contains the TrainFederation use case which runs the seeded
repeats of one experiment (or of every model/algorithm pair) and persists
models, detectors and reports.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import structlog

from ...domain import ArtifactRepository, DatasetRepository, RunReport
from ...domain.entities.labeled_dataset import LabeledDataset
from ...domain.exceptions import ConfigurationError
from ...domain.value_objects.partition_plan import PartitionPlan
from ..config.experiment_config import ExperimentConfig
from ..services.experiment_pipeline import (
    ExperimentRunner,
    combinations_for,
    load_dataset,
    partition_dataset,
)
from ..services.report_tables import gateway_table

logger = structlog.get_logger(__name__)


@dataclass
class TrainFederationRequest:
    """Request DTO for a federated training experiment."""

    config: ExperimentConfig
    all_combinations: bool = False
    partition_path: Optional[Path] = None


@dataclass
class TrainFederationResponse:
    """Response DTO for a federated training experiment."""

    reports: List[RunReport]
    table: str
    table_path: Path


class TrainFederationUseCase:
    """
    Train Federation use case.

    The dataset is partitioned once; each model/algorithm pair then runs
    ``config.repeats`` seeded repeats on that partition.
    """

    def __init__(
        self,
        dataset_repository: DatasetRepository,
        artifact_repository: ArtifactRepository,
        max_workers: int = 1,
    ):
        """
        Initialize the use case.

        Args:
            dataset_repository: Repository for reading datasets
            artifact_repository: Repository of the output directory
            max_workers: Threads used for local training
        """
        self.dataset_repository = dataset_repository
        self.artifact_repository = artifact_repository
        self.max_workers = max_workers

    def execute(self, request: TrainFederationRequest) -> TrainFederationResponse:
        """
        Execute the training use case.

        Args:
            request: The training request

        Returns:
            The reports and the rendered table

        Raises:
            TrainingError: If a global round fails
            InputDataError: If the data cannot support the experiment
        """
        config = request.config
        artifacts = self.artifact_repository
        artifacts.acquire_lock()
        try:
            artifacts.save_json(config.model_dump(mode="json"), "effective_config.json")
            dataset = load_dataset(config, self.dataset_repository)
            plan = self._plan(config, dataset, request.partition_path)
            artifacts.save_partition(plan)

            runner = ExperimentRunner(artifacts, max_workers=self.max_workers)
            reports = runner.run(
                config,
                dataset,
                plan,
                combinations_for(config, request.all_combinations),
            )
            table = gateway_table(reports)
            table_path = artifacts.save_text(table, "run_table.txt")
        finally:
            artifacts.release_lock()

        logger.info("Training finished", reports=len(reports), table=str(table_path))
        return TrainFederationResponse(
            reports=reports, table=table, table_path=table_path
        )

    def _plan(
        self,
        config: ExperimentConfig,
        dataset: LabeledDataset,
        partition_path: Optional[Path],
    ) -> PartitionPlan:
        """Draw the partition, or reuse a persisted one that fits the dataset."""
        if partition_path is None:
            return partition_dataset(config, dataset)

        plan = self.artifact_repository.load_partition(partition_path)
        if plan.assignment.size != dataset.n_rows:
            raise ConfigurationError(
                "Partition does not match the dataset",
                field="partition",
                details={"rows": dataset.n_rows, "assigned": plan.assignment.size},
            )
        if plan.n_gateways != config.n_gateways:
            raise ConfigurationError(
                "Partition gateway count differs from n_gateways",
                field="partition",
                details={"plan": plan.n_gateways, "config": config.n_gateways},
            )
        logger.info("Partition reused", path=str(partition_path))
        return plan
