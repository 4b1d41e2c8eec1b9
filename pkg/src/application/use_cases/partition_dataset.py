"""
Partition Dataset use case.

This module contains the PartitionDataset use case which allocates the
training pool of an experiment to its gateways and persists the plan.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List

import structlog

from ...domain import ArtifactRepository, DatasetRepository
from ..config.experiment_config import ExperimentConfig, config_hash
from ..services.experiment_pipeline import load_dataset, partition_dataset

logger = structlog.get_logger(__name__)


@dataclass
class PartitionDatasetRequest:
    """Request DTO for partitioning a dataset."""

    config: ExperimentConfig


@dataclass
class PartitionDatasetResponse:
    """Response DTO for partitioning a dataset."""

    assignment_path: Path
    n_rows: int
    gateway_sizes: List[int]
    realized_js: float
    js_measure: str
    config_hash: str


class PartitionDatasetUseCase:
    """
    Partition Dataset use case.

    Loads or generates the dataset, draws the Dirichlet partition and writes
    the assignment CSV, the plan metadata and the effective configuration.
    """

    def __init__(
        self,
        dataset_repository: DatasetRepository,
        artifact_repository: ArtifactRepository,
    ):
        """
        Initialize the use case.

        Args:
            dataset_repository: Repository for reading datasets
            artifact_repository: Repository of the output directory
        """
        self.dataset_repository = dataset_repository
        self.artifact_repository = artifact_repository

    def execute(self, request: PartitionDatasetRequest) -> PartitionDatasetResponse:
        """
        Execute the partition use case.

        Args:
            request: The partition request

        Returns:
            The partition response

        Raises:
            InputDataError: If the dataset cannot be partitioned
            OutputLockedError: If the output directory is in use
        """
        config = request.config
        self.artifact_repository.acquire_lock()
        try:
            dataset = load_dataset(config, self.dataset_repository)
            plan = partition_dataset(config, dataset)
            assignment_path = self.artifact_repository.save_partition(plan)
            self.artifact_repository.save_json(
                config.model_dump(mode="json"), "effective_config.json"
            )
        finally:
            self.artifact_repository.release_lock()

        logger.info(
            "Partition saved",
            path=str(assignment_path),
            realized_js=plan.realized_js,
            js_measure=plan.js_measure.value,
            gateway_sizes=plan.gateway_sizes(),
        )
        return PartitionDatasetResponse(
            assignment_path=assignment_path,
            n_rows=dataset.n_rows,
            gateway_sizes=plan.gateway_sizes(),
            realized_js=plan.realized_js,
            js_measure=plan.js_measure.value,
            config_hash=config_hash(config),
        )
