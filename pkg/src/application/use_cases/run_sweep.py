"""
Run Sweep use case.

This module contains the RunSweep use case which repeats an experiment over
several gateway selection ratios or network scales.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

import structlog

from ...domain import ArtifactRepository, DatasetRepository, RunReport
from ...domain.exceptions import ConfigurationError, SimulationError
from ..config.experiment_config import ExperimentConfig
from ..services.experiment_pipeline import (
    ExperimentRunner,
    combinations_for,
    load_dataset,
    partition_dataset,
)
from ..services.report_tables import sweep_table

logger = structlog.get_logger(__name__)


@dataclass
class RunSweepRequest:
    """Request DTO for a sweep; exactly one of ratios or scales is set."""

    config: ExperimentConfig
    ratios: Optional[List[float]] = None
    scales: Optional[List[int]] = None
    all_combinations: bool = False


@dataclass
class SweepPoint:
    """Outcome of one sweep value."""

    label: str
    reports: Optional[List[RunReport]] = None
    error: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        """True when the point produced reports."""
        return self.reports is not None


@dataclass
class RunSweepResponse:
    """Response DTO for a sweep."""

    points: List[SweepPoint] = field(default_factory=list)
    table: str = ""
    table_path: Optional[Path] = None

    @property
    def failed_points(self) -> List[str]:
        """Labels of points that failed."""
        return [point.label for point in self.points if not point.succeeded]


class RunSweepUseCase:
    """
    Run Sweep use case.

    Every sweep value is validated before any work starts. Each point is
    partitioned and trained under its own sub-directory; a failing point is
    recorded and the sweep continues.
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

    def _points(
        self, request: RunSweepRequest
    ) -> Tuple[str, List[Tuple[str, str, ExperimentConfig]]]:
        ratios = list(request.ratios or [])
        scales = list(request.scales or [])
        if bool(ratios) == bool(scales):
            raise ConfigurationError(
                "A sweep needs a non-empty list of either ratios or scales",
                field="sweep",
            )
        config = request.config
        if ratios:
            return "Gateway ratio", [
                (
                    f"ratio {ratio:g}",
                    f"ratio-{ratio:g}",
                    config.with_updates(gateway_ratio=ratio),
                )
                for ratio in ratios
            ]
        return "Network scale", [
            (
                f"{scale}-gateway",
                f"scale-{scale}",
                config.with_updates(n_gateways=scale),
            )
            for scale in scales
        ]

    def execute(self, request: RunSweepRequest) -> RunSweepResponse:
        """
        Execute the sweep use case.

        Args:
            request: The sweep request

        Returns:
            Per-point outcomes and the merged table

        Raises:
            ConfigurationError: If the sweep values are empty or invalid
        """
        row_title, points = self._points(request)
        artifacts = self.artifact_repository
        response = RunSweepResponse()
        artifacts.acquire_lock()
        try:
            config = request.config
            artifacts.save_json(config.model_dump(mode="json"), "effective_config.json")
            dataset = load_dataset(config, self.dataset_repository)
            runner = ExperimentRunner(artifacts, max_workers=self.max_workers)
            combinations = combinations_for(config, request.all_combinations)

            for label, prefix, variant in points:
                try:
                    plan = partition_dataset(variant, dataset)
                    artifacts.save_partition(plan, f"{prefix}/partition")
                    reports = runner.run(variant, dataset, plan, combinations, prefix)
                    response.points.append(SweepPoint(label=label, reports=reports))
                except SimulationError as exc:
                    logger.error(
                        "Sweep point failed",
                        point=label,
                        error_code=exc.error_code,
                        error=exc.message,
                    )
                    response.points.append(SweepPoint(label=label, error=exc.message))

            response.table = sweep_table(
                [(point.label, point.reports) for point in response.points],
                row_title=row_title,
            )
            response.table_path = artifacts.save_text(response.table, "run_table.txt")
        finally:
            artifacts.release_lock()

        logger.info(
            "Sweep finished",
            points=len(response.points),
            failed=response.failed_points,
        )
        return response

