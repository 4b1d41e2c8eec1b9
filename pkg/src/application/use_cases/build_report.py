"""
Build Report use case.

This module contains the BuildReport use case which merges persisted run
reports into one table.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List

import structlog

from ...domain import ArtifactRepository, RunReport
from ...domain.exceptions import ArtifactNotFoundError
from ..services.report_tables import merged_table

logger = structlog.get_logger(__name__)


@dataclass
class BuildReportRequest:
    """Request DTO for merging run reports."""

    run_locations: List[Path]
    output_name: str = "report_table.txt"


@dataclass
class BuildReportResponse:
    """Response DTO for merging run reports."""

    reports: List[RunReport]
    table: str
    table_path: Path


class BuildReportUseCase:
    """
    Build Report use case.

    Collects every run report below the given locations and renders them as
    a per-gateway table (one setting) or a sweep table (several settings).
    """

    def __init__(self, artifact_repository: ArtifactRepository):
        """
        Initialize the use case.

        Args:
            artifact_repository: Repository of the output directory
        """
        self.artifact_repository = artifact_repository

    def execute(self, request: BuildReportRequest) -> BuildReportResponse:
        """
        Execute the report use case.

        Args:
            request: The report request

        Returns:
            The merged reports and table

        Raises:
            ArtifactNotFoundError: If no run report is found
        """
        paths: List[Path] = []
        for location in request.run_locations:
            paths.extend(self.artifact_repository.find_reports(Path(location)))
        if not paths:
            raise ArtifactNotFoundError(
                "run report",
                ", ".join(str(location) for location in request.run_locations),
                message="No run reports found in the given locations",
            )

        reports = [self.artifact_repository.load_report(path) for path in paths]
        table = merged_table(reports)

        self.artifact_repository.acquire_lock()
        try:
            table_path = self.artifact_repository.save_text(table, request.output_name)
        finally:
            self.artifact_repository.release_lock()

        logger.info("Report built", reports=len(reports), path=str(table_path))
        return BuildReportResponse(reports=reports, table=table, table_path=table_path)
