"""
Score Samples use case.

This module contains the ScoreSamples use case which applies a persisted
detector to a feature CSV.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import structlog

from ...domain import ArtifactRepository, DatasetRepository
from ...domain.services.detection import classify, score_batch
from ...domain.value_objects.enums import Label

logger = structlog.get_logger(__name__)


@dataclass
class ScoreSamplesRequest:
    """Request DTO for scoring samples."""

    model_path: Path
    input_path: Path
    output_name: str = "scores.csv"


@dataclass
class ScoreSamplesResponse:
    """Response DTO for scoring samples."""

    output_path: Path
    n_rows: int
    n_flagged: Optional[int] = None


class ScoreSamplesUseCase:
    """
    Score Samples use case.

    Raw rows are normalized with the detector's stored normalizer when it
    has one. Verdicts are written only for detectors with a threshold.
    """

    def __init__(
        self,
        dataset_repository: DatasetRepository,
        artifact_repository: ArtifactRepository,
    ):
        """
        Initialize the use case.

        Args:
            dataset_repository: Repository for reading the input rows
            artifact_repository: Repository of the output directory
        """
        self.dataset_repository = dataset_repository
        self.artifact_repository = artifact_repository

    def execute(self, request: ScoreSamplesRequest) -> ScoreSamplesResponse:
        """
        Execute the scoring use case.

        Args:
            request: The scoring request

        Returns:
            The scoring response

        Raises:
            ArtifactNotFoundError: If the model or input file is missing
            InputDataError: If the input does not match the model
        """
        detector = self.artifact_repository.load_detector(request.model_path)
        features = self.dataset_repository.read_features(
            request.input_path, detector.params.input_dim
        )
        scores = score_batch(detector, features, raw=detector.normalizer is not None)
        verdicts = None
        if detector.threshold is not None:
            verdicts = classify(detector, scores)

        self.artifact_repository.acquire_lock()
        try:
            output_path = self.artifact_repository.save_scores(
                scores, verdicts, request.output_name
            )
        finally:
            self.artifact_repository.release_lock()

        n_flagged = None
        if verdicts is not None:
            n_flagged = int(np.sum(verdicts == Label.ANOMALOUS))
        logger.info(
            "Samples scored",
            rows=int(scores.size),
            flagged=n_flagged,
            path=str(output_path),
        )
        return ScoreSamplesResponse(
            output_path=output_path, n_rows=int(scores.size), n_flagged=n_flagged
        )
