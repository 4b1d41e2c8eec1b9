"""
Artifact Repository interface.

This module contains the ArtifactRepository interface which defines the
contract for persisting experiment outputs in the domain layer.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from ..entities.detector import Detector
from ..entities.reports import RunReport
from ..value_objects.model_params import ModelParams
from ..value_objects.partition_plan import PartitionPlan


class ArtifactRepository(ABC):
    """
    Artifact Repository interface.

    Defines the contract for the files of an output directory. Paths passed
    to the save methods are relative to that directory; every save method
    returns the path it wrote.
    """

    @property
    @abstractmethod
    def root(self) -> Path:
        """The output directory."""
        pass

    @abstractmethod
    def acquire_lock(self) -> None:
        """
        Take exclusive ownership of the output directory.

        Raises:
            OutputLockedError: If another process holds the lock
        """
        pass

    @abstractmethod
    def release_lock(self) -> None:
        """Release the output directory lock if held."""
        pass

    @abstractmethod
    def save_partition(
        self, plan: PartitionPlan, relative_dir: str = "partition"
    ) -> Path:
        """
        Persist the assignment CSV and the plan metadata.

        Args:
            plan: Partition to persist
            relative_dir: Directory receiving assignment.csv and plan.json

        Returns:
            Path of the assignment CSV
        """
        pass

    @abstractmethod
    def load_partition(self, path: Path) -> PartitionPlan:
        """
        Load a persisted partition plan.

        Raises:
            ArtifactNotFoundError: If the plan does not exist
        """
        pass

    @abstractmethod
    def save_model(self, params: ModelParams, relative_path: str) -> Path:
        """Persist model parameters."""
        pass

    @abstractmethod
    def save_detector(self, detector: Detector, relative_path: str) -> Path:
        """Persist a fitted detector."""
        pass

    @abstractmethod
    def load_detector(self, path: Path) -> Detector:
        """
        Load a detector file, or a model file as an AE detector.

        Raises:
            ArtifactNotFoundError: If the file does not exist
            InputDataError: If the file is not a valid model document
        """
        pass

    @abstractmethod
    def save_report(self, report: RunReport, relative_path: str) -> Path:
        """Persist a machine-readable run report."""
        pass

    @abstractmethod
    def load_report(self, path: Path) -> RunReport:
        """
        Load a run report.

        Raises:
            ArtifactNotFoundError: If the report does not exist
        """
        pass

    @abstractmethod
    def find_reports(self, location: Path) -> List[Path]:
        """
        Run reports in a directory tree, or the given file itself.

        Returns:
            Report paths in sorted order, possibly empty

        Raises:
            ArtifactNotFoundError: If the location does not exist
        """
        pass

    @abstractmethod
    def save_text(self, text: str, relative_path: str) -> Path:
        """Persist a human-readable text file such as a table."""
        pass

    @abstractmethod
    def save_json(self, payload: Dict[str, Any], relative_path: str) -> Path:
        """Persist a JSON document with sorted keys."""
        pass

    @abstractmethod
    def save_latents(
        self, latents: np.ndarray, labels: np.ndarray, relative_path: str
    ) -> Path:
        """Persist latent vectors with their labels, one row per sample."""
        pass

    @abstractmethod
    def save_scores(
        self, scores: np.ndarray, verdicts: Any, relative_path: str
    ) -> Path:
        """Persist per-row scores and, when given, verdicts."""
        pass
