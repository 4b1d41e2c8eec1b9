"""
File Artifact Repository implementation.

This module contains the filesystem implementation of the
ArtifactRepository interface. JSON documents are written with sorted keys
and CSV tables through pandas, so equal inputs give byte-identical files.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd
import structlog
from pydantic import TypeAdapter, ValidationError

from ...domain.entities.detector import Detector
from ...domain.entities.reports import RunReport
from ...domain.exceptions import (
    ArtifactNotFoundError,
    InputDataError,
    OutputLockedError,
)
from ...domain.repositories.artifact_repository import ArtifactRepository
from ...domain.value_objects.enums import JSMeasure, Label
from ...domain.value_objects.model_params import ModelParams
from ...domain.value_objects.partition_plan import UNASSIGNED, PartitionPlan
from ..serialization.model_codec import (
    decode_detector,
    dumps_document,
    encode_detector,
    encode_model,
    loads_document,
)

logger = structlog.get_logger(__name__)

LOCK_NAME = ".lock"
REPORT_NAME = "run_report.json"
ASSIGNMENT_NAME = "assignment.csv"
PLAN_NAME = "plan.json"

_report_adapter: TypeAdapter[RunReport] = TypeAdapter(RunReport)


class FileArtifactRepository(ArtifactRepository):
    """
    Filesystem implementation of ArtifactRepository.

    The lock is a ``.lock`` file created exclusively in the output
    directory; a second writer fails instead of interleaving its files.
    """

    def __init__(self, root: Union[str, Path]):
        """
        Initialize the repository.

        Args:
            root: Output directory, created on first write
        """
        self._root = Path(root)
        self._lock_held = False

    @property
    def root(self) -> Path:
        """The output directory."""
        return self._root

    def _target(self, relative_path: str) -> Path:
        target = self._root / relative_path
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def acquire_lock(self) -> None:
        """
        Take exclusive ownership of the output directory.

        Raises:
            OutputLockedError: If another process holds the lock
        """
        self._root.mkdir(parents=True, exist_ok=True)
        lock_path = self._root / LOCK_NAME
        try:
            descriptor = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError as exc:
            raise OutputLockedError(
                f"Output directory is in use: {self._root}",
                details={"lock": str(lock_path)},
            ) from exc
        with os.fdopen(descriptor, "w") as handle:
            handle.write(str(os.getpid()))
        self._lock_held = True

    def release_lock(self) -> None:
        """Release the output directory lock if held."""
        if not self._lock_held:
            return
        (self._root / LOCK_NAME).unlink(missing_ok=True)
        self._lock_held = False

    def save_partition(
        self, plan: PartitionPlan, relative_dir: str = "partition"
    ) -> Path:
        """
        Persist the assignment CSV and the plan metadata.

        The CSV lists every dataset row with its gateway id, or -1 for rows
        outside the training pool.
        """
        frame = pd.DataFrame(
            {
                "row_index": np.arange(plan.assignment.size, dtype=np.int64),
                "gateway_id": plan.assignment,
            }
        )
        assignment_path = self._target(f"{relative_dir}/{ASSIGNMENT_NAME}")
        frame.to_csv(assignment_path, index=False, lineterminator="\n")
        summary = dict(plan.summary())
        summary["n_rows"] = int(plan.assignment.size)
        self.save_json(summary, f"{relative_dir}/{PLAN_NAME}")
        return assignment_path

    def load_partition(self, path: Path) -> PartitionPlan:
        """
        Load a persisted partition plan.

        Args:
            path: The assignment CSV or the directory holding it

        Raises:
            ArtifactNotFoundError: If the plan does not exist
        """
        path = Path(path)
        directory = path if path.is_dir() else path.parent
        assignment_path = directory / ASSIGNMENT_NAME
        plan_path = directory / PLAN_NAME
        for required in (assignment_path, plan_path):
            if not required.is_file():
                raise ArtifactNotFoundError("Partition file", str(required))

        metadata = json.loads(plan_path.read_text(encoding="utf-8"))
        frame = pd.read_csv(assignment_path)
        assignment = np.full(int(metadata["n_rows"]), UNASSIGNED, dtype=np.int64)
        assignment[frame["row_index"].to_numpy()] = frame["gateway_id"].to_numpy()
        return PartitionPlan(
            proportions=np.asarray(metadata["proportions"], dtype=np.float64),
            device_types=tuple(metadata["device_types"]),
            concentration=float(metadata["concentration"]),
            realized_js=float(metadata["realized_js"]),
            assignment=assignment,
            js_measure=JSMeasure(metadata["js_measure"]),
        )

    def save_model(self, params: ModelParams, relative_path: str) -> Path:
        """Persist model parameters."""
        target = self._target(relative_path)
        target.write_text(dumps_document(encode_model(params)), encoding="utf-8")
        return target

    def save_detector(self, detector: Detector, relative_path: str) -> Path:
        """Persist a fitted detector."""
        target = self._target(relative_path)
        target.write_text(dumps_document(encode_detector(detector)), encoding="utf-8")
        return target

    def load_detector(self, path: Path) -> Detector:
        """
        Load a detector file, or a model file as an AE detector.

        Raises:
            ArtifactNotFoundError: If the file does not exist
            InputDataError: If the file is not a valid model document
        """
        path = Path(path)
        if not path.is_file():
            raise ArtifactNotFoundError("Model file", str(path))
        detector = decode_detector(loads_document(path.read_bytes()))
        logger.debug("Detector loaded", path=str(path), kind=detector.kind.value)
        return detector

    def save_report(self, report: RunReport, relative_path: str) -> Path:
        """Persist a machine-readable run report."""
        payload = _report_adapter.dump_python(report, mode="json")
        return self.save_json(payload, relative_path)

    def load_report(self, path: Path) -> RunReport:
        """
        Load a run report.

        Raises:
            ArtifactNotFoundError: If the report does not exist
            InputDataError: If the file is not a run report
        """
        path = Path(path)
        if not path.is_file():
            raise ArtifactNotFoundError("Run report", str(path))
        try:
            return _report_adapter.validate_json(path.read_bytes())
        except ValidationError as exc:
            raise InputDataError(
                f"Invalid run report: {path}",
                details={
                    "errors": exc.errors(include_url=False, include_context=False)
                },
            ) from exc

    def find_reports(self, location: Path) -> List[Path]:
        """
        Run reports in a directory tree, or the given file itself.

        Raises:
            ArtifactNotFoundError: If the location does not exist
        """
        location = Path(location)
        if location.is_file():
            return [location]
        if not location.is_dir():
            raise ArtifactNotFoundError("Run directory", str(location))
        return sorted(location.rglob(REPORT_NAME))

    def save_text(self, text: str, relative_path: str) -> Path:
        """Persist a human-readable text file such as a table."""
        target = self._target(relative_path)
        target.write_text(text, encoding="utf-8")
        return target

    def save_json(self, payload: Dict[str, Any], relative_path: str) -> Path:
        """Persist a JSON document with sorted keys."""
        target = self._target(relative_path)
        target.write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return target

    def save_latents(
        self, latents: np.ndarray, labels: np.ndarray, relative_path: str
    ) -> Path:
        """Persist latent vectors with their labels, one row per sample."""
        latents = np.atleast_2d(np.asarray(latents, dtype=np.float64))
        frame = pd.DataFrame(
            latents, columns=[f"latent_{i}" for i in range(latents.shape[1])]
        )
        frame["label"] = np.asarray(labels, dtype=np.int64)
        target = self._target(relative_path)
        frame.to_csv(target, index=False, lineterminator="\n", float_format="%.17g")
        return target

    def save_scores(
        self, scores: np.ndarray, verdicts: Optional[np.ndarray], relative_path: str
    ) -> Path:
        """
        Persist per-row scores and, when given, verdicts.

        Verdicts are written as ``normal`` or ``anomalous``; an empty score
        vector still produces the header row.
        """
        frame = pd.DataFrame({"score": np.asarray(scores, dtype=np.float64)})
        if verdicts is not None:
            frame["verdict"] = [
                Label(int(verdict)).name.lower() for verdict in np.asarray(verdicts)
            ]
        target = self._target(relative_path)
        frame.to_csv(target, index=False, lineterminator="\n", float_format="%.17g")
        return target


def get_artifact_repository(root: Union[str, Path]) -> FileArtifactRepository:
    """
    Get an artifact repository instance.

    Args:
        root: Output directory

    Returns:
        Artifact repository instance
    """
    return FileArtifactRepository(root)
