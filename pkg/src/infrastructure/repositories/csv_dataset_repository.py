"""
CSV Dataset Repository implementation.

This module contains the pandas implementation of the DatasetRepository
interface: per-device feature CSVs with a header row, described by a JSON
manifest.
"""

import re
from pathlib import Path
from typing import List, Literal, Optional, Tuple

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ...domain.entities.labeled_dataset import LabeledDataset
from ...domain.exceptions import ArtifactNotFoundError, InputDataError
from ...domain.repositories.dataset_repository import DatasetRepository
from ...domain.services.seeding import derive_seed
from ...domain.value_objects.enums import Label

logger = structlog.get_logger(__name__)

NORMAL_LABEL_VALUES = {"0", "normal", "benign"}


class ManifestFile(BaseModel):
    """One CSV file of a manifest."""

    model_config = ConfigDict(extra="forbid")

    path: str
    device_type: int = Field(ge=0)
    label: Optional[Literal["normal", "anomalous"]] = None
    attack: Optional[str] = None


class ManifestDocument(BaseModel):
    """
    Dataset manifest.

    Relative file paths resolve against the manifest directory. A file
    without a label takes per-row labels from ``label_column`` or, when no
    column is configured, is anomalous iff its name matches
    ``anomalous_pattern``.
    """

    model_config = ConfigDict(extra="forbid")

    feature_columns: Optional[List[str]] = None
    label_column: Optional[str] = None
    anomalous_pattern: str = "gafgyt|mirai"
    files: List[ManifestFile] = Field(min_length=1)


def _label_from_name(path: Path, pattern: str) -> Label:
    if re.search(pattern, path.name, flags=re.IGNORECASE):
        return Label.ANOMALOUS
    return Label.NORMAL


def _parse_labels(column: pd.Series) -> np.ndarray:
    """Numeric labels are anomalous when non-zero; text labels when not normal."""
    numeric = pd.to_numeric(column, errors="coerce")
    if numeric.notna().all():
        return np.where(numeric.to_numpy() != 0, Label.ANOMALOUS, Label.NORMAL)
    text = column.astype(str).str.strip().str.lower()
    return np.where(text.isin(NORMAL_LABEL_VALUES), Label.NORMAL, Label.ANOMALOUS)


def _read_frame(path: Path) -> pd.DataFrame:
    if not path.is_file():
        raise ArtifactNotFoundError("CSV file", str(path))
    try:
        return pd.read_csv(path, encoding="utf-8")
    except pd.errors.EmptyDataError as exc:
        raise InputDataError(
            f"CSV file has no header row: {path}", details={"path": str(path)}
        ) from exc
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise InputDataError(
            f"CSV file cannot be parsed: {path}",
            details={"path": str(path), "reason": str(exc)},
        ) from exc


class CsvDatasetRepository(DatasetRepository):
    """
    CSV implementation of DatasetRepository.

    Feature values are coerced to float; rows with a non-numeric or
    non-finite feature are rejected and counted.
    """

    def load_csv(
        self,
        path: Path,
        device_type: int,
        label: Optional[Label] = None,
        label_column: Optional[str] = None,
        feature_columns: Optional[Tuple[str, ...]] = None,
    ) -> Tuple[LabeledDataset, int]:
        """
        Load one feature CSV.

        Args:
            path: CSV file with a header row
            device_type: Device type id of every row
            label: Label of every row, when the file has a single label
            label_column: Column holding per-row labels, when ``label`` is None
            feature_columns: Columns to use, all other columns when None

        Returns:
            The dataset of usable rows and the number of rejected rows

        Raises:
            ArtifactNotFoundError: If the file does not exist
            InputDataError: If the file cannot be parsed or has no usable rows
        """
        path = Path(path)
        frame = _read_frame(path)

        if label is None and label_column is None:
            raise InputDataError(
                "A CSV needs a file label or a label column",
                details={"path": str(path)},
            )
        if label_column is not None and label is None:
            if label_column not in frame.columns:
                raise InputDataError(
                    f"Label column '{label_column}' not found",
                    details={"path": str(path), "columns": list(frame.columns)},
                )
            labels = _parse_labels(frame[label_column])
        else:
            labels = np.full(len(frame), Label(label), dtype=np.int8)

        if feature_columns is None:
            columns = [c for c in frame.columns if c != label_column]
        else:
            missing = [c for c in feature_columns if c not in frame.columns]
            if missing:
                raise InputDataError(
                    "Feature columns not found",
                    details={"path": str(path), "missing": missing},
                )
            columns = list(feature_columns)
        if not columns:
            raise InputDataError(
                "CSV has no feature columns", details={"path": str(path)}
            )

        features = (
            frame[columns].apply(pd.to_numeric, errors="coerce").to_numpy(np.float64)
        )
        usable = np.all(np.isfinite(features), axis=1)
        rejected = int(np.sum(~usable))
        if rejected:
            logger.warning(
                "Rejected CSV rows with non-finite values",
                path=str(path),
                rejected=rejected,
            )
        if not usable.any():
            raise InputDataError(
                "CSV has no usable rows",
                details={"path": str(path), "rejected": rejected},
            )

        dataset = LabeledDataset(
            features=features[usable],
            labels=labels[usable],
            device_types=np.full(int(usable.sum()), device_type, dtype=np.int64),
        )
        return dataset, rejected

    def load_manifest(
        self,
        path: Path,
        subsample_fraction: float = 1.0,
        seed: int = 0,
    ) -> LabeledDataset:
        """
        Load every file listed in a dataset manifest.

        Args:
            path: Manifest file
            subsample_fraction: Fraction of rows kept per file
            seed: Seed of the subsampling; file i uses ``derive_seed(seed, i)``

        Returns:
            The concatenated dataset, files in manifest order

        Raises:
            ArtifactNotFoundError: If the manifest or a listed file is missing
            InputDataError: If the manifest or a file cannot be used
        """
        path = Path(path)
        if not path.is_file():
            raise ArtifactNotFoundError("Dataset manifest", str(path))
        try:
            manifest = ManifestDocument.model_validate_json(path.read_bytes())
        except ValidationError as exc:
            raise InputDataError(
                "Invalid dataset manifest",
                details={
                    "path": str(path),
                    "errors": exc.errors(include_url=False, include_context=False),
                },
            ) from exc

        feature_columns = (
            tuple(manifest.feature_columns) if manifest.feature_columns else None
        )
        parts = []
        total_rejected = 0
        for index, entry in enumerate(manifest.files):
            file_path = Path(entry.path)
            if not file_path.is_absolute():
                file_path = path.parent / file_path

            label: Optional[Label] = None
            if entry.label is not None:
                label = Label.ANOMALOUS if entry.label == "anomalous" else Label.NORMAL
            elif manifest.label_column is None:
                label = _label_from_name(file_path, manifest.anomalous_pattern)

            dataset, rejected = self.load_csv(
                file_path,
                entry.device_type,
                label=label,
                label_column=manifest.label_column,
                feature_columns=feature_columns,
            )
            total_rejected += rejected
            if subsample_fraction < 1.0:
                dataset = _subsample(
                    dataset, subsample_fraction, derive_seed(seed, index)
                )
            parts.append(dataset)

        dataset = LabeledDataset.concat(parts)
        logger.info(
            "Manifest loaded",
            path=str(path),
            files=len(parts),
            rows=dataset.n_rows,
            rejected=total_rejected,
        )
        return dataset

    def read_features(self, path: Path, n_features: int) -> np.ndarray:
        """
        Read an unlabeled feature matrix for scoring.

        Args:
            path: CSV file with a header row
            n_features: Expected number of feature columns

        Returns:
            Matrix of shape (rows, n_features); a header-only file gives zero rows

        Raises:
            ArtifactNotFoundError: If the file does not exist
            InputDataError: If the column count or values are invalid
        """
        path = Path(path)
        frame = _read_frame(path)
        if frame.shape[1] != n_features:
            raise InputDataError(
                "Input dimension does not match the model",
                details={"expected": n_features, "got": int(frame.shape[1])},
            )
        if frame.empty:
            return np.zeros((0, n_features))
        features = frame.apply(pd.to_numeric, errors="coerce").to_numpy(np.float64)
        if not np.all(np.isfinite(features)):
            bad = np.flatnonzero(~np.all(np.isfinite(features), axis=1))
            raise InputDataError(
                "Input rows must hold finite numbers",
                details={"path": str(path), "rows": bad[:10].tolist()},
            )
        return features.reshape(-1, n_features)


def _subsample(dataset: LabeledDataset, fraction: float, seed: int) -> LabeledDataset:
    """Seeded subset of rows, original order kept, at least one row."""
    keep = max(1, int(np.floor(fraction * dataset.n_rows + 0.5)))
    rng = np.random.default_rng(seed)
    rows = np.sort(rng.choice(dataset.n_rows, size=keep, replace=False))
    return dataset.subset(rows)


def get_dataset_repository() -> CsvDatasetRepository:
    """
    Get a dataset repository instance.

    Returns:
        Dataset repository instance
    """
    return CsvDatasetRepository()
