"""Repository implementations."""

from .csv_dataset_repository import (
    CsvDatasetRepository,
    ManifestDocument,
    get_dataset_repository,
)
from .file_artifact_repository import (
    FileArtifactRepository,
    get_artifact_repository,
)

__all__ = [
    "CsvDatasetRepository",
    "FileArtifactRepository",
    "ManifestDocument",
    "get_artifact_repository",
    "get_dataset_repository",
]
