"""Domain repositories."""

from .artifact_repository import ArtifactRepository
from .dataset_repository import DatasetRepository

__all__ = ["ArtifactRepository", "DatasetRepository"]
