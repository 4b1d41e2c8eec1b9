"""Infrastructure layer."""

# Settings and logging
from .config_loader import load_config
from .logging_config import configure_logging
from .settings import AppSettings, get_app_settings

# Repository implementations
from .repositories import (
    CsvDatasetRepository,
    FileArtifactRepository,
    get_artifact_repository,
    get_dataset_repository,
)

__all__ = [
    # Settings and logging
    "AppSettings",
    "configure_logging",
    "get_app_settings",
    "load_config",
    # Repositories
    "CsvDatasetRepository",
    "FileArtifactRepository",
    "get_artifact_repository",
    "get_dataset_repository",
]
