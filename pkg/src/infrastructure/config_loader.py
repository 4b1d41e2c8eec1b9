"""
Experiment configuration loader.

This module reads experiment configuration files from disk.
"""

import json
from pathlib import Path
from typing import Optional

import structlog

from ..application.config.experiment_config import ExperimentConfig, validate_config
from ..domain.exceptions import ConfigurationError

logger = structlog.get_logger(__name__)


def load_config(path: Optional[Path]) -> ExperimentConfig:
    """
    Load and validate an experiment configuration file.

    Args:
        path: JSON file, or None for the built-in defaults

    Returns:
        Validated experiment configuration

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid
    """
    if path is None:
        return ExperimentConfig()

    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(
            f"Configuration file not found: {path}", field="config", value=str(path)
        )
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigurationError(
            f"Configuration file is not valid JSON: {exc}",
            field="config",
            value=str(path),
        ) from exc
    if not isinstance(payload, dict):
        raise ConfigurationError(
            "Configuration file must hold a JSON object",
            field="config",
            value=str(path),
        )

    config = validate_config(payload)
    logger.debug("Configuration loaded", path=str(path))
    return config
