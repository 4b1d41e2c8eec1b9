"""
Application settings configuration.

This module contains the process-level settings of the simulator, kept
separate from the per-experiment configuration.
"""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AppSettings(BaseSettings):
    """Application settings configuration."""

    # Logging settings
    log_level: str = "INFO"
    log_format: Literal["json", "console"] = "json"

    # Execution settings
    max_workers: int = Field(default=1, ge=1)
    slow_command_threshold_s: float = Field(default=600.0, gt=0.0)

    model_config = SettingsConfigDict(
        env_prefix="FEDIDS_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # Ignore extra environment variables
    )


def get_app_settings() -> AppSettings:
    """
    Get the application settings.

    Settings are read on every call so a changed environment is picked up.

    Returns:
        Application settings instance
    """
    return AppSettings()
