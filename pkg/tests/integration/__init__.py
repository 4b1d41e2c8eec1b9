"""Integration tests package.

This module provides centralized imports specifically for integration tests,
focusing on the filesystem repositories and the command-line entry point.
"""

# Import integration test dependencies
import json
import pytest
from unittest.mock import patch

import numpy as np
import pandas as pd

# Import the command-line entry point for testing
from src.presentation.main import main

# Import shared builders
from tests.factories import tiny_config_payload, write_config

__all__ = [
    # Test utilities
    "json",
    "pytest",
    "patch",
    "np",
    "pd",
    # Entry point
    "main",
    # Builders
    "tiny_config_payload",
    "write_config",
]
