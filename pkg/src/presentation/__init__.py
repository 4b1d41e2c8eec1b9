"""Presentation layer."""

from .controllers import ExperimentController
from .main import build_parser

__all__ = ["ExperimentController", "build_parser"]
