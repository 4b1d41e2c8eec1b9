"""Middleware package.

This module provides centralized middleware components for the CLI.
"""

from .logging_middleware import CommandLoggingMiddleware

__all__ = ["CommandLoggingMiddleware"]
