"""Error handlers package.

This module provides centralized error handling for the command-line
application.
"""

from .exception_handlers import (
    EXIT_RUNTIME,
    EXIT_SUCCESS,
    EXIT_VALIDATION,
    handle_exception,
)

__all__ = [
    "EXIT_RUNTIME",
    "EXIT_SUCCESS",
    "EXIT_VALIDATION",
    "handle_exception",
]
