"""Logging middleware configuration.

This module wraps command execution with start, completion and failure logs.
"""

import time
from typing import Callable
from uuid import uuid4

import structlog

logger = structlog.get_logger()

Command = Callable[[], int]


class CommandLoggingMiddleware:
    """Middleware for logging command runs and flagging slow ones."""

    def __init__(self, slow_command_threshold: float = 600.0):
        """
        Initialize the command logging middleware.

        Args:
            slow_command_threshold: Threshold in seconds
        """
        self.slow_command_threshold = slow_command_threshold

    def __call__(self, command_name: str, command: Command) -> int:
        """
        Run a command and log relevant information.

        Args:
            command_name: Name of the CLI command
            command: Callable executing the command and returning an exit code

        Returns:
            The command's exit code
        """
        run_id = str(uuid4())
        start_time = time.perf_counter()
        logger.info("Command started", run_id=run_id, command=command_name)

        try:
            exit_code = command()
        except Exception as exc:
            process_time = time.perf_counter() - start_time
            logger.error(
                "Command failed",
                run_id=run_id,
                command=command_name,
                error=str(exc),
                error_type=type(exc).__name__,
                process_time_ms=round(process_time * 1000, 2),
            )
            # Re-raise the exception to be handled by error handlers
            raise

        process_time = time.perf_counter() - start_time
        logger.info(
            "Command completed",
            run_id=run_id,
            command=command_name,
            exit_code=exit_code,
            process_time_ms=round(process_time * 1000, 2),
        )
        if process_time > self.slow_command_threshold:
            logger.warning(
                "Slow command detected",
                run_id=run_id,
                command=command_name,
                process_time_ms=round(process_time * 1000, 2),
                threshold_ms=round(self.slow_command_threshold * 1000, 2),
            )
        return exit_code
