"""Exception handlers for the command-line application.

This module maps every exception a command can raise to a process exit code
and logs it with its structured details.
"""

from typing import Callable, List, Tuple, Type

import structlog
from pydantic import ValidationError

from ...domain.exceptions import (
    ArtifactNotFoundError,
    ConfigurationError,
    OutputLockedError,
    SimulationError,
    TrainingError,
)

logger = structlog.get_logger()

EXIT_SUCCESS = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2

Handler = Callable[[BaseException], int]


def configuration_exception_handler(exc: BaseException) -> int:
    """
    Handle invalid configuration and command-line input.

    Args:
        exc: The configuration error

    Returns:
        Validation exit code
    """
    assert isinstance(exc, ConfigurationError)
    logger.error(
        "Configuration error occurred",
        message=exc.message,
        error_code=exc.error_code,
        field=exc.field,
        value=exc.value,
        details=exc.details,
    )
    return EXIT_VALIDATION


def validation_exception_handler(exc: BaseException) -> int:
    """
    Handle pydantic validation errors that escaped the config layer.

    Args:
        exc: The validation error

    Returns:
        Validation exit code
    """
    assert isinstance(exc, ValidationError)
    logger.error(
        "Validation error occurred",
        errors=exc.errors(include_url=False, include_context=False),
    )
    return EXIT_VALIDATION


def artifact_not_found_exception_handler(exc: BaseException) -> int:
    """
    Handle missing input files and artifacts.

    Args:
        exc: The artifact not found error

    Returns:
        Runtime exit code
    """
    assert isinstance(exc, ArtifactNotFoundError)
    logger.error(
        "Artifact not found",
        message=exc.message,
        resource_type=exc.resource_type,
        resource_id=str(exc.resource_id),
    )
    return EXIT_RUNTIME


def training_exception_handler(exc: BaseException) -> int:
    """
    Handle a federated run aborted inside a global round.

    Args:
        exc: The training error

    Returns:
        Runtime exit code
    """
    assert isinstance(exc, TrainingError)
    logger.error(
        "Training aborted",
        message=exc.message,
        round_index=exc.round_index,
        details=exc.details,
    )
    return EXIT_RUNTIME


def output_locked_exception_handler(exc: BaseException) -> int:
    """
    Handle an output directory held by another process.

    Args:
        exc: The lock error

    Returns:
        Runtime exit code
    """
    assert isinstance(exc, OutputLockedError)
    logger.error("Output directory locked", message=exc.message, details=exc.details)
    return EXIT_RUNTIME


def simulation_exception_handler(exc: BaseException) -> int:
    """
    Handle any other simulator error.

    Args:
        exc: The simulation error

    Returns:
        Runtime exit code
    """
    assert isinstance(exc, SimulationError)
    logger.error(
        "Simulation error occurred",
        message=exc.message,
        error_code=exc.error_code,
        details=exc.details,
    )
    return EXIT_RUNTIME


def general_exception_handler(exc: BaseException) -> int:
    """
    Handle all other unhandled exceptions.

    Args:
        exc: The unhandled exception

    Returns:
        Runtime exit code
    """
    logger.error(
        "Unexpected error occurred",
        error=str(exc),
        error_type=type(exc).__name__,
        exc_info=exc,
    )
    return EXIT_RUNTIME


# Most specific first
EXCEPTION_HANDLERS: List[Tuple[Type[BaseException], Handler]] = [
    (ConfigurationError, configuration_exception_handler),
    (ValidationError, validation_exception_handler),
    (ArtifactNotFoundError, artifact_not_found_exception_handler),
    (TrainingError, training_exception_handler),
    (OutputLockedError, output_locked_exception_handler),
    (SimulationError, simulation_exception_handler),
    (Exception, general_exception_handler),
]


def handle_exception(exc: BaseException) -> int:
    """
    Log an exception with the first matching handler.

    Args:
        exc: The exception raised by a command

    Returns:
        The process exit code
    """
    for exc_type, handler in EXCEPTION_HANDLERS:
        if isinstance(exc, exc_type):
            return handler(exc)
    return general_exception_handler(exc)
