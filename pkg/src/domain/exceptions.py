"""Domain exceptions.

This module defines the exception hierarchy raised by the simulator. Every
exception carries a human-readable message, a machine-readable error code and
a dictionary of structured details that the presentation layer logs.
"""

from typing import Any, Dict, Optional


class SimulationError(Exception):
    """Base class for all simulator errors."""

    default_code = "simulation_error"

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the simulation error.

        Args:
            message: Human-readable error message
            error_code: Machine-readable error code
            details: Additional error details
        """
        self.message = message
        self.error_code = error_code or self.default_code
        self.details = details or {}
        super().__init__(self.message)


class ConfigurationError(SimulationError):
    """Raised for invalid configuration, shapes or hyperparameters."""

    default_code = "configuration_error"

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        value: Optional[Any] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the configuration error.

        Args:
            message: Human-readable error message
            field: The configuration field that failed validation
            value: The invalid value
            details: Additional validation details
        """
        self.field = field
        self.value = value
        merged = dict(details or {})
        if field is not None:
            merged.setdefault("field", field)
        super().__init__(message, details=merged)


class InputDataError(SimulationError):
    """Raised when input data is empty, malformed or too small."""

    default_code = "input_error"


class DetectorStateError(SimulationError):
    """Raised when a detector or model is used in an invalid state."""

    default_code = "state_error"


class NumericalError(SimulationError):
    """Raised when parameters or scores become non-finite."""

    default_code = "numerical_error"


class TrainingError(SimulationError):
    """Raised when a federated run fails inside a global round."""

    default_code = "training_error"

    def __init__(
        self,
        message: str,
        round_index: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the training error.

        Args:
            message: Human-readable error message
            round_index: Global round in which the failure happened
            details: Additional error details
        """
        self.round_index = round_index
        merged = dict(details or {})
        if round_index is not None:
            merged.setdefault("round_index", round_index)
        super().__init__(message, details=merged)


class ArtifactNotFoundError(SimulationError):
    """Raised when a requested file or persisted artifact does not exist."""

    default_code = "artifact_not_found"

    def __init__(
        self,
        resource_type: str,
        resource_id: Any,
        message: Optional[str] = None,
    ):
        """
        Initialize the artifact not found error.

        Args:
            resource_type: The type of artifact that was not found
            resource_id: The path or identifier of the artifact
            message: Optional custom message
        """
        self.resource_type = resource_type
        self.resource_id = resource_id
        super().__init__(
            message or f"{resource_type} {resource_id} not found",
            details={
                "resource_type": resource_type,
                "resource_id": str(resource_id),
            },
        )


class OutputLockedError(SimulationError):
    """Raised when another process holds the output directory lock."""

    default_code = "output_locked"
