"""
Experiment configuration.

This module contains the pydantic schema of an experiment together with the
override and hashing rules applied by the command-line driver.
"""

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ...domain.exceptions import ConfigurationError
from ...domain.services.federation import FederationConfig
from ...domain.value_objects.enums import (
    AggregationAlgorithm,
    DetectorKind,
    JSMeasure,
    NormalizationScope,
)
from ...domain.value_objects.train_config import TrainConfig

HASH_EXCLUDED_FIELDS = {"output_dir"}


class DatasetConfig(BaseModel):
    """Where the data comes from and how test sets are composed."""

    model_config = ConfigDict(extra="forbid")

    source: Literal["synthetic", "csv"] = "synthetic"
    manifest: Optional[str] = None
    subsample_fraction: float = Field(default=1.0, gt=0.0, le=1.0)

    # synthetic generator
    n_device_types: int = Field(default=9, ge=1)
    dims: int = Field(default=16, ge=2)
    normals_per_type: int = Field(default=300, ge=1)
    anomalies_per_type: int = Field(default=100, ge=1)
    separation: float = Field(default=4.0, gt=0.0)
    anomaly_scale: float = Field(default=2.0, gt=0.0)

    # z-score statistics: one set for the whole network or one per gateway
    normalization: NormalizationScope = NormalizationScope.NETWORK

    # test sets
    held_out_device_types: List[int] = Field(default_factory=list)
    anomaly_ratio: float = Field(default=1.0, gt=0.0)
    new_device_ratio: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def check_source(self) -> "DatasetConfig":
        """A CSV source needs a manifest; new-device rows need held-out types."""
        if self.source == "csv" and not self.manifest:
            raise ValueError("dataset.manifest is required when source is 'csv'")
        if self.new_device_ratio > 0 and not self.held_out_device_types:
            raise ValueError("new_device_ratio > 0 needs held_out_device_types")
        return self


class TrainSettings(BaseModel):
    """Local training hyperparameters."""

    model_config = ConfigDict(extra="forbid")

    learning_rate: float = Field(default=1e-5, gt=0.0)
    batch_size: int = Field(default=12, ge=1)
    local_epochs: int = Field(default=100, ge=0)
    shrink_lambda: float = Field(default=10.0, ge=0.0)
    prox_mu: float = Field(default=0.001, ge=0.0)
    patience: int = Field(default=5, ge=1)
    min_delta: float = Field(default=1e-6, ge=0.0)


class ArchitectureConfig(BaseModel):
    """Optional overrides of the layer-size rules."""

    model_config = ConfigDict(extra="forbid")

    latent_dim: Optional[int] = Field(default=None, ge=1)
    hidden_dim: Optional[int] = Field(default=None, ge=1)


class ExperimentConfig(BaseModel):
    """Every knob of one experiment."""

    model_config = ConfigDict(extra="forbid")

    dataset: DatasetConfig = Field(default_factory=DatasetConfig)
    n_gateways: int = Field(default=10, ge=2)
    gateway_ratio: float = Field(default=0.5, gt=0.0, le=1.0)
    dirichlet_alpha: float = Field(default=0.1995, gt=0.0)
    js_measure: JSMeasure = JSMeasure.DISTANCE
    min_gateway_rows: int = Field(default=10, ge=10)
    model: DetectorKind = DetectorKind.SAECEN
    algorithm: AggregationAlgorithm = AggregationAlgorithm.MSEAVG
    train: TrainSettings = Field(default_factory=TrainSettings)
    architecture: ArchitectureConfig = Field(default_factory=ArchitectureConfig)
    global_rounds: int = Field(default=20, ge=0)
    global_patience: int = Field(default=3, ge=1)
    global_min_delta: float = Field(default=1e-6, ge=0.0)
    repeats: int = Field(default=5, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2**64)
    threshold_quantile: float = Field(default=0.95, ge=0.0, le=1.0)
    export_latent: bool = False
    output_dir: str = "runs/default"

    def train_config(self) -> TrainConfig:
        """Local training settings; autoencoders train without the shrink term."""
        shrink = self.train.shrink_lambda if self.model is DetectorKind.SAECEN else 0.0
        return TrainConfig(
            learning_rate=self.train.learning_rate,
            batch_size=self.train.batch_size,
            local_epochs=self.train.local_epochs,
            shrink_lambda=shrink,
            prox_mu=self.train.prox_mu,
            patience=self.train.patience,
            min_delta=self.train.min_delta,
        )

    def federation_config(self) -> FederationConfig:
        """Server-side settings of the run."""
        return FederationConfig(
            algorithm=self.algorithm,
            train=self.train_config(),
            global_rounds=self.global_rounds,
            gateway_ratio=self.gateway_ratio,
            patience=self.global_patience,
            min_delta=self.global_min_delta,
        )

    def with_updates(self, **changes: Any) -> "ExperimentConfig":
        """Validated copy with top-level fields replaced."""
        payload = self.model_dump(mode="json")
        payload.update(
            {
                key: value.value if hasattr(value, "value") else value
                for key, value in changes.items()
            }
        )
        return validate_config(payload)

    @property
    def column_label(self) -> str:
        """``model/algorithm`` label used in tables."""
        return f"{self.model.display_name}/{self.algorithm.display_name}"


def validate_config(payload: Dict[str, Any]) -> ExperimentConfig:
    """
    Validate a raw configuration mapping.

    Raises:
        ConfigurationError: If validation fails
    """
    try:
        return ExperimentConfig.model_validate(payload)
    except ValidationError as exc:
        errors = exc.errors(include_url=False)
        first = errors[0] if errors else {}
        field = ".".join(str(part) for part in first.get("loc", ()))
        raise ConfigurationError(
            f"Invalid configuration: {field or 'config'}: {first.get('msg', exc)}",
            field=field or None,
            details={"errors": [_error_summary(error) for error in errors]},
        ) from exc


def _error_summary(error: Dict[str, Any]) -> Dict[str, str]:
    return {
        "field": ".".join(str(part) for part in error.get("loc", ())),
        "message": str(error.get("msg", "")),
    }


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(
    config: ExperimentConfig,
    overrides: Sequence[str] = (),
    seed: Optional[int] = None,
    output_dir: Optional[str] = None,
) -> ExperimentConfig:
    """
    Apply command-line overrides and re-validate.

    Each override has the form ``key=value``; dotted keys address nested
    fields and values are parsed as JSON, falling back to plain strings.

    Args:
        config: Configuration loaded from file
        overrides: ``key=value`` strings
        seed: Replacement master seed
        output_dir: Replacement output directory

    Returns:
        The validated effective configuration

    Raises:
        ConfigurationError: On malformed overrides, unknown keys or invalid values
    """
    payload = config.model_dump(mode="json")
    for override in overrides:
        key, sep, raw = override.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(
                "Overrides must look like key=value", value=override
            )
        target = payload
        parts = key.split(".")
        for part in parts[:-1]:
            child = target.get(part)
            if not isinstance(child, dict):
                raise ConfigurationError(
                    f"Unknown configuration section: {part}", field=key
                )
            target = child
        if parts[-1] not in target:
            raise ConfigurationError(f"Unknown configuration key: {key}", field=key)
        target[parts[-1]] = _parse_value(raw)

    if seed is not None:
        payload["master_seed"] = seed
    if output_dir is not None:
        payload["output_dir"] = output_dir
    return validate_config(payload)


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical JSON of the configuration, output dir excluded."""
    canonical = json.dumps(
        config.model_dump(mode="json", exclude=HASH_EXCLUDED_FIELDS),
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
