"""
Model file codec.

This module maps model parameters and fitted detectors to versioned JSON
documents and back. Weights are stored row-major as nested lists; floats
are written with ``repr`` precision so a decoded model equals the encoded
one bit for bit.
"""

from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ...domain.entities.detector import CentroidModel, Detector
from ...domain.exceptions import InputDataError, SimulationError
from ...domain.value_objects.dense_layer import DenseLayer
from ...domain.value_objects.enums import Activation, DetectorKind
from ...domain.value_objects.model_params import ModelParams
from ...domain.value_objects.normalizer_stats import NormalizerStats

FORMAT_VERSION = 1


class LayerDocument(BaseModel):
    """One dense layer."""

    model_config = ConfigDict(extra="forbid")

    in_dim: int = Field(ge=1)
    out_dim: int = Field(ge=1)
    activation: Activation
    weights: List[List[float]]
    biases: List[float]

    @model_validator(mode="after")
    def check_shapes(self) -> "LayerDocument":
        """Weights must be out_dim rows of in_dim values."""
        if len(self.weights) != self.out_dim or any(
            len(row) != self.in_dim for row in self.weights
        ):
            raise ValueError("weights do not match in_dim/out_dim")
        if len(self.biases) != self.out_dim:
            raise ValueError("biases do not match out_dim")
        return self


class NormalizerDocument(BaseModel):
    """Z-score statistics of the gateway that fitted the detector."""

    model_config = ConfigDict(extra="forbid")

    mean: List[float]
    std: List[float]


class ModelDocument(BaseModel):
    """
    Model or detector file.

    ``kind`` is ``model`` for bare parameters and the detector family
    otherwise. SAE-CEN detector files hold the encoder only.
    """

    model_config = ConfigDict(extra="forbid")

    format_version: Literal[1] = FORMAT_VERSION
    kind: Literal["model", "ae", "sae_cen"]
    encoder: List[LayerDocument]
    decoder: List[LayerDocument] = Field(default_factory=list)
    centroid: Optional[List[float]] = None
    threshold: Optional[float] = None
    normalizer: Optional[NormalizerDocument] = None


def _layer_document(layer: DenseLayer) -> LayerDocument:
    return LayerDocument(
        in_dim=layer.in_dim,
        out_dim=layer.out_dim,
        activation=layer.activation,
        weights=layer.weights.tolist(),
        biases=layer.biases.tolist(),
    )


def _layer(document: LayerDocument) -> DenseLayer:
    return DenseLayer(
        weights=np.asarray(document.weights, dtype=np.float64),
        biases=np.asarray(document.biases, dtype=np.float64),
        activation=document.activation,
    )


def encode_model(params: ModelParams) -> ModelDocument:
    """Document of bare model parameters."""
    return ModelDocument(
        kind="model",
        encoder=[_layer_document(layer) for layer in params.encoder_layers],
        decoder=[_layer_document(layer) for layer in params.decoder_layers],
    )


def encode_detector(detector: Detector) -> ModelDocument:
    """Document of a fitted detector."""
    document = encode_model(detector.params)
    document.kind = detector.kind.value  # type: ignore[assignment]
    if detector.centroid is not None:
        document.centroid = detector.centroid.centroid.tolist()
    document.threshold = detector.threshold
    if detector.normalizer is not None:
        document.normalizer = NormalizerDocument(
            mean=detector.normalizer.mean.tolist(),
            std=detector.normalizer.std.tolist(),
        )
    return document


def decode_params(document: ModelDocument) -> ModelParams:
    """Model parameters of a document."""
    return ModelParams(
        encoder_layers=tuple(_layer(layer) for layer in document.encoder),
        decoder_layers=tuple(_layer(layer) for layer in document.decoder),
    )


def decode_detector(document: ModelDocument) -> Detector:
    """
    Detector of a document; a bare model file becomes an AE detector.

    Raises:
        InputDataError: If the document does not describe a usable detector
    """
    kind = DetectorKind.AE if document.kind == "model" else DetectorKind(document.kind)
    try:
        params = decode_params(document)
        normalizer = None
        if document.normalizer is not None:
            normalizer = NormalizerStats(
                mean=np.asarray(document.normalizer.mean),
                std=np.asarray(document.normalizer.std),
            )
            if normalizer.n_features != params.input_dim:
                raise InputDataError(
                    "Normalizer does not match the model input dimension",
                    details={
                        "normalizer": normalizer.n_features,
                        "input_dim": params.input_dim,
                    },
                )
        centroid = None
        if document.centroid is not None:
            centroid = CentroidModel(centroid=np.asarray(document.centroid))
        return Detector(
            kind=kind,
            params=params,
            centroid=centroid,
            threshold=document.threshold,
            normalizer=normalizer,
        )
    except InputDataError:
        raise
    except SimulationError as exc:
        raise InputDataError(
            f"Model file does not describe a valid detector: {exc.message}",
            details=exc.details,
        ) from exc


def dumps_document(document: ModelDocument) -> str:
    """Serialize a document as indented JSON."""
    return document.model_dump_json(indent=2) + "\n"


def loads_document(text: Union[str, bytes]) -> ModelDocument:
    """
    Parse a document.

    Raises:
        InputDataError: If the text is not a valid model document
    """
    try:
        return ModelDocument.model_validate_json(text)
    except ValidationError as exc:
        raise InputDataError(
            "Invalid model file",
            details={"errors": exc.errors(include_url=False, include_context=False)},
        ) from exc
