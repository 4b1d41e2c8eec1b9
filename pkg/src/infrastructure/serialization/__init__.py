"""Serialization of persisted models."""

from .model_codec import (
    FORMAT_VERSION,
    ModelDocument,
    decode_detector,
    decode_params,
    dumps_document,
    encode_detector,
    encode_model,
    loads_document,
)

__all__ = [
    "FORMAT_VERSION",
    "ModelDocument",
    "decode_detector",
    "decode_params",
    "dumps_document",
    "encode_detector",
    "encode_model",
    "loads_document",
]
