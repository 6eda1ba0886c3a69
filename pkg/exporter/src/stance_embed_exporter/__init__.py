"""Offline sentence-embedding exporter for the stancekit JSONL format."""

from .exporter import (
    DEFAULT_MODEL,
    ExporterError,
    ExportJob,
    ModelLoadError,
    PrepFlags,
    SchemaError,
    export_embeddings,
    load_encoder,
)
from .preprocessing import normalize_arabic, preprocess, replace_emojis

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MODEL",
    "ExporterError",
    "ExportJob",
    "ModelLoadError",
    "PrepFlags",
    "SchemaError",
    "export_embeddings",
    "load_encoder",
    "normalize_arabic",
    "preprocess",
    "replace_emojis",
]
