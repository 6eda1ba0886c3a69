"""Encode a stance dataset CSV into the JSONL embedding interchange format.

The whole input is validated before any encoding starts, output goes
through a temp file that is renamed only on success (a failure never
leaves a partial file), and floats serialize at full repr precision so the
file is bit-stable across runs.
"""

import csv
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .preprocessing import preprocess

DEFAULT_MODEL = "xlm-r-bert-base-nli-stsb-mean-tokens"

STANCES = ("favor", "against", "none")
REQUIRED_COLUMNS = ("id", "target", "text", "stance")


class ExporterError(Exception):
    pass


class SchemaError(ExporterError):
    """The input CSV does not satisfy the dataset schema."""


class ModelLoadError(ExporterError):
    """The sentence-embedding model could not be loaded."""


@dataclass(frozen=True)
class PrepFlags:
    na: bool = False
    re: bool = False


@dataclass
class ExportJob:
    input: str
    output: str
    model_name: str = DEFAULT_MODEL
    batch_size: int = 32
    apply_preprocessing: PrepFlags = field(default_factory=PrepFlags)

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def read_rows(path) -> list[tuple[str, str]]:
    """(id, text) pairs after full schema validation; nothing is encoded
    until the whole file has been checked."""
    try:
        with open(path, encoding="utf-8", errors="strict", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for col in REQUIRED_COLUMNS:
                if col not in header:
                    raise SchemaError(f"column {col!r} missing (header: {header})")
            rows = []
            seen: set[str] = set()
            for row_no, row in enumerate(reader, start=2):
                rid = row["id"]
                if rid in seen:
                    raise SchemaError(f"row {row_no}: duplicate id {rid!r}")
                seen.add(rid)
                if row["stance"].strip().lower() not in STANCES:
                    raise SchemaError(f"row {row_no}: stance {row['stance']!r} invalid")
                rows.append((rid, row["text"]))
    except UnicodeDecodeError as err:
        raise SchemaError(f"{path}: not valid UTF-8 ({err})") from err
    return rows


def load_encoder(model_name: str):
    """Batch encoder backed by sentence-transformers."""
    try:
        from sentence_transformers import SentenceTransformer

        model = SentenceTransformer(model_name)
    except Exception as err:
        raise ModelLoadError(f"cannot load {model_name!r}: {err}") from err

    def encode(texts: list[str]) -> np.ndarray:
        return np.asarray(
            model.encode(texts, batch_size=len(texts), show_progress_bar=False),
            dtype=np.float64,
        )

    return encode


def export_embeddings(job: ExportJob, encoder=None) -> int:
    """Write one JSONL line per input record; returns the record count.

    ``encoder`` maps a list of texts to an (n, dim) array; by default the
    job's sentence-transformer model is loaded. Empty texts are encoded,
    not skipped.
    """
    rows = read_rows(job.input)
    if encoder is None:
        encoder = load_encoder(job.model_name)

    flags = job.apply_preprocessing
    tmp_path = job.output + ".partial"
    dim = None
    try:
        with open(tmp_path, "w", encoding="utf-8") as out:
            for start in range(0, len(rows), job.batch_size):
                batch = rows[start:start + job.batch_size]
                texts = [preprocess(t, na=flags.na, re=flags.re) for _, t in batch]
                vectors = np.atleast_2d(encoder(texts))
                if vectors.shape[0] != len(batch):
                    raise ExporterError(
                        f"encoder returned {vectors.shape[0]} rows for {len(batch)} texts"
                    )
                if dim is None:
                    dim = vectors.shape[1]
                elif vectors.shape[1] != dim:
                    raise ExporterError(
                        f"encoder dimension changed: {vectors.shape[1]} != {dim}"
                    )
                for (rid, _), vec in zip(batch, vectors):
                    out.write(json.dumps({"id": rid, "v": [float(x) for x in vec]}))
                    out.write("\n")
        os.replace(tmp_path, job.output)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    return len(rows)
