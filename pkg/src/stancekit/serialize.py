"""Versioned binary containers for fitted artifacts.

Layout (documented bit-exactly in docs/formats.md):

    bytes 0-3    magic ``STKB``
    bytes 4-7    container version, uint32 little-endian (currently 1)
    bytes 8-15   header length H, uint64 little-endian
    bytes 16-..  JSON header, UTF-8, sorted keys, no whitespace
    remainder    payload: raw little-endian float64 arrays, laid out as
                 the header describes

Headers carry the structure (vocabularies, class lists, shapes); payloads
carry nothing but numbers. Writing the same artifact twice produces
byte-identical files.
"""

import json

import numpy as np

from .errors import FormatError
from .features import FittedUnion, TfidfBlock
from .models import LinearModel
from .preproc import AnalyzerSpec

MAGIC = b"STKB"
VERSION = 1

_F8 = np.dtype("<f8")


def _dump_header(header: dict) -> bytes:
    return json.dumps(header, ensure_ascii=False, sort_keys=True,
                      separators=(",", ":")).encode("utf-8")


def write_container(path, header: dict, payload: bytes) -> None:
    blob = _dump_header(header)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(np.uint32(VERSION).tobytes())
        fh.write(np.uint64(len(blob)).tobytes())
        fh.write(blob)
        fh.write(payload)


def read_container(path) -> tuple[dict, bytes]:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:4] != MAGIC:
        raise FormatError(f"{path}: not a stancekit container (bad magic)")
    version = int(np.frombuffer(raw[4:8], dtype="<u4")[0])
    if version != VERSION:
        raise FormatError(f"{path}: unsupported container version {version}")
    hlen = int(np.frombuffer(raw[8:16], dtype="<u8")[0])
    try:
        header = json.loads(raw[16:16 + hlen].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise FormatError(f"{path}: corrupt header ({err})") from err
    return header, raw[16 + hlen:]


def _analyzer_to_dict(spec: AnalyzerSpec) -> dict:
    return {
        "kind": spec.kind,
        "ngram_min": spec.ngram_min,
        "ngram_max": spec.ngram_max,
        "lowercase": spec.lowercase,
    }


def _analyzer_from_dict(d: dict) -> AnalyzerSpec:
    return AnalyzerSpec(d["kind"], d["ngram_min"], d["ngram_max"], d["lowercase"])


def union_parts(union: FittedUnion) -> tuple[dict, bytes]:
    """Header + payload for a fitted union. Payload is the blocks' IDF
    arrays, concatenated in block order."""
    blocks = []
    chunks = []
    for block, weight in union.blocks:
        features = sorted(block.vocabulary, key=block.vocabulary.get)
        blocks.append({
            "analyzer": _analyzer_to_dict(block.analyzer),
            "weight": weight,
            "vocabulary": features,
        })
        chunks.append(np.ascontiguousarray(block.idf, dtype=_F8).tobytes())
    header = {"format": "tfidf_union", "blocks": blocks}
    return header, b"".join(chunks)


def union_from_parts(header: dict, payload: bytes) -> FittedUnion:
    if header.get("format") != "tfidf_union":
        raise FormatError(f"expected tfidf_union header, got {header.get('format')!r}")
    blocks = []
    pos = 0
    for entry in header["blocks"]:
        features = entry["vocabulary"]
        size = len(features)
        idf = np.frombuffer(payload, dtype=_F8, count=size, offset=pos).copy()
        pos += size * 8
        vocabulary = {f: j for j, f in enumerate(features)}
        blocks.append((
            TfidfBlock(_analyzer_from_dict(entry["analyzer"]), vocabulary, idf),
            float(entry["weight"]),
        ))
    return FittedUnion(blocks)


def model_parts(model: LinearModel) -> tuple[dict, bytes]:
    """Header + payload for a linear model. Payload is the weight matrix
    (row-major) followed by the bias vector."""
    header = {
        "format": "linear_model",
        "kind": model.kind,
        "classes": list(model.classes),
        "dim": model.dim,
    }
    payload = (
        np.ascontiguousarray(model.weights, dtype=_F8).tobytes()
        + np.ascontiguousarray(model.biases, dtype=_F8).tobytes()
    )
    return header, payload


def model_from_parts(header: dict, payload: bytes) -> LinearModel:
    if header.get("format") != "linear_model":
        raise FormatError(f"expected linear_model header, got {header.get('format')!r}")
    classes = list(header["classes"])
    dim = int(header["dim"])
    k = len(classes)
    weights = np.frombuffer(payload, dtype=_F8, count=k * dim).copy().reshape(k, dim)
    biases = np.frombuffer(payload, dtype=_F8, count=k, offset=k * dim * 8).copy()
    return LinearModel(classes, weights, biases, header["kind"], dim)


def save_union(union: FittedUnion, path) -> None:
    write_container(path, *union_parts(union))


def load_union(path) -> FittedUnion:
    return union_from_parts(*read_container(path))


def save_union_bundle(sections: list[tuple[str | None, FittedUnion]], path) -> None:
    """Several named unions in one container (per-target --save-features)."""
    entries, chunks = [], []
    for target, union in sections:
        header, payload = union_parts(union)
        entries.append({"target": target, "union": header, "union_bytes": len(payload)})
        chunks.append(payload)
    write_container(path, {"format": "union_bundle", "sections": entries}, b"".join(chunks))


def load_union_bundle(path) -> list[tuple[str | None, FittedUnion]]:
    header, payload = read_container(path)
    if header.get("format") != "union_bundle":
        raise FormatError(f"expected union_bundle header, got {header.get('format')!r}")
    out = []
    pos = 0
    for entry in header["sections"]:
        size = entry["union_bytes"]
        out.append((entry["target"], union_from_parts(entry["union"], payload[pos:pos + size])))
        pos += size
    return out


def save_model(model: LinearModel, path) -> None:
    write_container(path, *model_parts(model))


def load_model(path) -> LinearModel:
    return model_from_parts(*read_container(path))
