"""Fit, apply, and persist end-to-end pipelines.

A trained pipeline bundles preprocessing flags with one section per model:
a single section for pooled scope, one per target otherwise. TF-IDF
sections carry their fitted union; embedding sections carry only the
classifier and look vectors up by record id.
"""

from dataclasses import dataclass

import numpy as np

from . import serialize
from .config import ExperimentConfig, PrepFlags
from .data import Dataset, EmbeddingTable, join_embeddings
from .errors import ExperimentError, FormatError
from .features import FittedUnion, SparseVector, fit_union, transform_union
from .models import LinearModel, decision_scores, predict_batch, train_logreg, train_lsvc
from .preproc import preprocess


@dataclass
class Section:
    """One trained model, scoped to a target (or None when pooled)."""

    target: str | None
    union: FittedUnion | None
    model: LinearModel


@dataclass
class TrainedPipeline:
    pipeline: str  # "tfidf_lsvc" | "embed_logreg"
    preprocessing: PrepFlags
    scope: str
    sections: list[Section]

    def section_for(self, target: str) -> Section:
        if self.scope == "pooled":
            return self.sections[0]
        for section in self.sections:
            if section.target == target:
                return section
        raise ExperimentError(f"no model for target {target!r}")


def _dense_rows_to_vectors(matrix: np.ndarray) -> list[SparseVector]:
    return [SparseVector.from_dense(row) for row in matrix]


def _fit_section(cfg: ExperimentConfig, target: str | None, ds: Dataset,
                 embeddings: EmbeddingTable | None) -> Section:
    flags = cfg.preprocessing
    labels = ds.labels()
    try:
        if cfg.pipeline == "tfidf_lsvc":
            texts = [preprocess(t, na=flags.na, re=flags.re) for t in ds.texts()]
            union = fit_union(texts, cfg.union)
            vectors = [transform_union(union, t) for t in texts]
            model = train_lsvc(vectors, labels, cfg.train)
            return Section(target, union, model)
        matrix, labels = join_embeddings(ds, embeddings)
        model = train_logreg(_dense_rows_to_vectors(matrix), labels, cfg.train)
        return Section(target, None, model)
    except Exception as err:
        where = "pooled" if target is None else f"target {target!r}"
        raise ExperimentError(
            f"{cfg.pipeline} fit failed for {where}: {err}"
        ) from err


def fit_pipeline(cfg: ExperimentConfig, train_ds: Dataset,
                 embeddings: EmbeddingTable | None = None) -> TrainedPipeline:
    """Fit preprocessing + features + model per the config's scope."""
    if len(train_ds) == 0:
        raise ExperimentError("training dataset is empty")
    if cfg.pipeline == "embed_logreg" and embeddings is None:
        raise ExperimentError("embed_logreg needs an embedding table")
    if cfg.scope == "pooled":
        sections = [_fit_section(cfg, None, train_ds, embeddings)]
    else:
        sections = [
            _fit_section(cfg, target, train_ds.subset(target), embeddings)
            for target in sorted(train_ds.targets())
        ]
    return TrainedPipeline(cfg.pipeline, cfg.preprocessing, cfg.scope, sections)


def _vector_for(tp: TrainedPipeline, section: Section, record,
                embeddings: EmbeddingTable | None) -> SparseVector:
    if tp.pipeline == "tfidf_lsvc":
        text = preprocess(record.text, na=tp.preprocessing.na, re=tp.preprocessing.re)
        return transform_union(section.union, text)
    if embeddings is None or record.id not in embeddings:
        raise ExperimentError(f"no embedding for id {record.id!r}")
    return SparseVector.from_dense(embeddings[record.id])


def predict_dataset(tp: TrainedPipeline, ds: Dataset,
                    embeddings: EmbeddingTable | None = None) -> list[str]:
    """Predicted stances aligned with the dataset's record order."""
    by_section: dict[int, list[int]] = {}
    section_of: dict[int, Section] = {}
    for i, rec in enumerate(ds):
        section = tp.section_for(rec.target)
        key = id(section)
        section_of[key] = section
        by_section.setdefault(key, []).append(i)

    out: list[str | None] = [None] * len(ds)
    records = ds.records
    for key, rows in by_section.items():
        section = section_of[key]
        vectors = [_vector_for(tp, section, records[i], embeddings) for i in rows]
        for i, label in zip(rows, predict_batch(section.model, vectors)):
            out[i] = label
    return out


def decision_rows(tp: TrainedPipeline, ds: Dataset,
                  embeddings: EmbeddingTable | None = None):
    """Per-record (predicted label, class list, score vector) triples."""
    rows = []
    for rec in ds:
        section = tp.section_for(rec.target)
        vec = _vector_for(tp, section, rec, embeddings)
        scores = decision_scores(section.model, vec)
        label = section.model.classes[int(np.argmax(scores))]
        rows.append((label, list(section.model.classes), scores))
    return rows


def pipeline_parts(tp: TrainedPipeline) -> tuple[dict, bytes]:
    sections = []
    chunks = []
    for section in tp.sections:
        entry: dict = {"target": section.target}
        if section.union is not None:
            uh, up = serialize.union_parts(section.union)
            entry["union"] = uh
            entry["union_bytes"] = len(up)
            chunks.append(up)
        else:
            entry["union"] = None
            entry["union_bytes"] = 0
        mh, mp = serialize.model_parts(section.model)
        entry["model"] = mh
        entry["model_bytes"] = len(mp)
        chunks.append(mp)
        sections.append(entry)
    header = {
        "format": "pipeline",
        "pipeline": tp.pipeline,
        "preprocessing": {"na": tp.preprocessing.na, "re": tp.preprocessing.re},
        "scope": tp.scope,
        "sections": sections,
    }
    return header, b"".join(chunks)


def pipeline_from_parts(header: dict, payload: bytes) -> TrainedPipeline:
    if header.get("format") != "pipeline":
        raise FormatError(f"expected pipeline header, got {header.get('format')!r}")
    sections = []
    pos = 0
    for entry in header["sections"]:
        union = None
        if entry["union"] is not None:
            union = serialize.union_from_parts(
                entry["union"], payload[pos:pos + entry["union_bytes"]]
            )
        pos += entry["union_bytes"]
        model = serialize.model_from_parts(
            entry["model"], payload[pos:pos + entry["model_bytes"]]
        )
        pos += entry["model_bytes"]
        sections.append(Section(entry["target"], union, model))
    prep = header["preprocessing"]
    return TrainedPipeline(
        header["pipeline"], PrepFlags(na=prep["na"], re=prep["re"]),
        header["scope"], sections,
    )


def save_pipeline(tp: TrainedPipeline, path) -> None:
    serialize.write_container(path, *pipeline_parts(tp))


def load_pipeline(path) -> TrainedPipeline:
    return pipeline_from_parts(*serialize.read_container(path))
