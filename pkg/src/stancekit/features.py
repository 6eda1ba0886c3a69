"""Weighted feature-union TF-IDF vectorizer.

Each block runs one analyzer over the corpus, builds a vocabulary in
lexicographic feature order, and stores smooth IDF weights
``ln((1+N)/(1+df)) + 1``. Transforming a document multiplies raw term
counts by IDF and L2-normalizes per block; the union concatenates the
blocks' outputs, each scaled by its weight.

Fitting is single-writer; fitted objects are immutable and safe for
concurrent read-only transforms.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpus, EmptyVocabulary
from .preproc import AnalyzerSpec, analyze


class SparseVector:
    """Index/value pairs over a fixed-dimension feature space.

    Indices are strictly increasing; values are finite and non-zero.
    """

    __slots__ = ("dim", "indices", "values")

    def __init__(self, dim: int, indices, values):
        indices = np.asarray(indices, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if dim < 0:
            raise ValueError("dim must be non-negative")
        if indices.shape != values.shape or indices.ndim != 1:
            raise ValueError("indices and values must be 1-d and the same length")
        if indices.size:
            if indices[0] < 0 or indices[-1] >= dim:
                raise ValueError("indices out of range")
            if np.any(np.diff(indices) <= 0):
                raise ValueError("indices must be strictly increasing")
            if not np.all(np.isfinite(values)) or np.any(values == 0.0):
                raise ValueError("values must be finite and non-zero")
        self.dim = int(dim)
        self.indices = indices
        self.values = values

    @classmethod
    def from_dense(cls, arr) -> "SparseVector":
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("expected a 1-d array")
        nz = np.nonzero(arr)[0]
        return cls(arr.size, nz, arr[nz])

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.indices] = self.values
        return out

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.values ** 2)))

    def __eq__(self, other):
        return (
            isinstance(other, SparseVector)
            and self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        pairs = ", ".join(f"{i}: {v:.6g}" for i, v in zip(self.indices, self.values))
        return f"SparseVector(dim={self.dim}, {{{pairs}}})"


@dataclass
class TfidfBlock:
    """One fitted analyzer block: vocabulary plus smooth-IDF weights."""

    analyzer: AnalyzerSpec
    vocabulary: dict[str, int]
    idf: np.ndarray

    def __post_init__(self):
        self.idf = np.asarray(self.idf, dtype=np.float64)
        if sorted(self.vocabulary.values()) != list(range(len(self.vocabulary))):
            raise ValueError("vocabulary indices must be exactly 0..|vocab|-1")
        if self.idf.shape != (len(self.vocabulary),):
            raise ValueError("idf length must equal vocabulary size")
        if np.any(self.idf < 1.0):
            raise ValueError("smooth IDF is bounded below by 1")

    @property
    def dim(self) -> int:
        return len(self.vocabulary)


@dataclass(frozen=True)
class UnionSpec:
    """Ordered analyzer blocks with their concatenation weights."""

    blocks: tuple[tuple[AnalyzerSpec, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((a, float(w)) for a, w in self.blocks))
        if not self.blocks:
            raise ValueError("need at least one block")
        for _, w in self.blocks:
            if not (0.0 < w <= 1.0):
                raise ValueError(f"weights must lie in (0, 1], got {w}")


@dataclass
class FittedUnion:
    """Trained weighted union: fitted blocks, their weights and offsets."""

    blocks: list[tuple[TfidfBlock, float]]
    offsets: list[int] = field(default_factory=list)
    total_dim: int = 0

    def __post_init__(self):
        offsets, pos = [], 0
        for block, _ in self.blocks:
            offsets.append(pos)
            pos += block.dim
        self.offsets = offsets
        self.total_dim = pos


def fit_block(corpus: list[str], spec: AnalyzerSpec) -> TfidfBlock:
    """Build a block's vocabulary and IDF table from a corpus.

    Vocabulary indices follow lexicographic feature order;
    ``idf[j] = ln((1+N)/(1+df_j)) + 1`` with N the corpus size and df_j the
    number of documents containing feature j.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("cannot fit on an empty corpus")
    df: Counter[str] = Counter()
    for doc in corpus:
        df.update(set(analyze(doc, spec)))
    if not df:
        raise EmptyVocabulary("no document produced any feature")
    features = sorted(df)
    vocabulary = {f: j for j, f in enumerate(features)}
    n = len(corpus)
    counts = np.array([df[f] for f in features], dtype=np.float64)
    idf = np.log((1.0 + n) / (1.0 + counts)) + 1.0
    return TfidfBlock(spec, vocabulary, idf)


def transform_block(block: TfidfBlock, doc: str) -> SparseVector:
    """Raw term counts times IDF, L2-normalized (zero vectors stay zero).

    Features outside the block's vocabulary are ignored.
    """
    counts = Counter(analyze(doc, block.analyzer))
    pairs = sorted(
        (block.vocabulary[f], c) for f, c in counts.items() if f in block.vocabulary
    )
    if not pairs:
        return SparseVector(block.dim, [], [])
    indices = np.array([i for i, _ in pairs], dtype=np.int64)
    values = np.array([c for _, c in pairs], dtype=np.float64) * block.idf[indices]
    norm = np.sqrt(np.sum(values ** 2))
    if norm > 0.0:
        values = values / norm
    return SparseVector(block.dim, indices, values)


def fit_union(corpus: list[str], spec: UnionSpec) -> FittedUnion:
    """Fit every block independently on the same corpus."""
    fitted = []
    for pos, (aspec, weight) in enumerate(spec.blocks):
        try:
            fitted.append((fit_block(corpus, aspec), weight))
        except (EmptyCorpus, EmptyVocabulary) as err:
            raise type(err)(f"block {pos} ({aspec.kind}): {err}") from err
    return FittedUnion(fitted)


def transform_union(union: FittedUnion, doc: str) -> SparseVector:
    """Concatenate the per-block transforms, each scaled by its weight."""
    all_indices, all_values = [], []
    for (block, weight), offset in zip(union.blocks, union.offsets):
        vec = transform_block(block, doc)
        if vec.indices.size:
            all_indices.append(vec.indices + offset)
            all_values.append(vec.values * weight)
    if not all_indices:
        return SparseVector(union.total_dim, [], [])
    return SparseVector(
        union.total_dim, np.concatenate(all_indices), np.concatenate(all_values)
    )


def transform_corpus(union: FittedUnion, docs: list[str]) -> list[SparseVector]:
    return [transform_union(union, doc) for doc in docs]
