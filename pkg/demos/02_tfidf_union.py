"""Weighted TF-IDF feature union: fit, inspect, transform, persist.

Run: python demos/02_tfidf_union.py
"""

import tempfile

import numpy as np

from stancekit import (
    AnalyzerSpec,
    UnionSpec,
    default_union,
    fit_block,
    fit_union,
    transform_union,
)
from stancekit.serialize import load_union, save_union

corpus = [
    "اللقاح فعال وآمن",
    "اللقاح خطير جدا",
    "التحول الرقمي يخدم الناس",
    "لا أثق في اللقاح",
]

# ---------------------------------------------------------------------------
# A single block: vocabulary in lexicographic order, smooth IDF
# ln((1+N)/(1+df)) + 1, so a term in every document gets exactly 1.0.
block = fit_block(corpus, AnalyzerSpec("word", 1, 1))
print(f"word-unigram vocabulary: {len(block.vocabulary)} features")
for feature, j in list(block.vocabulary.items())[:5]:
    print(f"  {feature!r:>12} idf={block.idf[j]:.4f}")

# ---------------------------------------------------------------------------
# The tuned three-block union: (word, char, char_wb) weighted
# (0.85, 0.85, 0.65). Each document becomes one sparse vector; every block
# slice is L2-normalized before weighting, so slice norms equal the weights.
union = fit_union(corpus, default_union(1, 3))
print(f"\nunion total dimension: {union.total_dim}")
print(f"block offsets: {union.offsets}")

vec = transform_union(union, corpus[0])
dense = vec.to_dense()
for (b, weight), start in zip(union.blocks, union.offsets):
    piece = dense[start:start + b.dim]
    print(f"  {b.analyzer.kind:>8} weight={weight}  slice L2 norm={np.linalg.norm(piece):.4f}")

# With ngram_min=1 the char blocks still share the padding-space 1-gram,
# so "unseen" Latin text is not quite out-of-vocabulary here:
print("\nunseen text under the tuned union ->", transform_union(union, "xyzzy"))

# ---------------------------------------------------------------------------
# Custom unions are just (analyzer, weight) pairs; weights live in (0, 1].
custom = UnionSpec((
    (AnalyzerSpec("word", 1, 2), 1.0),
    (AnalyzerSpec("char_wb", 2, 5), 0.5),
))
fitted = fit_union(corpus, custom)
print(f"custom union dims: {[b.dim for b, _ in fitted.blocks]}")

# Fully out-of-vocabulary text maps to the zero vector rather than failing.
print("unseen text under the custom union ->", transform_union(fitted, "xyzzy"))

# ---------------------------------------------------------------------------
# Fitted unions persist to a versioned binary container and reload
# bit-identically (see docs/formats.md for the byte layout).
with tempfile.NamedTemporaryFile(suffix=".bin") as tmp:
    save_union(fitted, tmp.name)
    reloaded = load_union(tmp.name)
    same = transform_union(reloaded, corpus[1]) == transform_union(fitted, corpus[1])
    print(f"round-trip transform identical: {same}")
