"""Config-driven runs and sweeps on the bundled 60-record sample.

Run: python demos/04_experiment_harness.py
"""

import os

from stancekit import (
    ExperimentConfig,
    PrepFlags,
    TrainConfig,
    default_union,
    emit_table,
    load_dataset,
    load_embeddings,
    run_experiment,
    run_ngram_sweep,
    run_weight_sweep,
    stratified_split,
)

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "tests", "fixtures")

dataset = load_dataset(os.path.join(FIXTURES, "stance60.csv"))
train, dev = stratified_split(dataset, dev_fraction=0.2, seed=42)
print(f"{len(train)} train / {len(dev)} dev records over {len(dataset.targets())} targets")

# ---------------------------------------------------------------------------
# The TF-IDF + SVM pipeline, one model per target; overall F1 is the
# unweighted mean of the per-target scores.
cfg = ExperimentConfig(
    pipeline="tfidf_lsvc",
    union=default_union(1, 2),          # (word, char, char_wb) x (0.85, 0.85, 0.65)
    train=TrainConfig(c=4.0),
    preprocessing=PrepFlags(na=True, re=True),
)
result = run_experiment(cfg, train, dev)
print("\ntfidf_lsvc per-target f1_favor_against:")
for target, report in result.per_target.items():
    print(f"  {target:>24}: {report.f1_favor_against:.4f}")
print(f"overall: {result.overall_f1:.4f}")

# ---------------------------------------------------------------------------
# The embedding + logistic-regression pipeline consumes precomputed
# vectors from the JSONL interchange format (see the exporter package).
embeddings = load_embeddings(os.path.join(FIXTURES, "embeddings8.jsonl"))
embed_cfg = ExperimentConfig(pipeline="embed_logreg", train=TrainConfig(c=1.0))
embed_result = run_experiment(embed_cfg, train, dev, embeddings)
print(f"\nembed_logreg overall: {embed_result.overall_f1:.4f}")

# ---------------------------------------------------------------------------
# Sweeps. Rows come back sorted by overall F1 ascending; failures are
# recorded per row instead of aborting the sweep.
sweep = run_ngram_sweep(cfg, [(1, n) for n in range(1, 5)], train, dev, jobs=2)
print("\nn-gram sweep:")
print(emit_table(sweep, "text"))

weights = run_weight_sweep(cfg, [[0.5, 1.0], [0.85], [0.65, 1.0]], train, dev)
print("\nweight sweep (best last):")
print(emit_table(weights, "text"))
