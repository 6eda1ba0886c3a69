"""The two classifiers and the stance metrics.

Run: python demos/03_training_and_metrics.py
"""

import numpy as np

from stancekit import (
    SparseVector,
    TrainConfig,
    evaluate,
    predict,
    predict_proba,
    train_logreg,
    train_lsvc,
)
from stancekit.evaluation import render_report

# ---------------------------------------------------------------------------
# Toy 2-D data: three stance classes in well-separated blobs.
rng = np.random.default_rng(0)
centers = {"Favor": (4.0, 0.0), "Against": (-4.0, 0.0), "None": (0.0, 4.0)}
vectors, labels = [], []
for stance, (cx, cy) in centers.items():
    for _ in range(15):
        vectors.append(SparseVector.from_dense([cx + rng.normal(), cy + rng.normal()]))
        labels.append(stance)

# ---------------------------------------------------------------------------
# One-vs-rest squared-hinge SVM (the TF-IDF path uses C=4). Classes are
# ordered lexicographically; ties at prediction go to the lowest index.
svm = train_lsvc(vectors, labels, TrainConfig(c=4.0))
print("svm classes:", svm.classes)
svm_preds = [predict(svm, v) for v in vectors]
print("svm training accuracy:", sum(p == t for p, t in zip(svm_preds, labels)) / len(labels))

# ---------------------------------------------------------------------------
# Multinomial logistic regression (the embedding path). Softmax rows are
# proper probabilities.
logreg = train_logreg(vectors, labels, TrainConfig(c=1.0, max_iter=1000))
probs = predict_proba(logreg, vectors[0])
print("\nlogreg P(class | first point):")
for cls, p in zip(logreg.classes, probs):
    print(f"  {cls:>8}: {p:.4f}")
print("row sum:", probs.sum())

# ---------------------------------------------------------------------------
# Metrics: per-class precision/recall/F1 (0/0 counts as 0), macro-F1 over
# all classes, and the stance-task headline: mean F1 of Favor and Against.
report = evaluate(labels, svm_preds, sorted(set(labels)))
print("\n" + render_report(report))
