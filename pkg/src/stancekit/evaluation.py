"""Confusion matrices and the F1 variants a stance task needs.

``metrics`` reports per-class precision/recall/F1 (0/0 defined as 0), the
unweighted macro-F1 over all classes, and the stance-task headline score:
the mean F1 of the Favor and Against classes only. All functions are pure.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, UnknownLabel

# Case-insensitive label pairs probed, in order, when the favor/against
# classes are not named explicitly.
_FAVOR_AGAINST_ALIASES = (("favor", "against"), ("f", "a"))


@dataclass
class ConfusionMatrix:
    """Rows are true labels, columns predicted, in ``classes`` order."""

    classes: list[str]
    counts: np.ndarray

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        k = len(self.classes)
        if self.counts.shape != (k, k):
            raise ValueError(f"counts must be {k}x{k}")
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass
class MetricsReport:
    classes: list[str]
    per_class: dict[str, ClassMetrics]
    macro_f1_all: float
    f1_favor_against: float
    accuracy: float


def confusion(y_true: list[str], y_pred: list[str], classes: list[str]) -> ConfusionMatrix:
    """Count (true, predicted) label pairs into a matrix."""
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true vs {len(y_pred)} predicted")
    if not y_true:
        raise LengthMismatch("need at least one pair")
    index = {c: i for i, c in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        if t not in index:
            raise UnknownLabel(f"true label {t!r} not in classes")
        if p not in index:
            raise UnknownLabel(f"predicted label {p!r} not in classes")
        counts[index[t], index[p]] += 1
    return ConfusionMatrix(list(classes), counts)


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def _pick_favor_against(classes: list[str]) -> tuple[str, ...] | None:
    lowered = {c.lower(): c for c in classes}
    for fav, agn in _FAVOR_AGAINST_ALIASES:
        if fav in lowered and agn in lowered:
            return (lowered[fav], lowered[agn])
    return None


def metrics(cm: ConfusionMatrix, favor_against: tuple[str, str] | None = None) -> MetricsReport:
    """Per-class and averaged F1 figures for a confusion matrix.

    ``favor_against`` names the two classes averaged into the headline
    stance score. When omitted, the pair is detected case-insensitively
    ("Favor"/"Against", then "F"/"A"); if no pair matches, the headline
    score falls back to macro-F1 over all classes.
    """
    counts = cm.counts
    total = int(counts.sum())
    per_class: dict[str, ClassMetrics] = {}
    for i, cls in enumerate(cm.classes):
        tp = int(counts[i, i])
        fp = int(counts[:, i].sum()) - tp
        fn = int(counts[i, :].sum()) - tp
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
        f1 = _safe_div(2.0 * precision * recall, precision + recall)
        per_class[cls] = ClassMetrics(precision, recall, f1)
    macro = float(np.mean([m.f1 for m in per_class.values()]))

    if favor_against is None:
        favor_against = _pick_favor_against(cm.classes)
    if favor_against is not None:
        for cls in favor_against:
            if cls not in per_class:
                raise UnknownLabel(f"favor/against class {cls!r} not in matrix")
        fa = float(np.mean([per_class[c].f1 for c in favor_against]))
    else:
        fa = macro

    accuracy = _safe_div(float(np.trace(counts)), total)
    return MetricsReport(list(cm.classes), per_class, macro, fa, accuracy)


def evaluate(y_true: list[str], y_pred: list[str], classes: list[str],
             favor_against: tuple[str, str] | None = None) -> MetricsReport:
    """Convenience wrapper: confusion + metrics in one call."""
    return metrics(confusion(y_true, y_pred, classes), favor_against)


def report_to_dict(report: MetricsReport) -> dict:
    """JSON-ready view of a report."""
    return {
        "classes": list(report.classes),
        "per_class": {
            cls: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
            for cls, m in report.per_class.items()
        },
        "macro_f1_all": report.macro_f1_all,
        "f1_favor_against": report.f1_favor_against,
        "accuracy": report.accuracy,
    }


def report_to_json(report: MetricsReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True)


def render_report(report: MetricsReport) -> str:
    """Pretty text table for terminals."""
    width = max(len(c) for c in report.classes + ["class"])
    lines = [f"{'class':<{width}}  precision  recall  f1"]
    for cls in report.classes:
        m = report.per_class[cls]
        lines.append(f"{cls:<{width}}  {m.precision:9.4f}  {m.recall:6.4f}  {m.f1:6.4f}")
    lines.append("")
    lines.append(f"accuracy:          {report.accuracy:.4f}")
    lines.append(f"macro F1 (all):    {report.macro_f1_all:.4f}")
    lines.append(f"F1 (favor/against): {report.f1_favor_against:.4f}")
    return "\n".join(lines)
