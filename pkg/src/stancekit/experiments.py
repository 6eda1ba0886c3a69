"""Config-driven experiment runs and hyperparameter sweeps.

``run_experiment`` fits on the train split and scores the dev split,
reporting per-target metrics and both F1 averages. Sweeps evaluate many
configs (optionally in parallel), record per-row failures without
aborting, and render deterministic tables sorted by overall F1 ascending.
"""

import csv
import dataclasses
import io
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import ExperimentConfig
from .data import Dataset, EmbeddingTable
from .errors import ExperimentError
from .evaluation import MetricsReport, evaluate, report_to_dict
from .features import UnionSpec
from .pipeline import fit_pipeline, predict_dataset


@dataclass
class ExperimentResult:
    scope: str
    metric: str
    per_target: dict[str, MetricsReport]
    pooled: MetricsReport | None
    overall: dict[str, float]  # both F1 variants under the scope rule

    @property
    def overall_f1(self) -> float:
        return self.overall[self.metric]


def _report_metric(report: MetricsReport, metric: str) -> float:
    return report.macro_f1_all if metric == "macro_f1_all" else report.f1_favor_against


def evaluate_pipeline(tp, dev_ds: Dataset, embeddings: EmbeddingTable | None = None,
                      metric: str = "f1_favor_against") -> ExperimentResult:
    """Score a fitted pipeline on a labeled dataset.

    Per-target scope averages the per-target F1s without weighting; pooled
    scope scores one model on the whole dev set and still reports a
    per-target breakdown of its predictions.
    """
    if len(dev_ds) == 0:
        raise ExperimentError("dev dataset is empty")
    predictions = predict_dataset(tp, dev_ds, embeddings)

    def classes_for(truth: list[str], section_classes: list[str]) -> list[str]:
        return sorted(set(truth) | set(section_classes))

    per_target: dict[str, MetricsReport] = {}
    for target in sorted(dev_ds.targets()):
        rows = [i for i, r in enumerate(dev_ds) if r.target == target]
        truth = [dev_ds.records[i].stance for i in rows]
        preds = [predictions[i] for i in rows]
        section = tp.section_for(target)
        per_target[target] = evaluate(truth, preds, classes_for(truth, section.model.classes))

    pooled = None
    if tp.scope == "pooled":
        truth = dev_ds.labels()
        all_classes = sorted(
            set(truth) | {c for s in tp.sections for c in s.model.classes}
        )
        pooled = evaluate(truth, predictions, all_classes)
        overall = {
            "macro_f1_all": pooled.macro_f1_all,
            "f1_favor_against": pooled.f1_favor_against,
        }
    else:
        overall = {
            "macro_f1_all": float(np.mean([r.macro_f1_all for r in per_target.values()])),
            "f1_favor_against": float(np.mean([r.f1_favor_against for r in per_target.values()])),
        }
    return ExperimentResult(tp.scope, metric, per_target, pooled, overall)


def run_experiment(cfg: ExperimentConfig, train_ds: Dataset, dev_ds: Dataset,
                   embeddings: EmbeddingTable | None = None) -> ExperimentResult:
    """Fit on train, evaluate on dev, per the config's scope."""
    tp = fit_pipeline(cfg, train_ds, embeddings)
    return evaluate_pipeline(tp, dev_ds, embeddings, cfg.metric)


@dataclass
class SweepRow:
    summary: str
    per_target: dict[str, float]
    overall: float


@dataclass
class SweepResult:
    rows: list[SweepRow]
    failures: list[dict]

    @property
    def best(self) -> SweepRow | None:
        if not self.rows:
            return None
        return max(self.rows, key=lambda r: (r.overall, r.summary))


def _weights_of(union: UnionSpec) -> tuple[float, ...]:
    return tuple(w for _, w in union.blocks)


def _summary(cfg: ExperimentConfig) -> str:
    ranges = ",".join(
        f"({a.ngram_min},{a.ngram_max})" for a, _ in cfg.union.blocks
    )
    weights = ",".join(str(w) for w in _weights_of(cfg.union))
    return f"ngram={ranges} weights=({weights}) C={cfg.train.c:g}"


def with_ngram_range(cfg: ExperimentConfig, lo: int, hi: int) -> ExperimentConfig:
    """Variant with every union block's range set to (lo, hi)."""
    union = UnionSpec(tuple(
        (dataclasses.replace(a, ngram_min=lo, ngram_max=hi), w)
        for a, w in cfg.union.blocks
    ))
    return dataclasses.replace(cfg, union=union)


def with_weights(cfg: ExperimentConfig, weights) -> ExperimentConfig:
    """Variant with the union's block weights replaced in order."""
    if len(weights) != len(cfg.union.blocks):
        raise ValueError("one weight per block required")
    union = UnionSpec(tuple(
        (a, float(w)) for (a, _), w in zip(cfg.union.blocks, weights)
    ))
    return dataclasses.replace(cfg, union=union)


def _run_variants(variants, train_ds, dev_ds, embeddings, jobs) -> SweepResult:
    def one(item):
        summary, cfg = item
        try:
            result = run_experiment(cfg, train_ds, dev_ds, embeddings)
            per_target = {
                t: _report_metric(r, cfg.metric) for t, r in result.per_target.items()
            }
            return SweepRow(summary, per_target, result.overall_f1), None
        except Exception as err:  # record, keep sweeping
            return None, {"summary": summary, "error": str(err)}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(one, variants))
    else:
        outcomes = [one(v) for v in variants]

    rows = [row for row, _ in outcomes if row is not None]
    failures = [fail for _, fail in outcomes if fail is not None]
    rows.sort(key=lambda r: (r.overall, r.summary))
    return SweepResult(rows, failures)


def run_ngram_sweep(cfg: ExperimentConfig, ranges, train_ds: Dataset, dev_ds: Dataset,
                    embeddings: EmbeddingTable | None = None, jobs: int = 1) -> SweepResult:
    """One run per (lo, hi) range, applied to all union blocks at once."""
    if not ranges:
        raise ValueError("ranges must be non-empty")
    if cfg.union is None:
        raise ExperimentError("n-gram sweeps need a tfidf_lsvc config")
    variants, bad = [], []
    for lo, hi in ranges:
        try:
            variant = with_ngram_range(cfg, lo, hi)
        except Exception as err:  # invalid range: record, keep sweeping
            bad.append({"summary": f"ngram=({lo},{hi})", "error": str(err)})
            continue
        variants.append((_summary(variant), variant))
    result = _run_variants(variants, train_ds, dev_ds, embeddings, jobs)
    return SweepResult(result.rows, bad + result.failures)


def run_weight_sweep(cfg: ExperimentConfig, grid, train_ds: Dataset, dev_ds: Dataset,
                     embeddings: EmbeddingTable | None = None, jobs: int = 1) -> SweepResult:
    """Full Cartesian product over per-block candidate weights."""
    if cfg.union is None:
        raise ExperimentError("weight sweeps need a tfidf_lsvc config")
    grid = [list(values) for values in grid]
    if any(not values for values in grid):
        raise ValueError("every block needs at least one candidate weight")
    variants, bad = [], []
    for weights in itertools.product(*grid):
        try:
            variant = with_weights(cfg, weights)
        except Exception as err:  # invalid weights: record, keep sweeping
            bad.append({"summary": f"weights={weights}", "error": str(err)})
            continue
        variants.append((_summary(variant), variant))
    result = _run_variants(variants, train_ds, dev_ds, embeddings, jobs)
    return SweepResult(result.rows, bad + result.failures)


def coarse_weight_grid(n_blocks: int = 3) -> list[list[float]]:
    """Default sweep grid: 0.25 steps per block."""
    return [[0.25, 0.5, 0.75, 1.0] for _ in range(n_blocks)]


def full_weight_grid(n_blocks: int = 3) -> list[list[float]]:
    """The fine grid: 0.1..1.0 in steps of 0.1 per block."""
    return [[round(0.1 * k, 1) for k in range(1, 11)] for _ in range(n_blocks)]


def _sweep_targets(result: SweepResult) -> list[str]:
    targets: set[str] = set()
    for row in result.rows:
        targets.update(row.per_target)
    return sorted(targets)


def emit_table(result: SweepResult, fmt: str = "text") -> str:
    """Render a sweep losslessly as text, CSV, or JSON."""
    if fmt == "json":
        best = result.best
        doc = {
            "rows": [
                {"config": r.summary, "per_target": r.per_target, "overall": r.overall}
                for r in result.rows
            ],
            "failures": result.failures,
            "best": None if best is None else best.summary,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    targets = _sweep_targets(result)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["config"] + targets + ["overall"])
        for row in result.rows:
            writer.writerow(
                [row.summary]
                + [repr(row.per_target[t]) if t in row.per_target else "" for t in targets]
                + [repr(row.overall)]
            )
        return buf.getvalue()

    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    width = max([len(r.summary) for r in result.rows] + [len("config")], default=6)
    lines = [
        f"{'config':<{width}}  " + "".join(f"{t:>12}  " for t in targets) + f"{'overall':>8}"
    ]
    for row in result.rows:
        cells = "".join(
            f"{row.per_target[t]:>12.4f}  " if t in row.per_target else f"{'-':>12}  "
            for t in targets
        )
        lines.append(f"{row.summary:<{width}}  {cells}{row.overall:>8.4f}")
    best = result.best
    if best is not None:
        lines.append(f"best: {best.summary} (overall {best.overall:.4f})")
    for failure in result.failures:
        lines.append(f"FAILED {failure['summary']}: {failure['error']}")
    return "\n".join(lines)


def result_to_dict(result: ExperimentResult) -> dict:
    """JSON-ready view of a single run."""
    return {
        "scope": result.scope,
        "metric": result.metric,
        "overall": result.overall,
        "overall_f1": result.overall_f1,
        "per_target": {t: report_to_dict(r) for t, r in result.per_target.items()},
        "pooled": None if result.pooled is None else report_to_dict(result.pooled),
    }
