"""Stance detection toolkit.

Two pipelines over a common harness: a weighted union of TF-IDF n-gram
blocks feeding a one-vs-rest squared-hinge linear SVM, and precomputed
sentence embeddings feeding multinomial logistic regression. Includes
Arabic text normalization, stance-task F1 metrics, dataset/embedding
ingestion, and n-gram / feature-weight sweep harnesses.
"""

from .config import (
    ExperimentConfig,
    PrepFlags,
    TUNED_WEIGHTS,
    default_union,
    load_config,
    save_config,
)
from .data import (
    Dataset,
    EmbeddingTable,
    StanceRecord,
    dataset_stats,
    join_embeddings,
    load_dataset,
    load_embeddings,
    save_dataset,
    save_embeddings,
    split_by_column,
    stratified_split,
)
from .evaluation import ConfusionMatrix, MetricsReport, confusion, evaluate, metrics
from .experiments import (
    ExperimentResult,
    SweepResult,
    emit_table,
    run_experiment,
    run_ngram_sweep,
    run_weight_sweep,
)
from .features import (
    FittedUnion,
    SparseVector,
    TfidfBlock,
    UnionSpec,
    fit_block,
    fit_union,
    transform_block,
    transform_union,
)
from .models import (
    LinearModel,
    TrainConfig,
    decision_scores,
    predict,
    predict_batch,
    predict_proba,
    train_logreg,
    train_lsvc,
)
from .pipeline import TrainedPipeline, fit_pipeline, load_pipeline, predict_dataset, save_pipeline
from .preproc import AnalyzerSpec, analyze, normalize_arabic, preprocess, replace_emojis

__version__ = "0.1.0"

__all__ = [
    "AnalyzerSpec",
    "ConfusionMatrix",
    "Dataset",
    "EmbeddingTable",
    "ExperimentConfig",
    "ExperimentResult",
    "FittedUnion",
    "LinearModel",
    "MetricsReport",
    "PrepFlags",
    "SparseVector",
    "StanceRecord",
    "SweepResult",
    "TfidfBlock",
    "TrainConfig",
    "TrainedPipeline",
    "TUNED_WEIGHTS",
    "UnionSpec",
    "analyze",
    "confusion",
    "dataset_stats",
    "decision_scores",
    "default_union",
    "emit_table",
    "evaluate",
    "fit_block",
    "fit_pipeline",
    "fit_union",
    "join_embeddings",
    "load_config",
    "load_dataset",
    "load_embeddings",
    "load_pipeline",
    "metrics",
    "normalize_arabic",
    "predict",
    "predict_batch",
    "predict_dataset",
    "predict_proba",
    "preprocess",
    "replace_emojis",
    "run_experiment",
    "run_ngram_sweep",
    "run_weight_sweep",
    "save_config",
    "save_dataset",
    "save_embeddings",
    "save_pipeline",
    "split_by_column",
    "stratified_split",
    "train_logreg",
    "train_lsvc",
    "transform_block",
    "transform_union",
]
