"""Experiment configuration: dataclasses, presets, and the JSON codec.

Config files are JSON. Validation collects every problem before raising,
so a bad file reports all offending keys at once.
"""

import json
from dataclasses import dataclass, field

from .errors import ConfigError
from .features import UnionSpec
from .models import TrainConfig
from .preproc import ANALYZER_KINDS, AnalyzerSpec

PIPELINES = ("tfidf_lsvc", "embed_logreg")
SCOPES = ("per_target", "pooled")
METRICS = ("f1_favor_against", "macro_f1_all")

# Block weights of the tuned preset, in (word, char, char_wb) order.
TUNED_WEIGHTS = (0.85, 0.85, 0.65)
UNION_PRESETS = {"tuned": TUNED_WEIGHTS, "unit": (1.0, 1.0, 1.0)}

_BLOCK_KINDS = ("word", "char", "char_wb")


def default_union(ngram_min: int = 1, ngram_max: int = 1,
                  weights=TUNED_WEIGHTS, lowercase: bool = True) -> UnionSpec:
    """Three-block union (word, char, char_wb) sharing one n-gram range."""
    if len(weights) != len(_BLOCK_KINDS):
        raise ValueError(f"need {len(_BLOCK_KINDS)} weights, got {len(weights)}")
    return UnionSpec(tuple(
        (AnalyzerSpec(kind, ngram_min, ngram_max, lowercase), w)
        for kind, w in zip(_BLOCK_KINDS, weights)
    ))


@dataclass(frozen=True)
class PrepFlags:
    """Which preprocessing steps run before feature extraction."""

    na: bool = False  # normalize_arabic
    re: bool = False  # replace_emojis


@dataclass
class ExperimentConfig:
    pipeline: str
    train: TrainConfig = field(default_factory=TrainConfig)
    union: UnionSpec | None = None
    preprocessing: PrepFlags = field(default_factory=PrepFlags)
    scope: str = "per_target"
    metric: str = "f1_favor_against"

    def __post_init__(self):
        problems = []
        if self.pipeline not in PIPELINES:
            problems.append(f"pipeline: {self.pipeline!r} not one of {PIPELINES}")
        if self.scope not in SCOPES:
            problems.append(f"scope: {self.scope!r} not one of {SCOPES}")
        if self.metric not in METRICS:
            problems.append(f"metric: {self.metric!r} not one of {METRICS}")
        if self.pipeline == "tfidf_lsvc" and self.union is None:
            problems.append("union: required for the tfidf_lsvc pipeline")
        if self.pipeline == "embed_logreg" and self.union is not None:
            problems.append("union: not applicable to the embed_logreg pipeline")
        if problems:
            raise ConfigError(problems)


_TOP_KEYS = {"pipeline", "preprocessing", "union", "train", "scope", "metric"}
_UNION_KEYS = {"preset", "ngram_min", "ngram_max", "lowercase", "blocks"}
_BLOCK_KEYS = {"kind", "ngram_min", "ngram_max", "lowercase", "weight"}
_TRAIN_KEYS = {"c", "max_iter", "tol", "seed"}
_PREP_KEYS = {"na", "re"}


def _union_from_dict(d: dict, problems: list[str]) -> UnionSpec | None:
    for key in d:
        if key not in _UNION_KEYS:
            problems.append(f"union.{key}: unknown key")
    if "blocks" in d:
        blocks = []
        for i, bd in enumerate(d["blocks"]):
            for key in bd:
                if key not in _BLOCK_KEYS:
                    problems.append(f"union.blocks[{i}].{key}: unknown key")
            kind = bd.get("kind")
            if kind not in ANALYZER_KINDS:
                problems.append(f"union.blocks[{i}].kind: {kind!r} not one of {ANALYZER_KINDS}")
                continue
            try:
                spec = AnalyzerSpec(kind, int(bd.get("ngram_min", 1)),
                                    int(bd.get("ngram_max", 1)), bool(bd.get("lowercase", True)))
                weight = float(bd.get("weight", 1.0))
                if not (0.0 < weight <= 1.0):
                    raise ValueError(f"weight {weight} outside (0, 1]")
                blocks.append((spec, weight))
            except (ValueError, TypeError) as err:
                problems.append(f"union.blocks[{i}]: {err}")
        if not blocks:
            problems.append("union.blocks: no valid blocks")
            return None
        return UnionSpec(tuple(blocks))
    preset = d.get("preset", "tuned")
    if preset not in UNION_PRESETS:
        problems.append(f"union.preset: {preset!r} not one of {tuple(UNION_PRESETS)}")
        return None
    try:
        return default_union(int(d.get("ngram_min", 1)), int(d.get("ngram_max", 1)),
                             UNION_PRESETS[preset], bool(d.get("lowercase", True)))
    except (ValueError, TypeError) as err:
        problems.append(f"union: {err}")
        return None


def config_from_dict(d: dict) -> ExperimentConfig:
    """Build a config from parsed JSON, reporting every bad key at once."""
    problems: list[str] = []
    for key in d:
        if key not in _TOP_KEYS:
            problems.append(f"{key}: unknown key")

    pipeline = d.get("pipeline")
    if pipeline not in PIPELINES:
        problems.append(f"pipeline: {pipeline!r} not one of {PIPELINES}")

    prep_d = d.get("preprocessing", {})
    for key in prep_d:
        if key not in _PREP_KEYS:
            problems.append(f"preprocessing.{key}: unknown key")
    prep = PrepFlags(na=bool(prep_d.get("na", False)), re=bool(prep_d.get("re", False)))

    train_d = d.get("train", {})
    for key in train_d:
        if key not in _TRAIN_KEYS:
            problems.append(f"train.{key}: unknown key")
    try:
        train = TrainConfig(
            c=float(train_d.get("c", 1.0)),
            max_iter=int(train_d.get("max_iter", 1000)),
            tol=float(train_d.get("tol", 1e-4)),
            seed=int(train_d.get("seed", 42)),
        )
    except (ValueError, TypeError) as err:
        problems.append(f"train: {err}")
        train = TrainConfig()

    union = None
    if pipeline == "tfidf_lsvc":
        union = _union_from_dict(d.get("union", {}), problems)
    elif "union" in d:
        problems.append("union: not applicable to the embed_logreg pipeline")

    scope = d.get("scope", "per_target")
    if scope not in SCOPES:
        problems.append(f"scope: {scope!r} not one of {SCOPES}")
    metric = d.get("metric", "f1_favor_against")
    if metric not in METRICS:
        problems.append(f"metric: {metric!r} not one of {METRICS}")

    if problems:
        raise ConfigError(problems)
    return ExperimentConfig(pipeline=pipeline, train=train, union=union,
                            preprocessing=prep, scope=scope, metric=metric)


def config_to_dict(cfg: ExperimentConfig) -> dict:
    out = {
        "pipeline": cfg.pipeline,
        "preprocessing": {"na": cfg.preprocessing.na, "re": cfg.preprocessing.re},
        "train": {"c": cfg.train.c, "max_iter": cfg.train.max_iter,
                  "tol": cfg.train.tol, "seed": cfg.train.seed},
        "scope": cfg.scope,
        "metric": cfg.metric,
    }
    if cfg.union is not None:
        out["union"] = {"blocks": [
            {"kind": spec.kind, "ngram_min": spec.ngram_min, "ngram_max": spec.ngram_max,
             "lowercase": spec.lowercase, "weight": weight}
            for spec, weight in cfg.union.blocks
        ]}
    return out


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError([f"{path}: not valid JSON ({err})"]) from err
    if not isinstance(raw, dict):
        raise ConfigError([f"{path}: top level must be a JSON object"])
    return config_from_dict(raw)


def save_config(cfg: ExperimentConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(cfg), fh, indent=2, sort_keys=True)
        fh.write("\n")
