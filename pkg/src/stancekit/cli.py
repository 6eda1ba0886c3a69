"""Command-line entry point.

Commands: prep, stats, train, predict, eval, sweep, export-config.
Exit codes: 0 on success, 1 on runtime failure, 2 on bad flags. All
randomness flows from --seed; rerunning a command with identical inputs
and flags produces byte-identical output files.
"""

import argparse
import csv
import dataclasses
import json
import sys

import numpy as np

from . import config as config_mod
from . import data as data_mod
from .errors import StancekitError
from .evaluation import render_report
from .experiments import (
    coarse_weight_grid,
    emit_table,
    evaluate_pipeline,
    full_weight_grid,
    result_to_dict,
    run_ngram_sweep,
    run_weight_sweep,
)
from .features import SparseVector
from .models import decision_scores
from .pipeline import decision_rows, fit_pipeline, load_pipeline, save_pipeline
from .preproc import preprocess
from .serialize import save_union, save_union_bundle


def _apply_overrides(cfg, args):
    train = cfg.train
    if getattr(args, "seed", None) is not None:
        train = dataclasses.replace(train, seed=args.seed)
    if getattr(args, "c", None) is not None:
        train = dataclasses.replace(train, c=args.c)
    if getattr(args, "max_iter", None) is not None:
        train = dataclasses.replace(train, max_iter=args.max_iter)
    cfg = dataclasses.replace(cfg, train=train)
    if getattr(args, "scope", None) is not None:
        cfg = dataclasses.replace(cfg, scope=args.scope)
    if getattr(args, "metric", None) is not None:
        cfg = dataclasses.replace(cfg, metric=args.metric)
    prep = cfg.preprocessing
    if getattr(args, "na", None) is not None:
        prep = dataclasses.replace(prep, na=args.na)
    if getattr(args, "re", None) is not None:
        prep = dataclasses.replace(prep, re=args.re)
    return dataclasses.replace(cfg, preprocessing=prep)


def _split_for_run(ds, dev_fraction, seed):
    if ds.has_split_column():
        train, dev, _ = data_mod.split_by_column(ds)
        return train, dev
    return data_mod.stratified_split(ds, dev_fraction, seed)


def cmd_prep(args) -> int:
    src = open(args.infile, encoding="utf-8") if args.infile else sys.stdin
    dst = open(args.outfile, "w", encoding="utf-8") if args.outfile else sys.stdout
    try:
        for line in src:
            dst.write(preprocess(line.rstrip("\n"), na=args.na, re=args.re))
            dst.write("\n")
    finally:
        if args.infile:
            src.close()
        if args.outfile:
            dst.close()
    return 0


def cmd_stats(args) -> int:
    ds = data_mod.load_dataset(args.data)
    rows = data_mod.dataset_stats(ds)
    if args.json:
        doc = [dataclasses.asdict(r) for r in rows]
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(data_mod.render_stats(rows))
    known = set(data_mod.MAWQIF_REFERENCE) - {"All"}
    if known & {r.target for r in rows}:
        notes = data_mod.compare_to_reference(rows)
        if notes:
            print("\nreference check (published Mawqif statistics):")
            for note in notes:
                print(f"  * {note}")
        else:
            print("\nreference check: counts match the published Mawqif statistics")
    return 0


def cmd_train(args) -> int:
    cfg = _apply_overrides(config_mod.load_config(args.config), args)
    ds = data_mod.load_dataset(args.data)
    embeddings = data_mod.load_embeddings(args.embeddings) if args.embeddings else None

    if ds.has_split_column():
        train_ds, dev_ds, _ = data_mod.split_by_column(ds)
    else:
        train_ds, dev_ds = ds, None

    tp = fit_pipeline(cfg, train_ds, embeddings)
    save_pipeline(tp, args.out)
    print(f"saved pipeline to {args.out}")

    if args.save_features:
        sections = [s for s in tp.sections if s.union is not None]
        if not sections:
            print("no TF-IDF features to save for this pipeline", file=sys.stderr)
        elif len(sections) == 1 and sections[0].target is None:
            save_union(sections[0].union, args.save_features)
            print(f"saved features to {args.save_features}")
        else:
            save_union_bundle([(s.target, s.union) for s in sections], args.save_features)
            print(f"saved features to {args.save_features}")

    if dev_ds is not None and len(dev_ds):
        result = evaluate_pipeline(tp, dev_ds, embeddings, cfg.metric)
        for target, report in result.per_target.items():
            print(f"\n[{target}]")
            print(render_report(report))
        print(f"\noverall {cfg.metric}: {result.overall_f1:.4f}")
        print(f"overall macro_f1_all: {result.overall['macro_f1_all']:.4f}")
        print(f"overall f1_favor_against: {result.overall['f1_favor_against']:.4f}")
    return 0


def _predict_from_embeddings(tp, table):
    if tp.scope != "pooled":
        raise StancekitError(
            "JSONL input carries no targets; per-target pipelines need CSV input"
        )
    section = tp.sections[0]
    rows = []
    for rid, vec in table.vectors.items():
        sv = SparseVector.from_dense(vec)
        scores = decision_scores(section.model, sv)
        label = section.model.classes[int(np.argmax(scores))]
        rows.append((rid, label, dict(zip(section.model.classes, map(float, scores)))))
    return rows


def _predict_from_csv(tp, ds, embeddings):
    rows = []
    for rec, (label, classes, scores) in zip(ds, decision_rows(tp, ds, embeddings)):
        rows.append((rec.id, label, dict(zip(classes, map(float, scores)))))
    return rows


def cmd_predict(args) -> int:
    tp = load_pipeline(args.model)
    if args.infile.endswith(".jsonl"):
        rows = _predict_from_embeddings(tp, data_mod.load_embeddings(args.infile))
    else:
        ds = data_mod.load_prediction_rows(args.infile)
        embeddings = data_mod.load_embeddings(args.embeddings) if args.embeddings else None
        rows = _predict_from_csv(tp, ds, embeddings)

    classes = sorted({cls for _, _, scores in rows for cls in scores})
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        header = ["id", "predicted_stance"]
        if args.scores:
            header += [f"score_{c}" for c in classes]
        writer.writerow(header)
        for rid, label, scores in rows:
            row = [rid, label]
            if args.scores:
                row += [repr(scores[c]) if c in scores else "" for c in classes]
            writer.writerow(row)
    print(f"wrote {len(rows)} predictions to {args.out}")
    return 0


def cmd_eval(args) -> int:
    tp = load_pipeline(args.model)
    ds = data_mod.load_dataset(args.data)
    embeddings = data_mod.load_embeddings(args.embeddings) if args.embeddings else None
    result = evaluate_pipeline(tp, ds, embeddings, args.metric)
    for target, report in result.per_target.items():
        print(f"\n[{target}]")
        print(render_report(report))
    if result.pooled is not None:
        print("\n[pooled]")
        print(render_report(result.pooled))
    print(f"\noverall {result.metric}: {result.overall_f1:.4f}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(result_to_dict(result), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote JSON report to {args.json}")
    return 0


def _parse_ranges(raw: str):
    ranges = []
    for part in raw.split(","):
        lo, _, hi = part.strip().partition(":")
        ranges.append((int(lo), int(hi)))
    return ranges


def cmd_sweep(args) -> int:
    cfg = _apply_overrides(config_mod.load_config(args.config), args)
    ds = data_mod.load_dataset(args.data)
    embeddings = data_mod.load_embeddings(args.embeddings) if args.embeddings else None
    train_ds, dev_ds = _split_for_run(ds, args.dev_fraction, cfg.train.seed)

    if args.mode == "ngram":
        ranges = _parse_ranges(args.ranges)
        result = run_ngram_sweep(cfg, ranges, train_ds, dev_ds, embeddings, jobs=args.jobs)
    else:
        if args.grid:
            values = [float(v) for v in args.grid.split(",")]
            grid = [values for _ in cfg.union.blocks]
        elif args.full_grid:
            grid = full_weight_grid(len(cfg.union.blocks))
        else:
            grid = coarse_weight_grid(len(cfg.union.blocks))
        result = run_weight_sweep(cfg, grid, train_ds, dev_ds, embeddings, jobs=args.jobs)

    rendered = emit_table(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
            if not rendered.endswith("\n"):
                fh.write("\n")
        print(f"wrote sweep table to {args.out}")
    else:
        print(rendered)
    if result.failures:
        print(f"{len(result.failures)} configuration(s) failed", file=sys.stderr)
        return 1
    return 0


def cmd_export_config(args) -> int:
    if args.pipeline == "tfidf_lsvc":
        cfg = config_mod.ExperimentConfig(
            pipeline="tfidf_lsvc",
            union=config_mod.default_union(1, 1),
            train=config_mod.TrainConfig(c=4.0),
            preprocessing=config_mod.PrepFlags(na=True, re=True),
        )
    else:
        cfg = config_mod.ExperimentConfig(
            pipeline="embed_logreg",
            train=config_mod.TrainConfig(c=1.0),
            preprocessing=config_mod.PrepFlags(na=True, re=True),
        )
    config_mod.save_config(cfg, args.out)
    print(f"wrote {args.pipeline} config to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stancekit",
        description="Stance detection toolkit",
        epilog="File formats (CSV schema, embedding JSONL, model containers, "
               "config JSON) are specified bit-exactly in docs/formats.md.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prep", help="preprocess text lines (stdin/stdout by default)")
    p.add_argument("--na", action="store_true", help="normalize Arabic characters")
    p.add_argument("--re", action="store_true", help="replace emoji runs with [EMO]")
    p.add_argument("--in", dest="infile", metavar="PATH", help="input file (default: stdin)")
    p.add_argument("--out", dest="outfile", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("stats", help="per-target stance counts")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.set_defaults(func=cmd_stats)

    def add_overrides(p, with_prep=True):
        p.add_argument("--seed", type=int, help="override train.seed")
        p.add_argument("--c", type=float, help="override train.c")
        p.add_argument("--max-iter", type=int, dest="max_iter", help="override train.max_iter")
        p.add_argument("--scope", choices=config_mod.SCOPES, help="override scope")
        p.add_argument("--metric", choices=config_mod.METRICS, help="override metric")
        if with_prep:
            p.add_argument("--na", action=argparse.BooleanOptionalAction, default=None,
                           help="override preprocessing.na")
            p.add_argument("--re", action=argparse.BooleanOptionalAction, default=None,
                           help="override preprocessing.re")

    p = sub.add_parser("train", help="fit a pipeline and save it")
    p.add_argument("--config", required=True, metavar="JSON")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--embeddings", metavar="JSONL")
    p.add_argument("--out", required=True, metavar="PATH", help="pipeline bundle path")
    p.add_argument("--save-features", dest="save_features", metavar="PATH",
                   help="also save the fitted TF-IDF union(s)")
    add_overrides(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="label new rows with a saved pipeline")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--in", dest="infile", required=True, metavar="CSV|JSONL")
    p.add_argument("--embeddings", metavar="JSONL",
                   help="embedding table for embed pipelines with CSV input")
    p.add_argument("--out", required=True, metavar="CSV")
    p.add_argument("--scores", action="store_true", help="append per-class score columns")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="score a saved pipeline on labeled data")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--embeddings", metavar="JSONL")
    p.add_argument("--metric", choices=config_mod.METRICS, default="f1_favor_against")
    p.add_argument("--json", metavar="PATH", help="also write a JSON report")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="n-gram or feature-weight sweep")
    p.add_argument("--config", required=True, metavar="JSON")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--embeddings", metavar="JSONL")
    p.add_argument("--mode", choices=("ngram", "weight"), required=True)
    p.add_argument("--jobs", type=int, default=1, help="parallel runs")
    p.add_argument("--ranges", default="1:1,1:2,1:3,1:4,1:5,1:6,1:7,1:8,1:9,1:10",
                   help="ngram mode: comma list of lo:hi ranges")
    p.add_argument("--grid", help="weight mode: comma list of weights shared by all blocks")
    p.add_argument("--full-grid", dest="full_grid", action="store_true",
                   help="weight mode: 0.1..1.0 in 0.1 steps (1000 runs for 3 blocks)")
    p.add_argument("--dev-fraction", dest="dev_fraction", type=float, default=0.2)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the table to a file")
    add_overrides(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-config", help="write a documented default config")
    p.add_argument("--out", required=True, metavar="JSON")
    p.add_argument("--pipeline", choices=config_mod.PIPELINES, default="tfidf_lsvc")
    p.set_defaults(func=cmd_export_config)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StancekitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
