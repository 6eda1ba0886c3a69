"""Command line: ``stance-embed-exporter export --in data.csv --out vectors.jsonl``."""

import argparse
import sys

from .exporter import DEFAULT_MODEL, ExporterError, ExportJob, PrepFlags, export_embeddings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stance-embed-exporter",
        description="Encode a stance dataset CSV into embedding JSONL",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("export", help="run the export")
    p.add_argument("--model", default=DEFAULT_MODEL,
                   help=f"sentence-transformer name (default: {DEFAULT_MODEL})")
    p.add_argument("--in", dest="infile", required=True, metavar="CSV")
    p.add_argument("--out", dest="outfile", required=True, metavar="JSONL")
    p.add_argument("--na", action="store_true", help="normalize Arabic before encoding")
    p.add_argument("--re", action="store_true", help="replace emoji runs before encoding")
    p.add_argument("--batch-size", dest="batch_size", type=int, default=32)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = ExportJob(
        input=args.infile,
        output=args.outfile,
        model_name=args.model,
        batch_size=args.batch_size,
        apply_preprocessing=PrepFlags(na=args.na, re=args.re),
    )
    try:
        count = export_embeddings(job)
    except ExporterError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {count} embeddings to {args.outfile}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
