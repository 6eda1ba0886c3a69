"""Dataset and embedding ingestion, splits, and descriptive statistics.

The CSV schema is ``id,target,text,stance[,split]`` with RFC-4180 quoting
and UTF-8 only. Embeddings travel as JSON Lines, one object per record:
``{"id": "...", "v": [floats]}`` with full-precision floats. Loaded
datasets are immutable and shareable.
"""

import csv
import json
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BadLabel,
    DimMismatch,
    DuplicateId,
    EncodingError,
    FormatError,
    MissingColumn,
    MissingEmbedding,
    NonFiniteValue,
)

STANCES = ("Favor", "Against", "None")
SPLITS = ("train", "dev", "test")

REQUIRED_COLUMNS = ("id", "target", "text", "stance")

# Published summary statistics for the Mawqif stance dataset
# (per target: tweets, favor, against, none). Note the published class
# columns do not sum to the published totals everywhere; `stats`
# surfaces such discrepancies instead of hiding them.
MAWQIF_REFERENCE = {
    "COVID-19 Vaccine": (1167, 508, 507, 152),
    "Digital Transformation": (1145, 879, 142, 22),
    "Women Empowerment": (1190, 761, 371, 59),
    "All": (3502, 2154, 1020, 332),
}


@dataclass(frozen=True)
class StanceRecord:
    """One annotated text."""

    id: str
    target: str
    text: str
    stance: str
    split: str | None = None


class Dataset:
    """Immutable list of records with unique ids."""

    def __init__(self, records: list[StanceRecord]):
        seen = set()
        for rec in records:
            if rec.id in seen:
                raise DuplicateId(f"duplicate id {rec.id!r}")
            seen.add(rec.id)
        self._records = tuple(records)

    @property
    def records(self) -> tuple[StanceRecord, ...]:
        return self._records

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __eq__(self, other):
        return isinstance(other, Dataset) and self._records == other._records

    def targets(self) -> list[str]:
        """Distinct targets in first-appearance order."""
        out = []
        for rec in self._records:
            if rec.target not in out:
                out.append(rec.target)
        return out

    def subset(self, target: str) -> "Dataset":
        return Dataset([r for r in self._records if r.target == target])

    def texts(self) -> list[str]:
        return [r.text for r in self._records]

    def labels(self) -> list[str]:
        return [r.stance for r in self._records]

    def ids(self) -> list[str]:
        return [r.id for r in self._records]

    def has_split_column(self) -> bool:
        return any(r.split is not None for r in self._records)


def _canon_stance(raw: str, row: int) -> str:
    folded = raw.strip().lower()
    for stance in STANCES:
        if folded == stance.lower():
            return stance
    raise BadLabel(row, f"stance {raw!r} not one of {STANCES}")


def _canon_split(raw: str, row: int) -> str | None:
    folded = raw.strip().lower()
    if folded == "":
        return None
    if folded in SPLITS:
        return folded
    raise BadLabel(row, f"split {raw!r} not one of {SPLITS}")


def load_dataset(path) -> Dataset:
    """Parse a stance CSV, validating labels, ids and encoding."""
    try:
        with open(path, encoding="utf-8", errors="strict", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for col in REQUIRED_COLUMNS:
                if col not in header:
                    raise MissingColumn(f"column {col!r} missing (header: {header})")
            has_split = "split" in header
            records = []
            for row_no, row in enumerate(reader, start=2):
                records.append(StanceRecord(
                    id=row["id"],
                    target=row["target"],
                    text=row["text"],
                    stance=_canon_stance(row["stance"], row_no),
                    split=_canon_split(row["split"], row_no) if has_split else None,
                ))
    except UnicodeDecodeError as err:
        raise EncodingError(f"{path}: not valid UTF-8 ({err})") from err
    return Dataset(records)


def load_prediction_rows(path) -> Dataset:
    """Like load_dataset, but the stance column is optional.

    Rows without a stance get the placeholder "None"; prediction never
    reads it.
    """
    try:
        with open(path, encoding="utf-8", errors="strict", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for col in ("id", "target", "text"):
                if col not in header:
                    raise MissingColumn(f"column {col!r} missing (header: {header})")
            has_stance = "stance" in header
            records = []
            for row_no, row in enumerate(reader, start=2):
                stance = _canon_stance(row["stance"], row_no) if has_stance else "None"
                records.append(StanceRecord(
                    id=row["id"], target=row["target"], text=row["text"], stance=stance,
                ))
    except UnicodeDecodeError as err:
        raise EncodingError(f"{path}: not valid UTF-8 ({err})") from err
    return Dataset(records)


def save_dataset(ds: Dataset, path) -> None:
    """Write the canonical CSV form (column order fixed, RFC-4180 quoting)."""
    has_split = ds.has_split_column()
    columns = list(REQUIRED_COLUMNS) + (["split"] if has_split else [])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for rec in ds:
            row = [rec.id, rec.target, rec.text, rec.stance]
            if has_split:
                row.append(rec.split or "")
            writer.writerow(row)


@dataclass(frozen=True)
class StatsRow:
    target: str
    tweets: int
    favor: int
    against: int
    none: int


def dataset_stats(ds: Dataset) -> list[StatsRow]:
    """Per-target stance counts plus an All row; empty targets are omitted."""
    rows = []
    for target in ds.targets():
        recs = [r for r in ds if r.target == target]
        rows.append(StatsRow(
            target,
            len(recs),
            sum(1 for r in recs if r.stance == "Favor"),
            sum(1 for r in recs if r.stance == "Against"),
            sum(1 for r in recs if r.stance == "None"),
        ))
    rows.append(StatsRow(
        "All",
        sum(r.tweets for r in rows),
        sum(r.favor for r in rows),
        sum(r.against for r in rows),
        sum(r.none for r in rows),
    ))
    return rows


def render_stats(rows: list[StatsRow]) -> str:
    width = max(len(r.target) for r in rows)
    lines = [f"{'Target':<{width}}  Tweets  Favor  Against  None"]
    for r in rows:
        lines.append(f"{r.target:<{width}}  {r.tweets:6d}  {r.favor:5d}  {r.against:7d}  {r.none:4d}")
    return "\n".join(lines)


def compare_to_reference(rows: list[StatsRow], reference=None) -> list[str]:
    """Human-readable discrepancy notes versus published reference counts.

    Includes internal-consistency flags for the reference itself (its class
    columns are known not to sum to its totals).
    """
    reference = MAWQIF_REFERENCE if reference is None else reference
    notes = []
    by_target = {r.target: r for r in rows}
    for target, (tweets, favor, against, none) in reference.items():
        row = by_target.get(target)
        if row is None:
            notes.append(f"{target}: absent from data (reference: {tweets} tweets)")
            continue
        if (row.tweets, row.favor, row.against, row.none) != (tweets, favor, against, none):
            notes.append(
                f"{target}: computed ({row.tweets}, {row.favor}, {row.against}, {row.none})"
                f" vs reference ({tweets}, {favor}, {against}, {none})"
            )
        if favor + against + none != tweets:
            notes.append(
                f"{target}: reference row is internally inconsistent"
                f" ({favor}+{against}+{none} = {favor + against + none} != {tweets});"
                " computed counts always sum exactly"
            )
    return notes


class EmptyStratumWarning(UserWarning):
    pass


def stratified_split(ds: Dataset, dev_fraction: float = 0.2, seed: int = 42):
    """Split into (train, dev) preserving (target, stance) proportions.

    Dev seats are allocated per stratum by largest remainder, then filled
    by seeded sampling without replacement, so the split is deterministic
    for a fixed seed. Single-record strata are warned about and kept in
    train. Record order within each side follows the dataset.
    """
    if not (0.0 < dev_fraction < 1.0):
        raise ValueError("dev_fraction must be in (0, 1)")
    strata: dict[tuple[str, str], list[int]] = {}
    for i, rec in enumerate(ds):
        strata.setdefault((rec.target, rec.stance), []).append(i)

    eligible = {}
    for key in sorted(strata):
        if len(strata[key]) == 1:
            warnings.warn(
                f"stratum {key} has a single record; assigning it to train",
                EmptyStratumWarning,
            )
        else:
            eligible[key] = strata[key]

    quotas = {key: len(idx) * dev_fraction for key, idx in eligible.items()}
    base = {key: int(np.floor(q)) for key, q in quotas.items()}
    seats = int(round(sum(quotas.values()))) - sum(base.values())
    remainders = sorted(
        eligible, key=lambda key: (-(quotas[key] - base[key]), key)
    )
    take = dict(base)
    for key in remainders[:seats]:
        take[key] += 1

    rng = np.random.default_rng(seed)
    dev_idx: set[int] = set()
    for key in sorted(eligible):
        indices = eligible[key]
        k = min(take[key], len(indices) - 1)  # never empty a stratum's train side
        if k > 0:
            chosen = rng.choice(len(indices), size=k, replace=False)
            dev_idx.update(indices[j] for j in chosen)

    train = Dataset([r for i, r in enumerate(ds) if i not in dev_idx])
    dev = Dataset([r for i, r in enumerate(ds) if i in dev_idx])
    return train, dev


def split_by_column(ds: Dataset):
    """Honor an explicit split column verbatim; returns (train, dev, test).

    Records without a split value land in train.
    """
    train = [r for r in ds if r.split in (None, "train")]
    dev = [r for r in ds if r.split == "dev"]
    test = [r for r in ds if r.split == "test"]
    return Dataset(train), Dataset(dev), Dataset(test)


class EmbeddingTable:
    """Id-keyed vectors of one shared dimension."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.vectors = vectors
        self.dim = dim

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, key):
        return key in self.vectors

    def __getitem__(self, key):
        return self.vectors[key]


def load_embeddings(path) -> EmbeddingTable:
    """Read the JSONL interchange format; validates ids, dims, finiteness."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                rid = obj["id"]
                raw_vec = obj["v"]
            except (json.JSONDecodeError, KeyError, TypeError) as err:
                raise FormatError(f"line {line_no}: not a valid embedding record ({err})") from err
            if rid in vectors:
                raise DuplicateId(f"line {line_no}: duplicate id {rid!r}")
            vec = np.asarray(raw_vec, dtype=np.float64)
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise DimMismatch(line_no, f"vector length {vec.size} != {dim}")
            if not np.all(np.isfinite(vec)):
                raise NonFiniteValue(line_no, f"id {rid!r} has NaN or inf components")
            vectors[rid] = vec
    return EmbeddingTable(vectors, dim or 0)


def save_embeddings(table: EmbeddingTable, path) -> None:
    """Write the JSONL interchange format with full-precision floats."""
    with open(path, "w", encoding="utf-8") as fh:
        for rid, vec in table.vectors.items():
            fh.write(json.dumps({"id": rid, "v": [float(x) for x in vec]}))
            fh.write("\n")


def join_embeddings(ds: Dataset, emb: EmbeddingTable):
    """Align embedding rows with the dataset order; returns (matrix, labels)."""
    missing = [r.id for r in ds if r.id not in emb]
    if missing:
        raise MissingEmbedding(missing)
    matrix = np.stack([emb[r.id] for r in ds]) if len(ds) else np.zeros((0, emb.dim))
    return matrix, [r.stance for r in ds]


def relabel_split(ds: Dataset, split: str) -> Dataset:
    """Copy of the dataset with every record's split set to ``split``."""
    if split not in SPLITS:
        raise ValueError(f"split must be one of {SPLITS}")
    return Dataset([replace(r, split=split) for r in ds])
