import numpy as np
import pytest

from stancekit.data import (
    Dataset,
    EmptyStratumWarning,
    MAWQIF_REFERENCE,
    StanceRecord,
    compare_to_reference,
    dataset_stats,
    join_embeddings,
    load_dataset,
    load_embeddings,
    load_prediction_rows,
    save_dataset,
    save_embeddings,
    split_by_column,
    stratified_split,
    EmbeddingTable,
)
from stancekit.errors import (
    BadLabel,
    DimMismatch,
    DuplicateId,
    EncodingError,
    MissingColumn,
    MissingEmbedding,
    NonFiniteValue,
)


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestLoadDataset:
    def test_loads_fixture(self, stance60):
        assert len(stance60) == 60
        assert stance60.targets() == [
            "covid_vaccine", "digital_transformation", "women_empowerment",
        ]

    def test_missing_column(self, tmp_path):
        path = write(tmp_path / "bad.csv", "id,target,text\n1,t,hello\n")
        with pytest.raises(MissingColumn):
            load_dataset(path)

    def test_bad_label_reports_row(self, tmp_path):
        path = write(tmp_path / "bad.csv",
                     "id,target,text,stance\n1,t,hi,Favor\n2,t,hi,Meh\n")
        with pytest.raises(BadLabel, match="row 3"):
            load_dataset(path)

    def test_duplicate_id(self, tmp_path):
        path = write(tmp_path / "dup.csv",
                     "id,target,text,stance\n1,t,hi,Favor\n1,t,ho,Against\n")
        with pytest.raises(DuplicateId):
            load_dataset(path)

    def test_encoding_error(self, tmp_path):
        path = tmp_path / "latin.csv"
        path.write_bytes("id,target,text,stance\n1,t,caf\xe9,Favor\n".encode("latin-1"))
        with pytest.raises(EncodingError):
            load_dataset(str(path))

    def test_case_insensitive_stances(self, tmp_path):
        path = write(tmp_path / "case.csv",
                     "id,target,text,stance\n1,t,hi,FAVOR\n2,t,ho,none\n")
        ds = load_dataset(path)
        assert [r.stance for r in ds] == ["Favor", "None"]

    def test_split_column_validated(self, tmp_path):
        path = write(tmp_path / "split.csv",
                     "id,target,text,stance,split\n1,t,hi,Favor,weird\n")
        with pytest.raises(BadLabel):
            load_dataset(path)

    def test_round_trip_bit_exact(self, tmp_path, stance60, stance60_path):
        out1 = tmp_path / "copy1.csv"
        save_dataset(stance60, out1)
        again = load_dataset(out1)
        assert again == stance60
        out2 = tmp_path / "copy2.csv"
        save_dataset(again, out2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_prediction_rows_without_stance(self, tmp_path):
        path = write(tmp_path / "pred.csv", "id,target,text\n1,t,hello\n")
        ds = load_prediction_rows(path)
        assert len(ds) == 1 and ds.records[0].text == "hello"


class TestStats:
    def test_fixture_counts(self, stance60):
        rows = dataset_stats(stance60)
        by_target = {r.target: r for r in rows}
        for target in stance60.targets():
            row = by_target[target]
            assert (row.tweets, row.favor, row.against, row.none) == (20, 8, 7, 5)
        assert by_target["All"].tweets == 60
        # row sums always hold
        for row in rows:
            assert row.favor + row.against + row.none == row.tweets

    def test_singleton(self):
        ds = Dataset([StanceRecord("1", "women_empowerment", "x", "Favor")])
        rows = dataset_stats(ds)
        assert rows[0].target == "women_empowerment"
        assert (rows[0].tweets, rows[0].favor, rows[0].against, rows[0].none) == (1, 1, 0, 0)

    def test_no_fabricated_rows(self, stance60):
        targets = {r.target for r in dataset_stats(stance60)}
        assert targets == set(stance60.targets()) | {"All"}

    def test_reference_comparison_flags_inconsistency(self):
        # rows that reproduce the published numbers exactly: the built-in
        # internal inconsistency of the reference must still be flagged
        rows = [
            type("Row", (), dict(target=t, tweets=a, favor=b, against=c, none=d))()
            for t, (a, b, c, d) in MAWQIF_REFERENCE.items()
        ]
        notes = compare_to_reference(rows)
        assert any("internally inconsistent" in n for n in notes)

    def test_reference_comparison_reports_count_drift(self):
        rows = dataset_stats(Dataset([
            StanceRecord("1", "COVID-19 Vaccine", "x", "Favor"),
        ]))
        notes = compare_to_reference(rows)
        assert any("COVID-19 Vaccine" in n and "computed (1, 1, 0, 0)" in n for n in notes)


class TestStratifiedSplit:
    def test_proportions_within_one_record(self, stance60):
        train, dev = stratified_split(stance60, dev_fraction=0.2, seed=42)
        assert len(train) + len(dev) == len(stance60)
        assert set(r.id for r in train).isdisjoint(r.id for r in dev)
        for target in stance60.targets():
            for stance in ("Favor", "Against", "None"):
                n = sum(1 for r in stance60 if r.target == target and r.stance == stance)
                got = sum(1 for r in dev if r.target == target and r.stance == stance)
                assert abs(got - n * 0.2) < 1.0

    def test_deterministic(self, stance60):
        a = stratified_split(stance60, 0.2, seed=7)
        b = stratified_split(stance60, 0.2, seed=7)
        assert a[0] == b[0] and a[1] == b[1]
        c = stratified_split(stance60, 0.2, seed=8)
        assert c[1] != a[1]

    def test_single_record_stratum_warned_into_train(self):
        ds = Dataset([
            StanceRecord("1", "t", "a", "Favor"),
            StanceRecord("2", "t", "b", "Favor"),
            StanceRecord("3", "t", "c", "Favor"),
            StanceRecord("4", "t", "d", "Favor"),
            StanceRecord("5", "t", "e", "Against"),
        ])
        with pytest.warns(EmptyStratumWarning):
            train, dev = stratified_split(ds, 0.25, seed=1)
        assert all(r.stance == "Favor" for r in dev)
        assert sum(1 for r in train if r.stance == "Against") == 1

    def test_split_column_honored(self):
        ds = Dataset([
            StanceRecord("1", "t", "a", "Favor", split="train"),
            StanceRecord("2", "t", "b", "Against", split="dev"),
            StanceRecord("3", "t", "c", "None", split="test"),
            StanceRecord("4", "t", "d", "Favor"),
        ])
        train, dev, test = split_by_column(ds)
        assert [r.id for r in train] == ["1", "4"]
        assert [r.id for r in dev] == ["2"]
        assert [r.id for r in test] == ["3"]


class TestEmbeddings:
    def test_loads_fixture(self, embeddings8, stance60):
        assert len(embeddings8) == 60 and embeddings8.dim == 8
        matrix, labels = join_embeddings(stance60, embeddings8)
        assert matrix.shape == (60, 8)
        assert labels == stance60.labels()

    def test_round_trip_bit_exact(self, tmp_path, embeddings8):
        out1 = tmp_path / "emb1.jsonl"
        save_embeddings(embeddings8, out1)
        again = load_embeddings(out1)
        assert set(again.vectors) == set(embeddings8.vectors)
        for rid, vec in embeddings8.vectors.items():
            assert np.array_equal(again[rid], vec)
        out2 = tmp_path / "emb2.jsonl"
        save_embeddings(again, out2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_dim_mismatch_names_line(self, tmp_path):
        path = write(tmp_path / "e.jsonl",
                     '{"id": "a", "v": [1.0, 2.0]}\n{"id": "b", "v": [1.0]}\n')
        with pytest.raises(DimMismatch, match="line 2"):
            load_embeddings(path)

    def test_duplicate_id(self, tmp_path):
        path = write(tmp_path / "e.jsonl",
                     '{"id": "a", "v": [1.0]}\n{"id": "a", "v": [2.0]}\n')
        with pytest.raises(DuplicateId):
            load_embeddings(path)

    def test_non_finite_value(self, tmp_path):
        path = write(tmp_path / "e.jsonl", '{"id": "a", "v": [1.0, NaN]}\n')
        with pytest.raises(NonFiniteValue, match="line 1"):
            load_embeddings(path)

    def test_missing_embedding_lists_ids(self, stance60):
        table = EmbeddingTable({"t001": np.ones(4)}, 4)
        with pytest.raises(MissingEmbedding) as err:
            join_embeddings(stance60, table)
        assert "t002" in str(err.value)
