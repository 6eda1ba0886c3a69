import numpy as np
import pytest

from stancekit.config import ExperimentConfig, PrepFlags, default_union
from stancekit.errors import FormatError
from stancekit.features import UnionSpec, fit_union, transform_union
from stancekit.models import LinearModel, TrainConfig
from stancekit.pipeline import fit_pipeline, load_pipeline, predict_dataset, save_pipeline
from stancekit.preproc import AnalyzerSpec
from stancekit.serialize import load_model, load_union, save_model, save_union


@pytest.fixture
def union():
    spec = UnionSpec((
        (AnalyzerSpec("word", 1, 2), 0.85),
        (AnalyzerSpec("char", 1, 3), 0.65),
    ))
    return fit_union(["شكرا جزيلا", "لا شكرا", "ab cd"], spec)


@pytest.fixture
def model():
    rng = np.random.default_rng(0)
    return LinearModel(
        classes=["Against", "Favor", "None"],
        weights=rng.normal(size=(3, 7)),
        biases=rng.normal(size=3),
        kind="svc_ovr",
        dim=7,
    )


class TestUnionRoundTrip:
    def test_values_survive(self, tmp_path, union):
        path = tmp_path / "u.bin"
        save_union(union, path)
        loaded = load_union(path)
        assert loaded.total_dim == union.total_dim
        assert loaded.offsets == union.offsets
        for (b1, w1), (b2, w2) in zip(union.blocks, loaded.blocks):
            assert w1 == w2
            assert b1.analyzer == b2.analyzer
            assert b1.vocabulary == b2.vocabulary
            assert np.array_equal(b1.idf, b2.idf)
        for doc in ["شكرا", "ab", "xyz"]:
            assert transform_union(union, doc) == transform_union(loaded, doc)

    def test_rewrite_is_byte_identical(self, tmp_path, union):
        p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
        save_union(union, p1)
        save_union(load_union(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestModelRoundTrip:
    def test_bit_exact(self, tmp_path, model):
        path = tmp_path / "m.bin"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.classes == model.classes
        assert loaded.kind == model.kind and loaded.dim == model.dim
        assert np.array_equal(loaded.weights, model.weights)
        assert np.array_equal(loaded.biases, model.biases)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "junk.bin"
        path.write_bytes(b"NOPE" + b"\x00" * 32)
        with pytest.raises(FormatError):
            load_model(path)

    def test_bad_version(self, tmp_path, model):
        path = tmp_path / "m.bin"
        save_model(model, path)
        raw = bytearray(path.read_bytes())
        raw[4] = 99
        path.write_bytes(bytes(raw))
        with pytest.raises(FormatError, match="version"):
            load_model(path)

    def test_wrong_container_kind(self, tmp_path, union):
        path = tmp_path / "u.bin"
        save_union(union, path)
        with pytest.raises(FormatError):
            load_model(path)


class TestUnionBundle:
    def test_round_trip(self, tmp_path, union):
        from stancekit.serialize import load_union_bundle, save_union_bundle

        path = tmp_path / "bundle.bin"
        save_union_bundle([("covid_vaccine", union), ("women_empowerment", union)], path)
        loaded = load_union_bundle(path)
        assert [t for t, _ in loaded] == ["covid_vaccine", "women_empowerment"]
        for _, got in loaded:
            for doc in ["شكرا", "ab"]:
                assert transform_union(got, doc) == transform_union(union, doc)


class TestPipelineRoundTrip:
    def test_per_target_pipeline(self, tmp_path, stance60):
        cfg = ExperimentConfig(
            pipeline="tfidf_lsvc",
            union=default_union(1, 2),
            train=TrainConfig(c=4.0),
            preprocessing=PrepFlags(na=True, re=True),
        )
        tp = fit_pipeline(cfg, stance60)
        path = tmp_path / "p.bin"
        save_pipeline(tp, path)
        loaded = load_pipeline(path)
        assert loaded.pipeline == tp.pipeline
        assert loaded.scope == tp.scope
        assert loaded.preprocessing == tp.preprocessing
        assert [s.target for s in loaded.sections] == [s.target for s in tp.sections]
        assert predict_dataset(loaded, stance60) == predict_dataset(tp, stance60)

    def test_rewrite_is_byte_identical(self, tmp_path, stance60):
        cfg = ExperimentConfig(
            pipeline="tfidf_lsvc", union=default_union(1, 1), train=TrainConfig(c=4.0),
        )
        tp = fit_pipeline(cfg, stance60)
        p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
        save_pipeline(tp, p1)
        save_pipeline(load_pipeline(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()
