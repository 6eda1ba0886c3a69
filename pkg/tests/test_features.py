import math

import numpy as np
import pytest

from oracles import tfidf_fit_oracle, tfidf_transform_oracle
from stancekit.errors import EmptyCorpus, EmptyVocabulary
from stancekit.features import (
    SparseVector,
    UnionSpec,
    fit_block,
    fit_union,
    transform_block,
    transform_union,
)
from stancekit.preproc import AnalyzerSpec, analyze

WORD1 = AnalyzerSpec("word", 1, 1)


class TestSparseVector:
    def test_from_dense_roundtrip(self):
        v = SparseVector.from_dense([0.0, 2.5, 0.0, -1.0])
        assert list(v.indices) == [1, 3]
        assert np.array_equal(v.to_dense(), [0.0, 2.5, 0.0, -1.0])

    def test_rejects_unsorted_indices(self):
        with pytest.raises(ValueError):
            SparseVector(4, [2, 1], [1.0, 1.0])

    def test_rejects_zero_and_nonfinite_values(self):
        with pytest.raises(ValueError):
            SparseVector(4, [1], [0.0])
        with pytest.raises(ValueError):
            SparseVector(4, [1], [float("nan")])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            SparseVector(2, [2], [1.0])


class TestFitBlock:
    def test_two_doc_example(self):
        block = fit_block(["a b", "a c"], WORD1)
        assert block.vocabulary == {"a": 0, "b": 1, "c": 2}
        expected = [1.0, math.log(3 / 2) + 1, math.log(3 / 2) + 1]
        assert np.allclose(block.idf, expected, rtol=0, atol=0)  # exact formula
        # frozen values from the brute-force oracle
        assert block.idf == pytest.approx([1.0, 1.4054651081081644, 1.4054651081081644])

    def test_single_doc(self):
        block = fit_block(["x"], WORD1)
        assert block.vocabulary == {"x": 0}
        assert block.idf[0] == 1.0

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            fit_block([], WORD1)

    def test_empty_vocabulary(self):
        with pytest.raises(EmptyVocabulary):
            fit_block(["", ""], WORD1)

    def test_matches_oracle(self):
        corpus = ["a b", "a c"]
        block = fit_block(corpus, WORD1)
        vocab, idf = tfidf_fit_oracle([analyze(d, WORD1) for d in corpus])
        assert block.vocabulary == vocab
        assert np.allclose(block.idf, idf, rtol=1e-15)


class TestTransformBlock:
    @pytest.fixture
    def block(self):
        return fit_block(["a b", "a c"], WORD1)

    def test_weighted_and_normalized(self, block):
        v = transform_block(block, "a b")
        # frozen from the oracle: pre-norm (1.0, 1.405465...), norm 1.724916...
        assert list(v.indices) == [0, 1]
        assert v.values == pytest.approx([0.5797386715376657, 0.8148024746671689])
        assert round(v.values[0], 4) == 0.5797 and round(v.values[1], 4) == 0.8148

    def test_out_of_vocabulary_is_zero_vector(self, block):
        v = transform_block(block, "z z")
        assert v.dim == 3 and v.indices.size == 0

    def test_single_feature_normalizes_to_one(self, block):
        v = transform_block(block, "a")
        assert list(v.indices) == [0] and v.values[0] == 1.0

    def test_norm_is_one_or_zero(self, block):
        for doc in ["a b", "a", "b c a", "zzz", ""]:
            norm = transform_block(block, doc).norm()
            assert norm == pytest.approx(1.0, abs=1e-12) or norm == 0.0


class TestUnion:
    def test_unit_weight_single_block_equals_block(self):
        corpus = ["aa bb", "aa cc"]
        union = fit_union(corpus, UnionSpec(((WORD1, 1.0),)))
        for doc in corpus + ["aa", "dd"]:
            assert transform_union(union, doc) == transform_block(union.blocks[0][0], doc)

    def test_weight_scales_slice_exactly(self):
        corpus = ["aa bb", "aa cc"]
        spec_w = UnionSpec(((WORD1, 0.5),))
        union = fit_union(corpus, spec_w)
        unit = fit_union(corpus, UnionSpec(((WORD1, 1.0),)))
        for doc in corpus:
            got = transform_union(union, doc)
            ref = transform_union(unit, doc)
            assert np.array_equal(got.values, ref.values * 0.5)

    def test_two_identical_blocks_half_weight(self):
        corpus = ["aa bb", "aa cc"]
        union = fit_union(corpus, UnionSpec(((WORD1, 1.0), (WORD1, 0.5))))
        v = transform_union(union, "aa bb")
        k = union.blocks[0][0].dim
        first = v.to_dense()[:k]
        second = v.to_dense()[k:]
        assert np.array_equal(second, first * 0.5)

    def test_offsets_are_cumulative(self):
        corpus = ["aa bb", "aa cc"]
        spec = UnionSpec(((WORD1, 1.0), (AnalyzerSpec("char", 2, 2), 1.0)))
        union = fit_union(corpus, spec)
        assert union.offsets[0] == 0
        assert union.offsets[1] == union.blocks[0][0].dim
        assert union.total_dim == sum(b.dim for b, _ in union.blocks)

    def test_fit_error_names_block(self):
        with pytest.raises(EmptyVocabulary, match="block 1"):
            fit_union(["ab"], UnionSpec(((AnalyzerSpec("char", 1, 1), 1.0),
                                         (AnalyzerSpec("word", 5, 5), 1.0))))

    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            UnionSpec(((WORD1, 0.0),))
        with pytest.raises(ValueError):
            UnionSpec(((WORD1, 1.5),))
        with pytest.raises(ValueError):
            UnionSpec(())

    def test_fit_transform_deterministic(self):
        corpus = ["aa bb cc", "bb dd", "cc ee aa"]
        spec = UnionSpec(((WORD1, 0.85), (AnalyzerSpec("char", 1, 3), 0.65)))
        u1, u2 = fit_union(corpus, spec), fit_union(corpus, spec)
        for (b1, w1), (b2, w2) in zip(u1.blocks, u2.blocks):
            assert b1.vocabulary == b2.vocabulary
            assert np.array_equal(b1.idf, b2.idf)
            assert w1 == w2
        for doc in corpus:
            assert transform_union(u1, doc) == transform_union(u2, doc)


def _random_corpus(rng, max_docs=10, max_len=30):
    alphabet = "ab ت👍"
    n_docs = int(rng.integers(1, max_docs + 1))
    docs = []
    for _ in range(n_docs):
        length = int(rng.integers(0, max_len + 1))
        docs.append("".join(rng.choice(list(alphabet), size=length)))
    return docs


class TestOracleEquivalence:
    def test_randomized_corpora_match_oracle(self):
        rng = np.random.default_rng(2024)
        kinds = ["word", "char", "char_wb"]
        for trial in range(25):
            docs = _random_corpus(rng)
            spec = AnalyzerSpec(
                kinds[trial % 3],
                int(rng.integers(1, 4)),
                int(rng.integers(4, 7)),
            )
            analyzed = [analyze(d, spec) for d in docs]
            if not any(analyzed):
                continue
            block = fit_block(docs, spec)
            vocab, idf = tfidf_fit_oracle(analyzed)
            assert block.vocabulary == vocab
            np.testing.assert_allclose(block.idf, idf, rtol=1e-12)
            for doc, feats in zip(docs, analyzed):
                got = transform_block(block, doc)
                want = tfidf_transform_oracle(vocab, idf, feats)
                assert list(got.indices) == sorted(want)
                np.testing.assert_allclose(
                    got.values, [want[j] for j in sorted(want)], rtol=1e-12
                )
