import pytest
from hypothesis import given
from hypothesis import strategies as st

from stancekit.preproc import (
    AnalyzerSpec,
    EMOJI_TOKEN,
    analyze,
    normalize_arabic,
    preprocess,
    replace_emojis,
)

# The exact folding table the docs promise.
NORMALIZATION_MAP = {
    "أ": "ا",  # hamza above
    "إ": "ا",  # hamza below
    "آ": "ا",  # madda
    "ٱ": "ا",  # wasla
    "ى": "ي",  # alef maqsura -> ya
    "ة": "ه",  # ta marbuta -> ha
}
REMOVED = [chr(c) for c in range(0x064B, 0x0653)] + ["ـ"]


class TestNormalizeArabic:
    def test_empty(self):
        assert normalize_arabic("") == ""

    def test_folds_hamza_diacritics_marbuta(self):
        assert normalize_arabic("أُمّة") == "امه"

    def test_non_arabic_passthrough(self):
        assert normalize_arabic("hello ى") == "hello ي"

    def test_mapping_table_verbatim(self):
        for src, dst in NORMALIZATION_MAP.items():
            assert normalize_arabic(src) == dst
        for ch in REMOVED:
            assert normalize_arabic(ch) == ""

    def test_never_inserts(self):
        text = "أَهْلاً وـسَهلاً بكى"
        removed = sum(1 for ch in text if ch in REMOVED)
        out = normalize_arabic(text)
        assert len(out) == len(text) - removed

    @given(st.text())
    def test_idempotent(self, text):
        once = normalize_arabic(text)
        assert normalize_arabic(once) == once


class TestReplaceEmojis:
    def test_single_emoji(self):
        assert replace_emojis("good \U0001F44D") == f"good  {EMOJI_TOKEN} "

    def test_run_collapses(self):
        assert replace_emojis("\U0001F44D\U0001F602 yes") == f" {EMOJI_TOKEN}  yes"

    def test_identity_without_emojis(self):
        assert replace_emojis("no emoji") == "no emoji"

    def test_misc_symbols_block(self):
        # U+2600 (sun) lies in the 2600-27BF range
        assert EMOJI_TOKEN in replace_emojis("weather ☀")

    @given(st.text())
    def test_idempotent(self, text):
        once = replace_emojis(text)
        assert replace_emojis(once) == once


class TestPreprocessOrder:
    def test_emoji_then_normalize(self):
        # emoji placeholder is ASCII; normalization must not alter it
        out = preprocess("أرى \U0001F600", na=True, re=True)
        assert out == f"اري  {EMOJI_TOKEN} "

    def test_flags_off_is_identity(self):
        assert preprocess("أرى \U0001F600") == "أرى \U0001F600"


class TestAnalyzerSpec:
    def test_rejects_bad_kind(self):
        with pytest.raises(ValueError):
            AnalyzerSpec("token", 1, 1)

    @pytest.mark.parametrize("lo,hi", [(0, 1), (3, 2), (-1, 1)])
    def test_rejects_bad_range(self, lo, hi):
        with pytest.raises(ValueError):
            AnalyzerSpec("word", lo, hi)


class TestAnalyze:
    def test_word_ngrams(self):
        assert analyze("a b", AnalyzerSpec("word", 1, 2)) == ["a", "b", "a b"]

    def test_char_ngrams_raw_string(self):
        assert analyze("ab c", AnalyzerSpec("char", 2, 2)) == ["ab", "b ", " c"]

    def test_char_wb_padding(self):
        assert analyze("ab", AnalyzerSpec("char_wb", 2, 2)) == [" a", "ab", "b "]

    def test_char_wb_never_crosses_words(self):
        grams = analyze("ab cd", AnalyzerSpec("char_wb", 2, 4))
        for g in grams:
            assert " " not in g.strip(), f"interior space in {g!r}"

    def test_char_wb_short_word_emitted_once(self):
        # padded " ab " has length 4 < 5: the whole padded word, once
        assert analyze("ab", AnalyzerSpec("char_wb", 5, 6)) == [" ab "]

    def test_word_shorter_than_min_is_empty(self):
        assert analyze("one two", AnalyzerSpec("word", 3, 3)) == []
        assert analyze("abc", AnalyzerSpec("char", 5, 5)) == []

    def test_lowercase_latin_only(self):
        assert analyze("AB", AnalyzerSpec("word", 1, 1)) == ["ab"]
        assert analyze("AB", AnalyzerSpec("word", 1, 1, lowercase=False)) == ["AB"]

    @given(st.text(max_size=40), st.integers(1, 4), st.integers(0, 3))
    def test_char_count_formula(self, text, lo, extra):
        hi = lo + extra
        grams = analyze(text, AnalyzerSpec("char", lo, hi))
        length = len(text.lower())
        expected = sum(max(0, length - n + 1) for n in range(lo, hi + 1))
        assert len(grams) == expected

    @given(st.text(max_size=30), st.integers(1, 3), st.integers(0, 2))
    def test_char_wb_no_interior_space(self, text, lo, extra):
        grams = analyze(text, AnalyzerSpec("char_wb", lo, lo + extra))
        for g in grams:
            assert " " not in g.strip()

    def test_order_shorter_n_first(self):
        grams = analyze("abc", AnalyzerSpec("char", 1, 2))
        assert grams == ["a", "b", "c", "ab", "bc"]
