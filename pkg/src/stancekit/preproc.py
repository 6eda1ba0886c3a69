"""Arabic text normalization, emoji handling, and n-gram analyzers.

All functions here are pure and operate on immutable inputs, so they are
safe to call from any number of threads.
"""

import re
from dataclasses import dataclass

ANALYZER_KINDS = ("word", "char", "char_wb")

# Character folding applied by normalize_arabic, in one translation table:
#   * harakat / tanwin / shadda / sukun  U+064B..U+0652  -> removed
#   * tatweel                            U+0640          -> removed
#   * alef with hamza above              U+0623 (fatha alef) -> U+0627
#   * alef with hamza below              U+0625          -> U+0627
#   * alef with madda                    U+0622          -> U+0627
#   * alef wasla                         U+0671          -> U+0627
#   * alef maqsura                       U+0649          -> U+064A (ya)
#   * ta marbuta                         U+0629          -> U+0647 (ha)
_NORMALIZE_TABLE: dict[int, str | None] = {cp: None for cp in range(0x064B, 0x0653)}
_NORMALIZE_TABLE[0x0640] = None
_NORMALIZE_TABLE.update({
    0x0623: "ا",
    0x0625: "ا",
    0x0622: "ا",
    0x0671: "ا",
    0x0649: "ي",
    0x0629: "ه",
})

# Codepoint inventory treated as emoji. Compiled from the Unicode blocks:
# Miscellaneous Symbols + Dingbats (U+2600-U+27BF), Miscellaneous Symbols
# and Pictographs (U+1F300-U+1F5FF), Emoticons (U+1F600-U+1F64F),
# Transport and Map Symbols (U+1F680-U+1F6FF), Supplemental Symbols and
# Pictographs (U+1F900-U+1F9FF), Symbols and Pictographs Extended-A
# (U+1FA70-U+1FAFF).
EMOJI_RANGES = (
    (0x2600, 0x27BF),
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
)

EMOJI_TOKEN = "[EMO]"

_EMOJI_RUN = re.compile(
    "[" + "".join(f"{chr(lo)}-{chr(hi)}" for lo, hi in EMOJI_RANGES) + "]+"
)


def normalize_arabic(text: str) -> str:
    """Fold Arabic orthographic variants to a canonical form.

    Removes diacritics (U+064B-U+0652) and tatweel, maps the alef variants
    to bare alef, alef maqsura to ya, and ta marbuta to ha. Every other
    codepoint passes through untouched. Idempotent.
    """
    return text.translate(_NORMALIZE_TABLE)


def replace_emojis(text: str) -> str:
    """Replace each maximal run of emoji codepoints with " [EMO] ".

    The placeholder is space-delimited so downstream tokenization treats it
    as one token. Text without emojis is returned unchanged. Idempotent.
    """
    return _EMOJI_RUN.sub(f" {EMOJI_TOKEN} ", text)


def preprocess(text: str, na: bool = False, re: bool = False) -> str:
    """Apply the enabled cleanup steps: emoji replacement first, then
    normalization (the placeholder is ASCII, so order matters only for
    inputs mixing both)."""
    if re:
        text = replace_emojis(text)
    if na:
        text = normalize_arabic(text)
    return text


@dataclass(frozen=True)
class AnalyzerSpec:
    """How to turn a string into feature strings.

    kind is one of "word" (whitespace token n-grams), "char" (codepoint
    n-grams over the raw string) or "char_wb" (codepoint n-grams inside
    space-padded words, never across word boundaries).
    """

    kind: str
    ngram_min: int
    ngram_max: int
    lowercase: bool = True

    def __post_init__(self):
        if self.kind not in ANALYZER_KINDS:
            raise ValueError(f"kind must be one of {ANALYZER_KINDS}, got {self.kind!r}")
        if not (1 <= self.ngram_min <= self.ngram_max):
            raise ValueError(
                f"need 1 <= ngram_min <= ngram_max, got ({self.ngram_min}, {self.ngram_max})"
            )


def analyze(text: str, spec: AnalyzerSpec) -> list[str]:
    """Extract the analyzer's feature strings from ``text``.

    Output is ordered left to right, shorter n-grams before longer ones.
    Word n-grams are joined with a single space. For char_wb, each
    whitespace-delimited word is padded with one space on either side and
    windows never cross words; a word shorter than ngram_min is emitted
    once, whole.
    """
    if spec.lowercase:
        text = text.lower()
    lo, hi = spec.ngram_min, spec.ngram_max
    out: list[str] = []

    if spec.kind == "word":
        tokens = text.split()
        for n in range(lo, hi + 1):
            for i in range(len(tokens) - n + 1):
                out.append(" ".join(tokens[i:i + n]))
    elif spec.kind == "char":
        for n in range(lo, hi + 1):
            for i in range(len(text) - n + 1):
                out.append(text[i:i + n])
    else:  # char_wb
        padded = [f" {w} " for w in text.split()]
        for n in range(lo, hi + 1):
            for pw in padded:
                if len(pw) >= n:
                    for i in range(len(pw) - n + 1):
                        out.append(pw[i:i + n])
                elif n == lo:
                    out.append(pw)
    return out
