"""Text preprocessing walkthrough: normalization, emojis, analyzers.

Run: python demos/01_preprocessing.py
"""

from stancekit import AnalyzerSpec, analyze, normalize_arabic, preprocess, replace_emojis

# ---------------------------------------------------------------------------
# Arabic normalization folds orthographic variants so that spelling
# differences do not fragment the vocabulary: diacritics and tatweel are
# removed, alef variants collapse to bare alef, alef maqsura becomes ya,
# ta marbuta becomes ha.
samples = [
    "أُمّة",          # hamza + diacritics + ta marbuta
    "الإِسْلام",       # hamza-below + diacritics
    "مستشفى",         # alef maqsura
    "hello ى",        # non-Arabic text passes through
]
print("normalize_arabic:")
for text in samples:
    print(f"  {text!r:>16} -> {normalize_arabic(text)!r}")

# ---------------------------------------------------------------------------
# Emoji runs collapse to a single [EMO] token so the classifier sees one
# feature regardless of which emoji (or how many) appeared.
print("\nreplace_emojis:")
for text in ["good 👍", "👍😂 yes", "الخبر 🔥🔥🔥", "plain text"]:
    print(f"  {text!r:>18} -> {replace_emojis(text)!r}")

# The combined step applies emoji replacement first, then normalization,
# so the ASCII placeholder is never touched by the character folding.
print("\npreprocess(na=True, re=True):")
print(" ", repr(preprocess("أرى 😀 المستقبل", na=True, re=True)))

# ---------------------------------------------------------------------------
# Three analyzers turn a string into feature strings. `word` emits token
# n-grams, `char` slides over the raw string, and `char_wb` pads each word
# with spaces and never crosses a word boundary.
text = "صباح الخير"
for kind, lo, hi in [("word", 1, 2), ("char", 2, 3), ("char_wb", 2, 3)]:
    feats = analyze(text, AnalyzerSpec(kind, lo, hi))
    print(f"\n{kind} ({lo},{hi}) on {text!r}: {len(feats)} features")
    print(" ", feats[:8], "..." if len(feats) > 8 else "")
