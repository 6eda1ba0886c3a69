"""Text cleanup applied before encoding, when requested.

This replicates the stancekit preprocessing exactly (same folding table,
same emoji ranges, same placeholder, same order: emojis first, then
normalization). Parity with the primary implementation is enforced
byte-for-byte by the test suite on a shared fixture.
"""

import re

_NORMALIZE_TABLE: dict[int, str | None] = {cp: None for cp in range(0x064B, 0x0653)}
_NORMALIZE_TABLE[0x0640] = None  # tatweel
_NORMALIZE_TABLE.update({
    0x0623: "ا",  # hamza above alef
    0x0625: "ا",  # hamza below alef
    0x0622: "ا",  # madda alef
    0x0671: "ا",  # alef wasla
    0x0649: "ي",  # alef maqsura -> ya
    0x0629: "ه",  # ta marbuta -> ha
})

_EMOJI_RANGES = (
    (0x2600, 0x27BF),
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
)

EMOJI_TOKEN = "[EMO]"

_EMOJI_RUN = re.compile(
    "[" + "".join(f"{chr(lo)}-{chr(hi)}" for lo, hi in _EMOJI_RANGES) + "]+"
)


def normalize_arabic(text: str) -> str:
    return text.translate(_NORMALIZE_TABLE)


def replace_emojis(text: str) -> str:
    return _EMOJI_RUN.sub(f" {EMOJI_TOKEN} ", text)


def preprocess(text: str, na: bool = False, re: bool = False) -> str:
    if re:
        text = replace_emojis(text)
    if na:
        text = normalize_arabic(text)
    return text
