import hashlib
import os

import numpy as np
import pytest

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def rows3_csv():
    return os.path.join(FIXTURES, "rows3.csv")


@pytest.fixture(scope="session")
def parity_strings():
    path = os.path.join(FIXTURES, "parity_strings.txt")
    with open(path, encoding="utf-8") as fh:
        strings = fh.read().splitlines()
    assert len(strings) == 50
    return strings


@pytest.fixture
def stub_encoder():
    """Deterministic 768-dim encoder: text-hash-seeded gaussian, unit norm.

    Stands in for the sentence-transformer so the exporter's own logic is
    testable offline.
    """
    calls = []

    def encode(texts):
        calls.append(list(texts))
        out = np.empty((len(texts), 768))
        for i, text in enumerate(texts):
            seed = int(hashlib.sha256(text.encode("utf-8")).hexdigest()[:12], 16)
            rng = np.random.default_rng(seed)
            vec = rng.standard_normal(768)
            out[i] = vec / np.linalg.norm(vec)
        return out

    encode.calls = calls
    return encode
