import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def stance60_path():
    return os.path.join(FIXTURES, "stance60.csv")


@pytest.fixture(scope="session")
def embeddings8_path():
    return os.path.join(FIXTURES, "embeddings8.jsonl")


@pytest.fixture(scope="session")
def stance60(stance60_path):
    from stancekit.data import load_dataset

    return load_dataset(stance60_path)


@pytest.fixture(scope="session")
def embeddings8(embeddings8_path):
    from stancekit.data import load_embeddings

    return load_embeddings(embeddings8_path)
