from pathlib import Path

import pytest

from emojirec import load_inventory, load_queries, load_word_embeddings

GOLDEN = Path(__file__).parent / "data" / "golden"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def golden_store():
    return load_word_embeddings(GOLDEN / "embeddings.txt")


@pytest.fixture(scope="session")
def golden_inventory():
    return load_inventory(GOLDEN / "inventory.json")


@pytest.fixture(scope="session")
def golden_queries():
    return load_queries(GOLDEN / "queries.jsonl")
