"""Shared fixtures: bundled pair sources and corpus paths."""

from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def macaw_original() -> str:
    return (DATA_DIR / "macaw_original.java").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def macaw_refactored() -> str:
    return (DATA_DIR / "macaw_refactored.java").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return DATA_DIR / "corpus"


@pytest.fixture(scope="session")
def corpus_manifest(corpus_dir) -> Path:
    return corpus_dir / "manifest.jsonl"


@pytest.fixture(scope="session")
def corpus_embeddings(corpus_dir) -> Path:
    return corpus_dir / "embeddings.txt"
