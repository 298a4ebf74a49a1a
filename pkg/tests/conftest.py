"""Shared test scaffolding: corpus loading, seeded stores, fake clocks."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import pytest

from swarmdbg import fixtures as corpora
from swarmdbg.ingest import Ingestor
from swarmdbg.model import Product, Task, new_id
from swarmdbg.store import Store, StoreSnapshot

FIXTURES_ROOT = Path(__file__).resolve().parent.parent / "fixtures"
DATA_DIR = Path(__file__).resolve().parent / "data"


class TickClock:
    """Deterministic millisecond clock; every call advances one step."""

    def __init__(self, start: int = 1_000_000_000, step: int = 1_000):
        self.now = start
        self.step = step

    def __call__(self) -> int:
        self.now += self.step
        return self.now


def seed_product(store: Store, name: str = "demo",
                 task_keys: Sequence[str] = ("T1",)) -> Product:
    """Insert a product plus tasks so sessions can be opened against it."""
    product = store.insert_product(Product(id=new_id(), name=name))
    for key in task_keys:
        store.insert_task(Task(
            id=new_id(),
            product_id=product.id,
            issue_key=key,
            title=f"Task {key}",
            display_color=store.next_task_color(),
        ))
    return product


def load_corpus_store(directory: Path, name: str) -> Store:
    store = Store(directory / f"{name}.db")
    summary = corpora.load_corpus(store, FIXTURES_ROOT / name)
    assert summary.rejected == 0, f"{name} corpus rejected rows: {summary.first_error}"
    return store


@pytest.fixture()
def store(tmp_path) -> Store:
    return Store(tmp_path / "test.db")


@pytest.fixture()
def seeded(tmp_path):
    """(store, product, ingestor) against a deterministic clock."""
    st = Store(tmp_path / "seeded.db")
    product = seed_product(st, task_keys=("T1", "T2"))
    return st, product, Ingestor(st, clock=TickClock())


@pytest.fixture(scope="session")
def study1_store(tmp_path_factory) -> Store:
    return load_corpus_store(tmp_path_factory.mktemp("study1"), "study1")


@pytest.fixture(scope="session")
def study1(study1_store) -> StoreSnapshot:
    return study1_store.snapshot()


@pytest.fixture(scope="session")
def study2_store(tmp_path_factory) -> Store:
    return load_corpus_store(tmp_path_factory.mktemp("study2"), "study2")


@pytest.fixture(scope="session")
def study2(study2_store) -> StoreSnapshot:
    return study2_store.snapshot()


@pytest.fixture(scope="session")
def table10_store(tmp_path_factory) -> Store:
    return load_corpus_store(tmp_path_factory.mktemp("table10"), "table10")


@pytest.fixture(scope="session")
def table10(table10_store) -> StoreSnapshot:
    return table10_store.snapshot()


@pytest.fixture(scope="session")
def gv_store(tmp_path_factory) -> Store:
    return load_corpus_store(tmp_path_factory.mktemp("gv"), "gv")


@pytest.fixture(scope="session")
def gv(gv_store) -> StoreSnapshot:
    return gv_store.snapshot()
