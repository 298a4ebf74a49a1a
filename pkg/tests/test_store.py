"""Append-log durability, snapshot isolation, queries, and fingerprints."""

from __future__ import annotations

import json
import random

import pytest

from conftest import FIXTURES_ROOT, load_corpus_store, seed_product
from swarmdbg.errors import (
    DuplicateName,
    InvalidValue,
    StorageCorrupt,
    UnknownSession,
)
from swarmdbg.model import (
    Breakpoint,
    BreakpointKind,
    Developer,
    MethodEntity,
    Namespace,
    Product,
    Session,
    SessionOutcome,
    Task,
    TypeEntity,
    new_id,
)
from swarmdbg.store import (
    MAGIC,
    QueryFilter,
    Store,
    TimeRange,
    audit,
    canonical_fingerprint,
    find_developer_by_name,
    query_breakpoints,
    query_invocations,
    query_sessions,
    rows_to_csv,
)


def _scaffold(store: Store, task_keys=("T1",)):
    """Product, tasks, one developer, one type; returns handy rows."""
    product = seed_product(store, task_keys=task_keys)
    dev = store.insert_developer(Developer(id=new_id(), name="dev"))
    ns = store.insert_namespace(Namespace(
        id=new_id(), product_id=product.id, full_name="app"))
    entity = store.insert_type(TypeEntity(
        id=new_id(), product_id=product.id, namespace_id=ns.id,
        simple_name="Widget", full_name="app.Widget",
        source_path="app/Widget.java", has_source=True))
    snapshot = store.snapshot()
    tasks = {t.issue_key: t for t in snapshot.tasks.values()}
    return product, dev, entity, tasks


def _open_session(store: Store, product, dev, task, started_at=1000) -> Session:
    return store.insert_session(Session(
        id=new_id(), developer_id=dev.id, task_id=task.id,
        product_id=product.id, started_at=started_at, finished_at=None,
        outcome=SessionOutcome.OPEN, label=""))


def _bp(store: Store, session, entity, line, ts) -> Breakpoint:
    return store.insert_breakpoint(Breakpoint(
        id=new_id(), session_id=session.id, type_id=entity.id,
        method_id=None, line_number=line, kind=BreakpointKind.LINE,
        condition=None, created_at=ts))


# -- durability ------------------------------------------------------------


def test_reopen_preserves_ten_thousand_rows(tmp_path):
    path = tmp_path / "bulk.db"
    store = Store(path)
    product, dev, entity, tasks = _scaffold(store)
    session = _open_session(store, product, dev, tasks["T1"])
    for i in range(10_000):
        _bp(store, session, entity, 1 + i, 2000 + i)
    expected = canonical_fingerprint(store.snapshot())
    store.close()

    reopened = Store(path)
    snapshot = reopened.snapshot()
    assert len(snapshot.breakpoints) == 10_000
    assert canonical_fingerprint(snapshot) == expected
    reopened.close()


def test_reopened_store_accepts_further_writes(tmp_path):
    path = tmp_path / "grow.db"
    store = Store(path)
    product, dev, entity, tasks = _scaffold(store)
    session = _open_session(store, product, dev, tasks["T1"])
    _bp(store, session, entity, 10, 2000)
    store.close()

    reopened = Store(path)
    session_row = next(iter(reopened.snapshot().sessions.values()))
    entity_row = next(iter(reopened.snapshot().types.values()))
    _bp(reopened, session_row, entity_row, 11, 3000)
    reopened.close()

    final = Store(path).snapshot()
    assert sorted(b.line_number for b in final.breakpoints.values()) == [10, 11]


def test_upsert_keeps_latest_version_after_reload(tmp_path):
    path = tmp_path / "upsert.db"
    store = Store(path)
    product, dev, entity, tasks = _scaffold(store)
    session = _open_session(store, product, dev, tasks["T1"])
    store.replace_session(Session(
        id=session.id, developer_id=dev.id, task_id=tasks["T1"].id,
        product_id=product.id, started_at=1000, finished_at=9000,
        outcome=SessionOutcome.FAULT_FOUND, label=""))
    store.close()

    reloaded = Store(path).snapshot()
    assert len(reloaded.sessions) == 1
    row = reloaded.sessions[session.id]
    assert row.outcome is SessionOutcome.FAULT_FOUND
    assert row.finished_at == 9000


def test_compact_preserves_contents_and_drops_dead_records(tmp_path):
    path = tmp_path / "compact.db"
    store = Store(path)
    product, dev, entity, tasks = _scaffold(store)
    session = _open_session(store, product, dev, tasks["T1"])
    for i in range(5):
        store.replace_session(Session(
            id=session.id, developer_id=dev.id, task_id=tasks["T1"].id,
            product_id=product.id, started_at=1000, finished_at=9000 + i,
            outcome=SessionOutcome.FAULT_FOUND, label=""))
    before = canonical_fingerprint(store.snapshot())
    live_rows = sum(len(store.snapshot().table(n)) for n in
                    ("developer", "product", "task", "namespace", "type",
                     "method", "session", "breakpoint", "invocation", "event"))

    store.compact()
    assert canonical_fingerprint(store.snapshot()) == before
    store.close()

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == MAGIC
    assert len(lines) == 1 + live_rows
    assert canonical_fingerprint(Store(path).snapshot()) == before


# -- corruption ------------------------------------------------------------


def test_bad_magic_header_is_corrupt(tmp_path):
    path = tmp_path / "bad.db"
    path.write_text("#notastore v9\n", encoding="utf-8")
    with pytest.raises(StorageCorrupt):
        Store(path)


def test_garbage_record_is_corrupt(tmp_path):
    path = tmp_path / "bad.db"
    path.write_text(MAGIC + "\n{not json\n", encoding="utf-8")
    with pytest.raises(StorageCorrupt):
        Store(path)


def test_unknown_table_is_corrupt(tmp_path):
    path = tmp_path / "bad.db"
    record = json.dumps({"table": "mystery", "row": {"id": "x"}})
    path.write_text(MAGIC + "\n" + record + "\n", encoding="utf-8")
    with pytest.raises(StorageCorrupt):
        Store(path)


def test_record_missing_entity_field_is_corrupt(tmp_path):
    path = tmp_path / "bad.db"
    record = json.dumps({"table": "developer", "row": {"id": "x"}})
    path.write_text(MAGIC + "\n" + record + "\n", encoding="utf-8")
    with pytest.raises(StorageCorrupt):
        Store(path)


# -- uniqueness and referential integrity -----------------------------------


def test_duplicate_names_rejected_per_scope(store):
    product, dev, entity, tasks = _scaffold(store)
    with pytest.raises(DuplicateName):
        store.insert_developer(Developer(id=new_id(), name="dev"))
    with pytest.raises(DuplicateName):
        store.insert_product(Product(id=new_id(), name="demo"))
    with pytest.raises(DuplicateName):
        store.insert_task(Task(id=new_id(), product_id=product.id,
                               issue_key="T1", title="again",
                               display_color="#1f77b4"))
    with pytest.raises(DuplicateName):
        store.insert_type(TypeEntity(
            id=new_id(), product_id=product.id,
            namespace_id=entity.namespace_id, simple_name="Widget",
            full_name="app.Widget", source_path=None, has_source=False))
    store.insert_method(MethodEntity(id=new_id(), type_id=entity.id,
                                     signature="run()", declared_line=5))
    with pytest.raises(DuplicateName):
        store.insert_method(MethodEntity(id=new_id(), type_id=entity.id,
                                         signature="run()", declared_line=9))


def test_same_task_key_allowed_across_products(store):
    product_a = seed_product(store, name="alpha", task_keys=("T1",))
    product_b = seed_product(store, name="beta", task_keys=())
    row = store.insert_task(Task(id=new_id(), product_id=product_b.id,
                                 issue_key="T1", title="other product",
                                 display_color="#1f77b4"))
    assert row.product_id == product_b.id
    assert product_a.id != product_b.id


def test_dangling_references_rejected(store):
    with pytest.raises(InvalidValue):
        store.insert_task(Task(id=new_id(), product_id="ghost",
                               issue_key="T1", title="",
                               display_color="#1f77b4"))
    with pytest.raises(InvalidValue):
        store.insert_session(Session(
            id=new_id(), developer_id="ghost", task_id="ghost",
            product_id="ghost", started_at=0, finished_at=None,
            outcome=SessionOutcome.OPEN, label=""))


def test_replace_type_requires_existing_row(store):
    product = seed_product(store)
    ns = store.insert_namespace(Namespace(
        id=new_id(), product_id=product.id, full_name="app"))
    ghost = TypeEntity(id="nope", product_id=product.id, namespace_id=ns.id,
                       simple_name="X", full_name="app.X",
                       source_path=None, has_source=False)
    with pytest.raises(InvalidValue):
        store.replace_type(ghost)


def test_next_task_color_cycles_palette(store):
    from swarmdbg.model import TASK_COLOR_PALETTE

    product = seed_product(store, task_keys=())
    seen = []
    for i in range(13):
        seen.append(store.next_task_color())
        store.insert_task(Task(id=new_id(), product_id=product.id,
                               issue_key=f"K{i}", title="",
                               display_color=seen[-1]))
    assert seen[:12] == list(TASK_COLOR_PALETTE)
    assert seen[12] == TASK_COLOR_PALETTE[0]


# -- snapshot isolation ------------------------------------------------------


def test_snapshot_is_immutable_and_isolated(store):
    product, dev, entity, tasks = _scaffold(store)
    session = _open_session(store, product, dev, tasks["T1"])
    frozen = store.snapshot()
    assert len(frozen.breakpoints) == 0

    _bp(store, session, entity, 10, 2000)
    assert len(frozen.breakpoints) == 0
    assert len(store.snapshot().breakpoints) == 1

    with pytest.raises(TypeError):
        frozen.breakpoints["x"] = None  # type: ignore[index]


def test_session_or_fail_raises_for_unknown_id(store):
    with pytest.raises(UnknownSession):
        store.snapshot().session_or_fail("missing")


def test_find_developer_by_name_is_case_sensitive(store):
    store.insert_developer(Developer(id=new_id(), name="petrillo"))
    snapshot = store.snapshot()
    assert [d.name for d in find_developer_by_name(snapshot, "petrillo")] == ["petrillo"]
    assert find_developer_by_name(snapshot, "Petrillo") == []


# -- query surface -----------------------------------------------------------


def _query_fixture(store):
    """Three sessions over two tasks with timestamped breakpoints."""
    product, dev, entity, tasks = _scaffold(store, task_keys=("T1", "T2"))
    dev2 = store.insert_developer(Developer(id=new_id(), name="dev2"))
    s1 = _open_session(store, product, dev, tasks["T1"], started_at=1000)
    s2 = _open_session(store, product, dev2, tasks["T1"], started_at=2000)
    s3 = _open_session(store, product, dev, tasks["T2"], started_at=3000)
    for i, session in enumerate((s1, s2, s3)):
        for j in range(3):
            _bp(store, session, entity, 10 + j, 1000 * (i + 1) + j)
    return store.snapshot(), (s1, s2, s3), tasks


def test_query_union_of_session_filters_is_union_of_results(store):
    snapshot, (s1, s2, s3), _ = _query_fixture(store)
    only_a = query_breakpoints(snapshot, QueryFilter(session_ids=frozenset({s1.id})))
    only_b = query_breakpoints(snapshot, QueryFilter(session_ids=frozenset({s2.id})))
    both = query_breakpoints(snapshot,
                             QueryFilter(session_ids=frozenset({s1.id, s2.id})))
    assert {b.id for b in both} == {b.id for b in only_a} | {b.id for b in only_b}
    assert len(both) == len(only_a) + len(only_b)


def test_query_results_sorted_by_timestamp_then_id(store):
    snapshot, _, _ = _query_fixture(store)
    rows = query_breakpoints(snapshot, QueryFilter())
    keys = [(b.created_at, b.id) for b in rows]
    assert keys == sorted(keys)


def test_task_filter_restricts_to_matching_sessions(store):
    snapshot, (s1, s2, s3), tasks = _query_fixture(store)
    rows = query_breakpoints(snapshot,
                             QueryFilter(task_ids=frozenset({tasks["T2"].id})))
    assert {b.session_id for b in rows} == {s3.id}


def test_time_range_filter_is_inclusive(store):
    snapshot, _, _ = _query_fixture(store)
    rows = query_breakpoints(snapshot,
                             QueryFilter(time_range=TimeRange(1000, 1002)))
    assert sorted(b.created_at for b in rows) == [1000, 1001, 1002]


def test_empty_filter_matches_everything(store):
    snapshot, sessions, _ = _query_fixture(store)
    assert len(query_sessions(snapshot, QueryFilter())) == 3
    assert len(query_breakpoints(snapshot, QueryFilter())) == 9
    assert query_invocations(snapshot, QueryFilter()) == []


def test_random_session_filters_always_satisfy_union_law(store):
    snapshot, sessions, _ = _query_fixture(store)
    rng = random.Random(7)
    ids = [s.id for s in sessions]
    for _ in range(50):
        group_a = frozenset(rng.sample(ids, rng.randint(0, 3)))
        group_b = frozenset(rng.sample(ids, rng.randint(0, 3)))
        union = query_breakpoints(snapshot, QueryFilter(session_ids=group_a | group_b))
        parts = (query_breakpoints(snapshot, QueryFilter(session_ids=group_a)) +
                 query_breakpoints(snapshot, QueryFilter(session_ids=group_b)))
        assert {b.id for b in union} == {b.id for b in parts}


# -- audit -------------------------------------------------------------------


def test_audit_clean_store_reports_nothing(store):
    _query_fixture(store)
    assert audit(store.snapshot()) == []


def test_audit_flags_breakpoint_on_sourceless_type(store):
    product, dev, entity, tasks = _scaffold(store)
    bare = store.insert_type(TypeEntity(
        id=new_id(), product_id=product.id, namespace_id=entity.namespace_id,
        simple_name="Ghost", full_name="app.Ghost",
        source_path=None, has_source=False))
    session = _open_session(store, product, dev, tasks["T1"])
    _bp(store, session, bare, 5, 2000)
    problems = audit(store.snapshot())
    assert len(problems) == 1
    assert "lacks source" in problems[0]
    assert "app.Ghost" in problems[0]


# -- CSV ---------------------------------------------------------------------


def test_rows_to_csv_canonical_columns_and_cells():
    rows = [
        {"name": "a", "has_source": True, "line": 3, "path": None},
        {"name": "b", "has_source": False, "line": 4, "path": "x.java"},
    ]
    assert rows_to_csv(rows) == (
        "name,has_source,line,path\n"
        "a,true,3,\n"
        "b,false,4,x.java\n"
    )


def test_rows_to_csv_empty_input_emits_header_when_given():
    assert rows_to_csv([], columns=["a", "b"]) == "a,b\n"


def test_rows_to_csv_serializes_entities(store):
    dev = store.insert_developer(Developer(id="d1", name="x"))
    assert rows_to_csv([dev]) == "id,name\nd1,x\n"


# -- fingerprint --------------------------------------------------------------


def test_replayed_corpus_has_identical_fingerprint(tmp_path):
    first = load_corpus_store(tmp_path / "a", "gv")
    second = load_corpus_store(tmp_path / "b", "gv")
    fp_a = canonical_fingerprint(first.snapshot())
    fp_b = canonical_fingerprint(second.snapshot())
    assert fp_a == fp_b
    ids_a = set(first.snapshot().sessions)
    ids_b = set(second.snapshot().sessions)
    assert ids_a.isdisjoint(ids_b), "fresh replays mint fresh ids"


def test_fingerprint_detects_content_difference(tmp_path):
    first = load_corpus_store(tmp_path / "a", "gv")
    second = load_corpus_store(tmp_path / "b", "gv")
    product = next(iter(second.snapshot().products.values()))
    dev = next(iter(second.snapshot().developers.values()))
    task = next(iter(second.snapshot().tasks.values()))
    second.insert_session(Session(
        id=new_id(), developer_id=dev.id, task_id=task.id,
        product_id=product.id, started_at=1, finished_at=None,
        outcome=SessionOutcome.OPEN, label="extra"))
    assert (canonical_fingerprint(first.snapshot())
            != canonical_fingerprint(second.snapshot()))


def test_fixture_corpora_pass_audit(tmp_path):
    for name in ("study1", "study2", "table10", "gv"):
        assert (FIXTURES_ROOT / name / "log.jsonl").is_file()
        store = load_corpus_store(tmp_path / name, name)
        assert audit(store.snapshot()) == [], name
        store.close()
