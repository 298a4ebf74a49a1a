"""Embedded single-file store with snapshot reads.

Design: an append-only log of JSON records, one per line, preceded by a
magic header line. Every accepted write appends one record and updates
the in-memory tables; rewriting a row with an existing id replaces it
(used for session close and type upgrades). ``compact()`` rewrites the
file to one record per live row. Readers never block writers: a
snapshot is a shallow copy of the tables taken under the writer lock,
and every row is an immutable value, so a snapshot is safe to share
across threads.
"""

from __future__ import annotations

import csv
import io
import json
import os
import threading
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Mapping, Optional, Sequence

from . import model
from .errors import (
    DuplicateName,
    InvalidValue,
    StorageCorrupt,
    SwarmError,
    UnknownSession,
)
from .model import (
    Breakpoint,
    DebugEvent,
    Developer,
    Invocation,
    MethodEntity,
    Namespace,
    Product,
    Session,
    Task,
    TypeEntity,
    canonical_json,
)

MAGIC = "#swarmstore v1"

# Table name -> entity class, in canonical (referential) order.
TABLES: dict[str, type] = {
    "developer": Developer,
    "product": Product,
    "task": Task,
    "namespace": Namespace,
    "type": TypeEntity,
    "method": MethodEntity,
    "session": Session,
    "breakpoint": Breakpoint,
    "invocation": Invocation,
    "event": DebugEvent,
}


@dataclass(frozen=True)
class TimeRange:
    start_ms: Optional[int] = None
    end_ms: Optional[int] = None

    def contains(self, ts: int) -> bool:
        if self.start_ms is not None and ts < self.start_ms:
            return False
        if self.end_ms is not None and ts > self.end_ms:
            return False
        return True


@dataclass(frozen=True)
class QueryFilter:
    """Row filter; an empty filter matches everything.

    Product, task, developer and session dimensions are resolved through
    the row's owning session; the time range applies to the row's own
    timestamp (created_at / occurred_at).
    """

    product_id: Optional[str] = None
    task_ids: Optional[frozenset[str]] = None
    developer_ids: Optional[frozenset[str]] = None
    session_ids: Optional[frozenset[str]] = None
    time_range: Optional[TimeRange] = None

    def matches_session(self, session: Session) -> bool:
        if self.product_id is not None and session.product_id != self.product_id:
            return False
        if self.task_ids is not None and session.task_id not in self.task_ids:
            return False
        if self.developer_ids is not None and session.developer_id not in self.developer_ids:
            return False
        if self.session_ids is not None and session.id not in self.session_ids:
            return False
        return True

    def matches_ts(self, ts: int) -> bool:
        return self.time_range is None or self.time_range.contains(ts)


@dataclass(frozen=True)
class StoreSnapshot:
    """Immutable point-in-time view of every table."""

    developers: Mapping[str, Developer]
    products: Mapping[str, Product]
    tasks: Mapping[str, Task]
    namespaces: Mapping[str, Namespace]
    types: Mapping[str, TypeEntity]
    methods: Mapping[str, MethodEntity]
    sessions: Mapping[str, Session]
    breakpoints: Mapping[str, Breakpoint]
    invocations: Mapping[str, Invocation]
    events: Mapping[str, DebugEvent]

    def table(self, name: str) -> Mapping[str, Any]:
        return getattr(self, _ATTR_BY_TABLE[name])

    def session_or_fail(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id}")
        return session

    def product_by_name(self, name: str) -> Optional[Product]:
        for product in self.products.values():
            if product.name == name:
                return product
        return None

    def task_by_key(self, product_id: str, issue_key: str) -> Optional[Task]:
        for task in self.tasks.values():
            if task.product_id == product_id and task.issue_key == issue_key:
                return task
        return None

    def type_by_full_name(self, product_id: str, full_name: str) -> Optional[TypeEntity]:
        for entity in self.types.values():
            if entity.product_id == product_id and entity.full_name == full_name:
                return entity
        return None

    def methods_of_type(self, type_id: str) -> list[MethodEntity]:
        return [m for m in self.methods.values() if m.type_id == type_id]

    def events_of_session(self, session_id: str) -> list[DebugEvent]:
        rows = [e for e in self.events.values() if e.session_id == session_id]
        rows.sort(key=lambda e: e.occurred_at)  # stable: insertion order breaks ties
        return rows

    def breakpoints_of_session(self, session_id: str) -> list[Breakpoint]:
        rows = [b for b in self.breakpoints.values() if b.session_id == session_id]
        rows.sort(key=lambda b: (b.created_at, b.id))
        return rows


_ATTR_BY_TABLE = {
    "developer": "developers",
    "product": "products",
    "task": "tasks",
    "namespace": "namespaces",
    "type": "types",
    "method": "methods",
    "session": "sessions",
    "breakpoint": "breakpoints",
    "invocation": "invocations",
    "event": "events",
}


class Store:
    """Append-log store; one instance owns one data file."""

    def __init__(self, path: str | os.PathLike[str]):
        self._path = os.fspath(path)
        self._lock = threading.RLock()
        self._tables: dict[str, dict[str, Any]] = {name: {} for name in TABLES}
        parent = os.path.dirname(os.path.abspath(self._path))
        os.makedirs(parent, exist_ok=True)
        if os.path.exists(self._path):
            self._load()
            self._file = open(self._path, "a", encoding="utf-8")
        else:
            self._file = open(self._path, "w", encoding="utf-8")
            self._file.write(MAGIC + "\n")
            self._file.flush()

    def write_lock(self) -> threading.RLock:
        """Reentrant lock for multi-row writes that must appear atomic."""
        return self._lock

    # -- lifecycle -----------------------------------------------------

    def close(self) -> None:
        with self._lock:
            if not self._file.closed:
                self._file.flush()
                os.fsync(self._file.fileno())
                self._file.close()

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()

    def compact(self) -> None:
        """Rewrite the log with one record per live row."""
        with self._lock:
            tmp_path = self._path + ".compact"
            with open(tmp_path, "w", encoding="utf-8") as tmp:
                tmp.write(MAGIC + "\n")
                for name in TABLES:
                    for row in self._tables[name].values():
                        tmp.write(_record_line(name, row))
                tmp.flush()
                os.fsync(tmp.fileno())
            self._file.close()
            os.replace(tmp_path, self._path)
            self._file = open(self._path, "a", encoding="utf-8")

    def _load(self) -> None:
        with open(self._path, "r", encoding="utf-8") as f:
            header = f.readline().rstrip("\n")
            if header != MAGIC:
                raise StorageCorrupt(f"bad magic header in {self._path}")
            for lineno, line in enumerate(f, start=2):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    table = record["table"]
                    row = TABLES[table].from_dict(record["row"])
                except (KeyError, ValueError, TypeError, SwarmError) as exc:
                    raise StorageCorrupt(
                        f"{self._path}:{lineno}: unreadable record ({exc})") from exc
                self._tables[table][row.id] = row

    # -- writes --------------------------------------------------------

    def _append(self, table: str, row: Any) -> None:
        self._tables[table][row.id] = row
        self._file.write(_record_line(table, row))
        self._file.flush()

    def insert_developer(self, row: Developer) -> Developer:
        with self._lock:
            if any(d.name == row.name for d in self._tables["developer"].values()):
                raise DuplicateName(f"developer name {row.name!r} already stored")
            self._append("developer", row)
            return row

    def insert_product(self, row: Product) -> Product:
        with self._lock:
            if any(p.name == row.name for p in self._tables["product"].values()):
                raise DuplicateName(f"product name {row.name!r} already stored")
            self._append("product", row)
            return row

    def insert_task(self, row: Task) -> Task:
        with self._lock:
            self._require_ref("product", row.product_id)
            dup = any(t.product_id == row.product_id and t.issue_key == row.issue_key
                      for t in self._tables["task"].values())
            if dup:
                raise DuplicateName(f"task {row.issue_key!r} already stored for product")
            self._append("task", row)
            return row

    def next_task_color(self) -> str:
        with self._lock:
            index = len(self._tables["task"]) % len(model.TASK_COLOR_PALETTE)
            return model.TASK_COLOR_PALETTE[index]

    def insert_namespace(self, row: Namespace) -> Namespace:
        with self._lock:
            self._require_ref("product", row.product_id)
            dup = any(n.product_id == row.product_id and n.full_name == row.full_name
                      for n in self._tables["namespace"].values())
            if dup:
                raise DuplicateName(f"namespace {row.full_name!r} already stored")
            self._append("namespace", row)
            return row

    def insert_type(self, row: TypeEntity) -> TypeEntity:
        with self._lock:
            self._require_ref("product", row.product_id)
            self._require_ref("namespace", row.namespace_id)
            dup = any(t.product_id == row.product_id and t.full_name == row.full_name
                      for t in self._tables["type"].values())
            if dup:
                raise DuplicateName(f"type {row.full_name!r} already stored")
            self._append("type", row)
            return row

    def replace_type(self, row: TypeEntity) -> TypeEntity:
        with self._lock:
            self._require_ref("type", row.id)
            self._append("type", row)
            return row

    def insert_method(self, row: MethodEntity) -> MethodEntity:
        with self._lock:
            self._require_ref("type", row.type_id)
            dup = any(m.type_id == row.type_id and m.signature == row.signature
                      for m in self._tables["method"].values())
            if dup:
                raise DuplicateName(f"method {row.signature!r} already stored for type")
            self._append("method", row)
            return row

    def insert_session(self, row: Session) -> Session:
        with self._lock:
            self._require_ref("developer", row.developer_id)
            self._require_ref("task", row.task_id)
            self._require_ref("product", row.product_id)
            self._append("session", row)
            return row

    def replace_session(self, row: Session) -> Session:
        with self._lock:
            self._require_ref("session", row.id)
            self._append("session", row)
            return row

    def insert_breakpoint(self, row: Breakpoint) -> Breakpoint:
        with self._lock:
            self._require_ref("session", row.session_id)
            self._require_ref("type", row.type_id)
            if row.method_id is not None:
                self._require_ref("method", row.method_id)
            self._append("breakpoint", row)
            return row

    def insert_invocation(self, row: Invocation) -> Invocation:
        with self._lock:
            self._require_ref("session", row.session_id)
            self._require_ref("method", row.invoking_method_id)
            self._require_ref("method", row.invoked_method_id)
            self._append("invocation", row)
            return row

    def insert_event(self, row: DebugEvent) -> DebugEvent:
        with self._lock:
            self._require_ref("session", row.session_id)
            self._append("event", row)
            return row

    def _require_ref(self, table: str, row_id: str) -> None:
        if row_id not in self._tables[table]:
            raise InvalidValue(f"dangling {table} reference: {row_id}")

    # -- reads ---------------------------------------------------------

    def snapshot(self) -> StoreSnapshot:
        with self._lock:
            return StoreSnapshot(**{
                _ATTR_BY_TABLE[name]: MappingProxyType(dict(rows))
                for name, rows in self._tables.items()
            })


def _record_line(table: str, row: Any) -> str:
    return canonical_json({"table": table, "row": row.to_dict()}) + "\n"


# -- query surface -----------------------------------------------------


def find_developer_by_name(snapshot: StoreSnapshot, name: str) -> list[Developer]:
    """Exact, case-sensitive name lookup."""
    return [d for d in snapshot.developers.values() if d.name == name]


def query_breakpoints(snapshot: StoreSnapshot, filt: QueryFilter) -> list[Breakpoint]:
    rows = []
    for bp in snapshot.breakpoints.values():
        session = snapshot.sessions.get(bp.session_id)
        if session is None:
            continue
        if filt.matches_session(session) and filt.matches_ts(bp.created_at):
            rows.append(bp)
    rows.sort(key=lambda b: (b.created_at, b.id))
    return rows


def query_invocations(snapshot: StoreSnapshot, filt: QueryFilter) -> list[Invocation]:
    rows = []
    for inv in snapshot.invocations.values():
        session = snapshot.sessions.get(inv.session_id)
        if session is None:
            continue
        if filt.matches_session(session) and filt.matches_ts(inv.occurred_at):
            rows.append(inv)
    rows.sort(key=lambda i: (i.occurred_at, i.id))
    return rows


def query_sessions(snapshot: StoreSnapshot, filt: QueryFilter) -> list[Session]:
    rows = [s for s in snapshot.sessions.values() if filt.matches_session(s)]
    rows.sort(key=lambda s: (s.started_at, s.id))
    return rows


def audit(snapshot: StoreSnapshot) -> list[str]:
    """Referential-closure check; returns human-readable violations."""
    problems: list[str] = []

    def check(kind: str, row_id: str, table: str, ref: Optional[str]) -> None:
        if ref is not None and ref not in snapshot.table(table):
            problems.append(f"{kind} {row_id}: dangling {table} ref {ref}")

    for task in snapshot.tasks.values():
        check("task", task.id, "product", task.product_id)
    for ns in snapshot.namespaces.values():
        check("namespace", ns.id, "product", ns.product_id)
    for entity in snapshot.types.values():
        check("type", entity.id, "product", entity.product_id)
        check("type", entity.id, "namespace", entity.namespace_id)
    for method in snapshot.methods.values():
        check("method", method.id, "type", method.type_id)
    for session in snapshot.sessions.values():
        check("session", session.id, "developer", session.developer_id)
        check("session", session.id, "task", session.task_id)
        check("session", session.id, "product", session.product_id)
    for bp in snapshot.breakpoints.values():
        check("breakpoint", bp.id, "session", bp.session_id)
        check("breakpoint", bp.id, "type", bp.type_id)
        check("breakpoint", bp.id, "method", bp.method_id)
        entity = snapshot.types.get(bp.type_id)
        if entity is not None and not entity.has_source:
            problems.append(f"breakpoint {bp.id}: type {entity.full_name} lacks source")
    for inv in snapshot.invocations.values():
        check("invocation", inv.id, "session", inv.session_id)
        check("invocation", inv.id, "method", inv.invoking_method_id)
        check("invocation", inv.id, "method", inv.invoked_method_id)
    for event in snapshot.events.values():
        check("event", event.id, "session", event.session_id)
    return problems


def rows_to_csv(rows: Sequence[Any], columns: Optional[Sequence[str]] = None) -> str:
    """Serialize entity rows (or plain dicts) to CSV in canonical column order."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    first = True
    for row in rows:
        mapping = row.to_dict() if hasattr(row, "to_dict") else dict(row)
        if first:
            columns = list(columns) if columns is not None else list(mapping)
            writer.writerow(columns)
            first = False
        writer.writerow([_csv_cell(mapping.get(c)) for c in columns])
    if first:
        writer.writerow(list(columns) if columns is not None else [])
    return out.getvalue()


def _csv_cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def canonical_fingerprint(snapshot: StoreSnapshot) -> str:
    """Store contents with ids rewritten to insertion-order aliases.

    Two stores built by replaying the same log have equal fingerprints
    even though their UUIDs differ.
    """
    alias: dict[str, str] = {}
    for name in TABLES:
        for index, row_id in enumerate(snapshot.table(name)):
            alias[row_id] = f"{name}:{index}"

    ref_fields = {"id", "product_id", "namespace_id", "type_id", "method_id",
                  "session_id", "developer_id", "task_id",
                  "invoking_method_id", "invoked_method_id"}
    dump: list[Any] = []
    for name in TABLES:
        for row in snapshot.table(name).values():
            mapping = row.to_dict()
            for key, value in mapping.items():
                if key in ref_fields and isinstance(value, str):
                    mapping[key] = alias.get(value, value)
                if key == "payload" and isinstance(value, dict):
                    mapping[key] = {k: alias.get(v, v) for k, v in value.items()}
            dump.append([name, mapping])
    return canonical_json(dump)
