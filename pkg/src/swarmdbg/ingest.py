"""Telemetry ingestion: session lifecycle, stack-snapshot foraging, JSONL replay.

The ingestor enforces the rules the offline validator
(:func:`swarmdbg.model.validate_event_stream`) checks after the fact:
timestamps never decrease within a session, nothing lands on a closed
session, and every accepted write reaches the store before the call
returns. Client timestamps are trusted (no cross-client clock sync);
when a record carries none, the server clock is used.

Invocations are foraged, not traced: each step event contributes only
the adjacent caller/callee pairs of its stack snapshot, de-duplicated
per session by (invoking, invoked, top-of-stack line). The
de-duplication memory is per-ingestor; replaying a log through a fresh
store reproduces the same rows.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional

from .errors import (
    AlreadyClosed,
    EmptySnapshot,
    InvalidLine,
    InvalidValue,
    OutOfOrderTimestamp,
    SessionClosed,
    SwarmError,
    UnknownProduct,
    UnknownSession,
    UnknownTask,
    UnreadableStream,
)
from .model import (
    STEP_KINDS,
    Breakpoint,
    BreakpointKind,
    DebugEvent,
    Developer,
    EventKind,
    Invocation,
    MethodEntity,
    Namespace,
    Product,
    Session,
    SessionOutcome,
    Task,
    TypeEntity,
    canonical_json,
    new_id,
)
from .store import Store

LOG_RECORD_KINDS = ("session_open", "breakpoint", "event", "invocation", "session_close")


@dataclass(frozen=True)
class StackFrame:
    type_full_name: str
    method_signature: str
    line_number: int


@dataclass(frozen=True)
class StackSnapshot:
    """Captured call stack, innermost frame first."""

    frames: tuple[StackFrame, ...]

    @classmethod
    def from_list(cls, raw: Any) -> "StackSnapshot":
        if not isinstance(raw, list):
            raise InvalidValue("frames must be a list")
        frames = []
        for item in raw:
            try:
                frames.append(StackFrame(
                    type_full_name=item["type_full_name"],
                    method_signature=item["method_signature"],
                    line_number=int(item["line_number"]),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidValue(f"bad stack frame: {item!r}") from exc
        return cls(frames=tuple(frames))


@dataclass(frozen=True)
class SessionLogRecord:
    kind: str
    body: Mapping[str, Any]


@dataclass(frozen=True)
class IngestSummary:
    sessions_opened: int
    breakpoints: int
    events: int
    invocations: int
    rejected: int
    first_error: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "sessions_opened": self.sessions_opened,
            "breakpoints": self.breakpoints,
            "events": self.events,
            "invocations": self.invocations,
            "rejected": self.rejected,
            "first_error": self.first_error,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def _now_ms() -> int:
    return int(time.time() * 1000)


def split_type_name(full_name: str) -> tuple[str, str]:
    """Return (namespace full name, simple name) for a qualified type name."""
    head, sep, tail = full_name.rpartition(".")
    if not sep:
        return "(default)", full_name
    return head, tail


class Ingestor:
    """Write path bound to one store."""

    def __init__(self, store: Store, clock=_now_ms):
        self._store = store
        self._clock = clock
        self._last_ts: dict[str, int] = {}
        self._seen_pairs: set[tuple[str, str, str, int]] = set()
        snapshot = store.snapshot()
        for event in snapshot.events.values():
            prev = self._last_ts.get(event.session_id)
            if prev is None or event.occurred_at > prev:
                self._last_ts[event.session_id] = event.occurred_at

    # -- lifecycle -------------------------------------------------------

    def open_session(
        self,
        developer_name: str,
        product_name: str,
        task_issue_key: str,
        label: str = "",
        started_at: Optional[int] = None,
    ) -> Session:
        store = self._store
        with store.write_lock():
            snapshot = store.snapshot()
            product = snapshot.product_by_name(product_name)
            if product is None:
                raise UnknownProduct(f"no product named {product_name!r}")
            task = snapshot.task_by_key(product.id, task_issue_key)
            if task is None:
                raise UnknownTask(f"no task {task_issue_key!r} in product {product_name!r}")
            developer = next((d for d in snapshot.developers.values()
                              if d.name == developer_name), None)
            if developer is None:
                developer = store.insert_developer(Developer(id=new_id(), name=developer_name))
            ts = self._clock() if started_at is None else started_at
            session = store.insert_session(Session(
                id=new_id(),
                developer_id=developer.id,
                task_id=task.id,
                product_id=product.id,
                started_at=ts,
                finished_at=None,
                outcome=SessionOutcome.OPEN,
                label=label,
            ))
            self._append_event(session.id, EventKind.SESSION_START, ts, None)
            return session

    def close_session(
        self,
        session_id: str,
        outcome: SessionOutcome | str,
        finished_at: Optional[int] = None,
    ) -> Session:
        outcome = _parse_enum(SessionOutcome, outcome, "outcome")
        if outcome is SessionOutcome.OPEN:
            raise InvalidValue("close_session needs a terminal outcome")
        store = self._store
        with store.write_lock():
            session = store.snapshot().session_or_fail(session_id)
            if not session.is_open:
                raise AlreadyClosed(f"session {session_id} already closed")
            ts = self._clock() if finished_at is None else finished_at
            floor = max(self._last_ts.get(session_id, session.started_at),
                        session.started_at)
            if ts < floor:
                raise OutOfOrderTimestamp(
                    f"finished_at {ts} precedes last accepted timestamp {floor}")
            self._append_event(session_id, EventKind.SESSION_END, ts, None)
            return store.replace_session(Session(
                id=session.id,
                developer_id=session.developer_id,
                task_id=session.task_id,
                product_id=session.product_id,
                started_at=session.started_at,
                finished_at=ts,
                outcome=outcome,
                label=session.label,
            ))

    # -- telemetry -------------------------------------------------------

    def record_breakpoint(
        self,
        session_id: str,
        type_full_name: str,
        line_number: int,
        kind: BreakpointKind | str = BreakpointKind.LINE,
        condition: Optional[str] = None,
        created_at: Optional[int] = None,
    ) -> Breakpoint:
        kind = _parse_enum(BreakpointKind, kind, "breakpoint kind")
        if not (isinstance(line_number, int) and not isinstance(line_number, bool)
                and line_number >= 1):
            raise InvalidLine(f"line_number must be >= 1, got {line_number!r}")
        store = self._store
        with store.write_lock():
            session = self._open_session_or_fail(session_id)
            ts = self._clock() if created_at is None else created_at
            self._check_ts(session, ts)
            entity = self._ensure_type(session.product_id, type_full_name, with_source=True)
            method = self._resolve_method(entity.id, line_number)
            bp = store.insert_breakpoint(Breakpoint(
                id=new_id(),
                session_id=session_id,
                type_id=entity.id,
                method_id=None if method is None else method.id,
                line_number=line_number,
                kind=kind,
                condition=condition,
                created_at=ts,
            ))
            self._append_event(session_id, EventKind.BREAKPOINT_ADDED, ts,
                               {"breakpoint_id": bp.id})
            return bp

    def record_step_event(
        self,
        session_id: str,
        kind: EventKind | str,
        snapshot: StackSnapshot,
        occurred_at: Optional[int] = None,
    ) -> list[Invocation]:
        kind = _parse_enum(EventKind, kind, "event kind")
        if kind not in STEP_KINDS:
            raise InvalidValue(f"{kind.value} is not a step event")
        if not snapshot.frames:
            raise EmptySnapshot("stack snapshot has no frames")
        store = self._store
        with store.write_lock():
            session = self._open_session_or_fail(session_id)
            ts = self._clock() if occurred_at is None else occurred_at
            self._check_ts(session, ts)
            method_ids = [
                self._ensure_method(session.product_id, frame.type_full_name,
                                    frame.method_signature).id
                for frame in snapshot.frames
            ]
            self._append_event(session_id, kind, ts,
                               {"frame_count": str(len(snapshot.frames))})
            top_line = snapshot.frames[0].line_number
            created: list[Invocation] = []
            # Adjacent pairs, caller = outer frame, callee = inner frame.
            for inner in range(len(snapshot.frames) - 1):
                invoking = method_ids[inner + 1]
                invoked = method_ids[inner]
                key = (session_id, invoking, invoked, top_line)
                if key in self._seen_pairs:
                    continue
                self._seen_pairs.add(key)
                created.append(store.insert_invocation(Invocation(
                    id=new_id(),
                    session_id=session_id,
                    invoking_method_id=invoking,
                    invoked_method_id=invoked,
                    occurred_at=ts,
                )))
            return created

    def record_event(
        self,
        session_id: str,
        kind: EventKind | str,
        occurred_at: Optional[int] = None,
        payload: Optional[Mapping[str, str]] = None,
    ) -> DebugEvent:
        kind = _parse_enum(EventKind, kind, "event kind")
        if kind in STEP_KINDS:
            raise InvalidValue("step events need a stack snapshot; use record_step_event")
        if kind in (EventKind.SESSION_START, EventKind.SESSION_END,
                    EventKind.BREAKPOINT_ADDED):
            raise InvalidValue(f"{kind.value} events are emitted by lifecycle operations")
        store = self._store
        with store.write_lock():
            session = self._open_session_or_fail(session_id)
            ts = self._clock() if occurred_at is None else occurred_at
            self._check_ts(session, ts)
            return self._append_event(session_id, kind, ts,
                                      dict(payload) if payload else None)

    def record_invocation(
        self,
        session_id: str,
        invoking: tuple[str, str],
        invoked: tuple[str, str],
        occurred_at: Optional[int] = None,
    ) -> Invocation:
        """Persist an explicit invoking→invoked pair (no de-duplication)."""
        store = self._store
        with store.write_lock():
            session = self._open_session_or_fail(session_id)
            ts = self._clock() if occurred_at is None else occurred_at
            invoking_method = self._ensure_method(session.product_id, *invoking)
            invoked_method = self._ensure_method(session.product_id, *invoked)
            return store.insert_invocation(Invocation(
                id=new_id(),
                session_id=session_id,
                invoking_method_id=invoking_method.id,
                invoked_method_id=invoked_method.id,
                occurred_at=ts,
            ))

    # -- offline log replay ----------------------------------------------

    def import_session_log(self, lines: Iterable[str]) -> IngestSummary:
        opened = breakpoints = events = invocations = rejected = 0
        first_error: Optional[str] = None
        refs: dict[str, str] = {}
        try:
            iterator = iter(lines)
            while True:
                try:
                    line = next(iterator)
                except StopIteration:
                    break
                line = line.strip()
                if not line:
                    continue
                try:
                    record = _parse_record(line)
                    kind = record.kind
                    if kind == "session_open":
                        self._import_open(record.body, refs)
                        opened += 1
                    elif kind == "breakpoint":
                        self._import_breakpoint(record.body, refs)
                        breakpoints += 1
                    elif kind == "event":
                        invocations += self._import_event(record.body, refs)
                        events += 1
                    elif kind == "invocation":
                        self._import_invocation(record.body, refs)
                        invocations += 1
                    else:
                        self._import_close(record.body, refs)
                except SwarmError as exc:
                    rejected += 1
                    if first_error is None:
                        first_error = exc.code
        except (OSError, UnicodeDecodeError) as exc:
            raise UnreadableStream(str(exc)) from exc
        return IngestSummary(
            sessions_opened=opened,
            breakpoints=breakpoints,
            events=events,
            invocations=invocations,
            rejected=rejected,
            first_error=first_error,
        )

    def _import_open(self, body: Mapping[str, Any], refs: dict[str, str]) -> None:
        ref = _field(body, "session_ref", str)
        if ref in refs:
            raise InvalidValue(f"session_ref {ref!r} already bound")
        session = self.open_session(
            developer_name=_field(body, "developer_name", str),
            product_name=_field(body, "product_name", str),
            task_issue_key=_field(body, "task_issue_key", str),
            label=_field(body, "label", str, default=""),
            started_at=_field(body, "started_at", int, default=None),
        )
        refs[ref] = session.id

    def _import_breakpoint(self, body: Mapping[str, Any], refs: dict[str, str]) -> None:
        self.record_breakpoint(
            session_id=_resolve_ref(body, refs),
            type_full_name=_field(body, "type_full_name", str),
            line_number=_field(body, "line_number", int),
            kind=_field(body, "kind", str, default=BreakpointKind.LINE.value),
            condition=_field(body, "condition", str, default=None),
            created_at=_field(body, "created_at", int, default=None),
        )

    def _import_event(self, body: Mapping[str, Any], refs: dict[str, str]) -> int:
        session_id = _resolve_ref(body, refs)
        kind = _parse_enum(EventKind, _field(body, "kind", str), "event kind")
        occurred_at = _field(body, "occurred_at", int, default=None)
        if kind in STEP_KINDS:
            snapshot = StackSnapshot.from_list(body.get("frames", []))
            return len(self.record_step_event(session_id, kind, snapshot, occurred_at))
        payload = body.get("payload")
        if payload is not None and not isinstance(payload, dict):
            raise InvalidValue("event payload must be an object")
        self.record_event(session_id, kind, occurred_at, payload)
        return 0

    def _import_invocation(self, body: Mapping[str, Any], refs: dict[str, str]) -> None:
        def pair(key: str) -> tuple[str, str]:
            raw = body.get(key)
            if not isinstance(raw, Mapping):
                raise InvalidValue(f"invocation record needs object field {key!r}")
            return (_field(raw, "type_full_name", str),
                    _field(raw, "method_signature", str))

        self.record_invocation(
            session_id=_resolve_ref(body, refs),
            invoking=pair("invoking"),
            invoked=pair("invoked"),
            occurred_at=_field(body, "occurred_at", int, default=None),
        )

    def _import_close(self, body: Mapping[str, Any], refs: dict[str, str]) -> None:
        self.close_session(
            session_id=_resolve_ref(body, refs),
            outcome=_field(body, "outcome", str),
            finished_at=_field(body, "finished_at", int, default=None),
        )

    # -- helpers -----------------------------------------------------------

    def _open_session_or_fail(self, session_id: str) -> Session:
        session = self._store.snapshot().session_or_fail(session_id)
        if not session.is_open:
            raise SessionClosed(f"session {session_id} is closed")
        return session

    def _check_ts(self, session: Session, ts: int) -> None:
        floor = max(self._last_ts.get(session.id, session.started_at),
                    session.started_at)
        if ts < floor:
            raise OutOfOrderTimestamp(
                f"timestamp {ts} precedes last accepted timestamp {floor}")

    def _append_event(self, session_id: str, kind: EventKind, ts: int,
                      payload: Optional[dict[str, str]]) -> DebugEvent:
        event = self._store.insert_event(DebugEvent(
            id=new_id(), session_id=session_id, kind=kind,
            occurred_at=ts, payload=payload,
        ))
        prev = self._last_ts.get(session_id)
        if prev is None or ts > prev:
            self._last_ts[session_id] = ts
        return event

    def _ensure_type(self, product_id: str, full_name: str,
                     with_source: bool) -> TypeEntity:
        snapshot = self._store.snapshot()
        entity = snapshot.type_by_full_name(product_id, full_name)
        if entity is not None:
            if with_source and not entity.has_source:
                entity = self._store.replace_type(TypeEntity(
                    id=entity.id, product_id=entity.product_id,
                    namespace_id=entity.namespace_id,
                    simple_name=entity.simple_name, full_name=entity.full_name,
                    source_path=entity.source_path, has_source=True,
                ))
            return entity
        ns_name, simple = split_type_name(full_name)
        namespace = _get_or_create_namespace(self._store, product_id, ns_name)
        return self._store.insert_type(TypeEntity(
            id=new_id(), product_id=product_id, namespace_id=namespace.id,
            simple_name=simple, full_name=full_name,
            source_path=None, has_source=with_source,
        ))

    def _ensure_method(self, product_id: str, type_full_name: str,
                       signature: str) -> MethodEntity:
        entity = self._ensure_type(product_id, type_full_name, with_source=False)
        snapshot = self._store.snapshot()
        for method in snapshot.methods.values():
            if method.type_id == entity.id and method.signature == signature:
                return method
        return self._store.insert_method(MethodEntity(
            id=new_id(), type_id=entity.id, signature=signature, declared_line=None))

    def _resolve_method(self, type_id: str, line_number: int) -> Optional[MethodEntity]:
        best: Optional[MethodEntity] = None
        for method in self._store.snapshot().methods.values():
            if method.type_id != type_id or method.declared_line is None:
                continue
            if method.declared_line <= line_number:
                if best is None or method.declared_line > best.declared_line:
                    best = method
        return best


def _parse_record(line: str) -> SessionLogRecord:
    try:
        raw = json.loads(line)
    except ValueError as exc:
        raise InvalidValue(f"unparseable log line: {exc}") from None
    if not isinstance(raw, dict):
        raise InvalidValue("log record must be a JSON object")
    kind = raw.get("kind")
    body = raw.get("body")
    if kind not in LOG_RECORD_KINDS:
        raise InvalidValue(f"unknown record kind {kind!r}")
    if not isinstance(body, dict):
        raise InvalidValue("log record needs an object body")
    return SessionLogRecord(kind=kind, body=body)


def _resolve_ref(body: Mapping[str, Any], refs: Mapping[str, str]) -> str:
    ref = _field(body, "session_ref", str)
    session_id = refs.get(ref)
    if session_id is None:
        raise UnknownSession(f"unbound session_ref {ref!r}")
    return session_id


_MISSING = object()


def _parse_enum(enum_cls: type, value: Any, what: str):
    try:
        return enum_cls(value)
    except ValueError:
        raise InvalidValue(f"unknown {what} {value!r}") from None


def _field(body: Mapping[str, Any], name: str, expected: type, default: Any = _MISSING):
    value = body.get(name, _MISSING)
    if value is _MISSING or value is None:
        if default is _MISSING:
            raise InvalidValue(f"missing field {name!r}")
        return default
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidValue(f"field {name!r} must be an integer")
        return value
    if not isinstance(value, expected):
        raise InvalidValue(f"field {name!r} must be {expected.__name__}")
    return value


def _get_or_create_namespace(store: Store, product_id: str, full_name: str) -> Namespace:
    for ns in store.snapshot().namespaces.values():
        if ns.product_id == product_id and ns.full_name == full_name:
            return ns
    return store.insert_namespace(Namespace(
        id=new_id(), product_id=product_id, full_name=full_name))


def load_catalog(store: Store, catalog: Mapping[str, Any]) -> dict[str, int]:
    """Register products, tasks, namespaces, types, and methods.

    Existing rows (matched by their unique keys) are reused, so loading
    the same catalog twice is a no-op. Returns counts of created rows.
    """
    created = {"products": 0, "tasks": 0, "namespaces": 0, "types": 0, "methods": 0}
    with store.write_lock():
        namespaces_before = len(store.snapshot().namespaces)
        snapshot = store.snapshot()
        for product_spec in catalog.get("products", []):
            name = _field(product_spec, "name", str)
            product = snapshot.product_by_name(name)
            if product is None:
                product = store.insert_product(Product(id=new_id(), name=name))
                created["products"] += 1
            for task_spec in product_spec.get("tasks", []):
                key = _field(task_spec, "issue_key", str)
                snapshot = store.snapshot()
                if snapshot.task_by_key(product.id, key) is None:
                    store.insert_task(Task(
                        id=new_id(), product_id=product.id, issue_key=key,
                        title=_field(task_spec, "title", str, default=""),
                        display_color=store.next_task_color(),
                    ))
                    created["tasks"] += 1
            for ns_spec in product_spec.get("namespaces", []):
                full = _field(ns_spec, "full_name", str)
                _get_or_create_namespace(store, product.id, full)
            for type_spec in product_spec.get("types", []):
                full = _field(type_spec, "full_name", str)
                snapshot = store.snapshot()
                entity = snapshot.type_by_full_name(product.id, full)
                if entity is None:
                    ns_name, simple = split_type_name(full)
                    ns_name = _field(type_spec, "namespace", str, default=ns_name)
                    namespace = _get_or_create_namespace(store, product.id, ns_name)
                    entity = store.insert_type(TypeEntity(
                        id=new_id(), product_id=product.id, namespace_id=namespace.id,
                        simple_name=simple, full_name=full,
                        source_path=_field(type_spec, "source_path", str, default=None),
                        has_source=bool(type_spec.get("has_source", True)),
                    ))
                    created["types"] += 1
                for method_spec in type_spec.get("methods", []):
                    signature = _field(method_spec, "signature", str)
                    snapshot = store.snapshot()
                    exists = any(m.type_id == entity.id and m.signature == signature
                                 for m in snapshot.methods.values())
                    if not exists:
                        store.insert_method(MethodEntity(
                            id=new_id(), type_id=entity.id, signature=signature,
                            declared_line=_field(method_spec, "declared_line", int,
                                                 default=None),
                        ))
                        created["methods"] += 1
        created["namespaces"] = len(store.snapshot().namespaces) - namespaces_before
    return created
