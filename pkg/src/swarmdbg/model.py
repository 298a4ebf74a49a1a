"""Domain model for debugging-session telemetry.

Every entity is an immutable value (frozen dataclass) validated at
construction. Mutation happens only through the store module, which
replaces whole rows. All timestamps are epoch milliseconds UTC, all ids
are server-assigned opaque strings (UUID format).

Serialization is centralized here: ``to_dict`` emits the canonical
snake_case field mapping used verbatim by the wire protocol, the JSONL
session log, and every export. ``canonical_json`` is the one JSON
encoder in the codebase, so equal values always produce equal bytes.
"""

from __future__ import annotations

import json
import re
import uuid
from dataclasses import dataclass, fields
from enum import Enum
from typing import Any, Mapping, Optional, Sequence

from .errors import InvalidLine, InvalidValue

__all__ = [
    "BreakpointKind",
    "Breakpoint",
    "DebugEvent",
    "Developer",
    "EventKind",
    "Invocation",
    "MethodEntity",
    "Namespace",
    "Product",
    "Session",
    "SessionOutcome",
    "SourceLocation",
    "StreamViolation",
    "Task",
    "TypeEntity",
    "TASK_COLOR_PALETTE",
    "canonical_json",
    "new_id",
    "validate_event_stream",
]


def new_id() -> str:
    return str(uuid.uuid4())


def canonical_json(value: Any) -> str:
    """Render a JSON value compactly with keys in insertion order."""
    return json.dumps(value, separators=(",", ":"), ensure_ascii=False)


class SessionOutcome(str, Enum):
    FAULT_FOUND = "FaultFound"
    FAULT_NOT_FOUND = "FaultNotFound"
    ABANDONED = "Abandoned"
    OPEN = "Open"


class BreakpointKind(str, Enum):
    LINE = "Line"
    CONDITIONAL = "Conditional"
    WATCHPOINT = "Watchpoint"


class EventKind(str, Enum):
    BREAKPOINT_ADDED = "BreakpointAdded"
    BREAKPOINT_REMOVED = "BreakpointRemoved"
    STEP_INTO = "StepInto"
    STEP_OVER = "StepOver"
    STEP_RETURN = "StepReturn"
    SUSPEND = "Suspend"
    RESUME = "Resume"
    SESSION_START = "SessionStart"
    SESSION_END = "SessionEnd"


STEP_KINDS = frozenset({EventKind.STEP_INTO, EventKind.STEP_OVER, EventKind.STEP_RETURN})

# Edge colors are handed out to tasks round-robin at creation time.
TASK_COLOR_PALETTE: tuple[str, ...] = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
    "#aec7e8",
    "#ffbb78",
)

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")


def _parse_enum(enum_cls: type, raw: Any, what: str):
    try:
        return enum_cls(raw)
    except ValueError:
        raise InvalidValue(f"unknown {what}: {raw!r}") from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidValue(message)


def _require_ms(value: Any, what: str) -> None:
    _require(isinstance(value, int) and not isinstance(value, bool) and value >= 0,
             f"{what} must be a non-negative epoch-ms integer")


class _Canonical:
    """Shared canonical-mapping behaviour for all entities."""

    _ENUM_FIELDS: Mapping[str, type] = {}

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Enum):
                value = value.value
            out[f.name] = value
        return out

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]):
        names = {f.name for f in fields(cls)}
        unknown = set(raw) - names
        _require(not unknown, f"unknown fields for {cls.__name__}: {sorted(unknown)}")
        missing = names - set(raw)
        _require(not missing, f"missing fields for {cls.__name__}: {sorted(missing)}")
        kwargs = dict(raw)
        for name, enum_cls in cls._ENUM_FIELDS.items():
            kwargs[name] = _parse_enum(enum_cls, kwargs[name], name)
        return cls(**kwargs)


@dataclass(frozen=True)
class Developer(_Canonical):
    id: str
    name: str

    def __post_init__(self) -> None:
        _require(bool(self.name), "developer name must be non-empty")


@dataclass(frozen=True)
class Product(_Canonical):
    id: str
    name: str

    def __post_init__(self) -> None:
        _require(bool(self.name), "product name must be non-empty")


@dataclass(frozen=True)
class Task(_Canonical):
    id: str
    product_id: str
    issue_key: str
    title: str
    display_color: str

    def __post_init__(self) -> None:
        _require(bool(self.issue_key), "task issue_key must be non-empty")
        _require(_COLOR_RE.match(self.display_color) is not None,
                 f"display_color must be #RRGGBB, got {self.display_color!r}")


@dataclass(frozen=True)
class Session(_Canonical):
    id: str
    developer_id: str
    task_id: str
    product_id: str
    started_at: int
    finished_at: Optional[int]
    outcome: SessionOutcome
    label: str

    _ENUM_FIELDS = {"outcome": SessionOutcome}

    def __post_init__(self) -> None:
        _require_ms(self.started_at, "started_at")
        if self.finished_at is not None:
            _require_ms(self.finished_at, "finished_at")
            _require(self.finished_at >= self.started_at,
                     "finished_at must not precede started_at")
        if self.outcome is not SessionOutcome.OPEN:
            _require(self.finished_at is not None,
                     "closed session needs finished_at")

    @property
    def is_open(self) -> bool:
        return self.outcome is SessionOutcome.OPEN


@dataclass(frozen=True)
class Namespace(_Canonical):
    id: str
    product_id: str
    full_name: str


@dataclass(frozen=True)
class TypeEntity(_Canonical):
    id: str
    product_id: str
    namespace_id: str
    simple_name: str
    full_name: str
    source_path: Optional[str]
    has_source: bool

    def __post_init__(self) -> None:
        _require(bool(self.full_name), "type full_name must be non-empty")
        _require(bool(self.simple_name), "type simple_name must be non-empty")


@dataclass(frozen=True)
class MethodEntity(_Canonical):
    id: str
    type_id: str
    signature: str
    declared_line: Optional[int]

    def __post_init__(self) -> None:
        _require(bool(self.signature), "method signature must be non-empty")
        if self.declared_line is not None:
            _require(isinstance(self.declared_line, int) and self.declared_line >= 1,
                     "declared_line must be a 1-based integer")

    @property
    def name(self) -> str:
        """Signature without the parameter list."""
        return self.signature.split("(", 1)[0]


@dataclass(frozen=True)
class Breakpoint(_Canonical):
    id: str
    session_id: str
    type_id: str
    method_id: Optional[str]
    line_number: int
    kind: BreakpointKind
    condition: Optional[str]
    created_at: int

    _ENUM_FIELDS = {"kind": BreakpointKind}

    def __post_init__(self) -> None:
        if not (isinstance(self.line_number, int) and self.line_number >= 1):
            raise InvalidLine(f"line_number must be >= 1, got {self.line_number!r}")
        _require_ms(self.created_at, "created_at")
        if self.kind is BreakpointKind.CONDITIONAL:
            _require(self.condition is not None, "Conditional breakpoint needs a condition")
        else:
            _require(self.condition is None,
                     f"{self.kind.value} breakpoint must not carry a condition")


@dataclass(frozen=True)
class Invocation(_Canonical):
    id: str
    session_id: str
    invoking_method_id: str
    invoked_method_id: str
    occurred_at: int

    def __post_init__(self) -> None:
        _require_ms(self.occurred_at, "occurred_at")


@dataclass(frozen=True)
class DebugEvent(_Canonical):
    id: str
    session_id: str
    kind: EventKind
    occurred_at: int
    payload: Optional[Mapping[str, str]]

    _ENUM_FIELDS = {"kind": EventKind}

    def __post_init__(self) -> None:
        _require_ms(self.occurred_at, "occurred_at")
        if self.payload is not None:
            ok = all(isinstance(k, str) and isinstance(v, str)
                     for k, v in self.payload.items())
            _require(ok, "event payload must map strings to strings")
            object.__setattr__(self, "payload", dict(self.payload))

    def to_dict(self) -> dict[str, Any]:
        out = super().to_dict()
        if out["payload"] is not None:
            out["payload"] = dict(out["payload"])
        return out


@dataclass(frozen=True)
class SourceLocation(_Canonical):
    type_full_name: str
    line_number: int

    def __post_init__(self) -> None:
        if not (isinstance(self.line_number, int) and self.line_number >= 1):
            raise InvalidLine(f"line_number must be >= 1, got {self.line_number!r}")


@dataclass(frozen=True)
class StreamViolation:
    kind: str  # OutOfOrderTimestamp | EventAfterEnd | MissingSessionStart
    index: int


def validate_event_stream(
    session: Session,
    events: Sequence[DebugEvent],
    continuation: bool = False,
) -> list[StreamViolation]:
    """Check an ordered event stream against the session stream rules.

    Violations are data, not failures: timestamps must be non-decreasing,
    the first event must be SessionStart unless the stream continues an
    earlier one, and nothing may follow SessionEnd.
    """
    violations: list[StreamViolation] = []
    previous_ts: Optional[int] = None
    ended = False
    for index, event in enumerate(events):
        if index == 0 and not continuation and event.kind is not EventKind.SESSION_START:
            violations.append(StreamViolation("MissingSessionStart", index))
        if previous_ts is not None and event.occurred_at < previous_ts:
            violations.append(StreamViolation("OutOfOrderTimestamp", index))
        if ended:
            violations.append(StreamViolation("EventAfterEnd", index))
        if event.kind is EventKind.SESSION_END:
            ended = True
        previous_ts = event.occurred_at
    return violations
