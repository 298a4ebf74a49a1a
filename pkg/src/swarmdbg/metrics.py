"""Quantitative analyses over stored telemetry.

Covers statement classification of breakpointed lines, per-session
timing metrics, population statistics, power-law fitting with rank
correlation, co-location tables, per-class task matrices, hot-spots,
breakpoint recommendations, and control/experiment group comparison.

Everything here is a pure function over a StoreSnapshot (or plain
values), so analyses can run concurrently and are trivially replayable.
Ratios that feed exact-identity checks are kept as Fractions until the
last moment; floats appear only in serialized output.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from statistics import fmean
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

import numpy as np
from scipy.stats import spearmanr

from .errors import (
    DegenerateInput,
    EmptyGroup,
    InvalidValue,
    MissingSource,
    NoDefinedMFB,
    NonPositive,
    SessionOpen,
)
from .model import EventKind, SourceLocation, TypeEntity, canonical_json
from .store import QueryFilter, StoreSnapshot, query_breakpoints

__all__ = [
    "StatementClass",
    "SessionMetrics",
    "FirstBreakpointStats",
    "TaskElapsed",
    "PowerLawFit",
    "DistributionRow",
    "ColocationGroup",
    "ColocationMode",
    "ClassTaskRow",
    "HotSpot",
    "HotSpotScope",
    "GroupStats",
    "GroupComparison",
    "FileSourceResolver",
    "classify_statement",
    "statement_type_distribution",
    "session_metrics",
    "first_breakpoint_stats",
    "fit_power_law",
    "colocated_breakpoints",
    "class_task_matrix",
    "method_hotspots",
    "recommend_breakpoints",
    "group_comparison",
    "round_half_up",
]


def round_half_up(value) -> int:
    """Round to the nearest integer; exact halves round up."""
    if isinstance(value, Fraction):
        return int(math.floor(value + Fraction(1, 2)))
    return int(math.floor(float(value) + 0.5))


class StatementClass(str, Enum):
    CALL = "Call"
    RETURN = "Return"
    ASSIGNMENT = "Assignment"
    IF_STATEMENT = "IfStatement"
    WHILE_LOOP = "WhileLoop"
    OTHER = "Other"


# -- statement classification -------------------------------------------


_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")
_CALL_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\(")


def _strip_comments_and_mask(line: str) -> str:
    """Drop comments and blank out string/char literal contents.

    Quote-aware: comment markers inside literals do not count. Block
    comments are removed when closed on the line, or cut to the end when
    not.
    """
    out: list[str] = []
    i = 0
    n = len(line)
    quote: Optional[str] = None
    while i < n:
        ch = line[i]
        if quote is not None:
            if ch == "\\" and i + 1 < n:
                out.append("  ")
                i += 2
                continue
            if ch == quote:
                out.append(ch)
                quote = None
            else:
                out.append(" ")
            i += 1
            continue
        if ch in "\"'":
            quote = ch
            out.append(ch)
            i += 1
            continue
        if ch == "/" and i + 1 < n and line[i + 1] == "/":
            break
        if ch == "/" and i + 1 < n and line[i + 1] == "*":
            end = line.find("*/", i + 2)
            if end == -1:
                break
            out.append(" ")
            i = end + 2
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def _has_top_level_assignment(masked: str) -> bool:
    depth = 0
    for i, ch in enumerate(masked):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        elif ch == "=" and depth == 0:
            prev = masked[i - 1] if i > 0 else ""
            nxt = masked[i + 1] if i + 1 < len(masked) else ""
            if prev in "=!<>" or nxt == "=":
                continue
            return True
    return False


def classify_statement(source_line: str) -> StatementClass:
    """Classify one source line by keyword, assignment, and call shape.

    Precedence: leading if / else-if, then while/for/do, then return,
    then a top-level ``=`` outside parentheses (comparison operators
    excluded), then an identifier immediately followed by ``(``.
    """
    masked = _strip_comments_and_mask(source_line).strip()
    if not masked:
        return StatementClass.OTHER
    tokens = _IDENT_RE.findall(masked)
    first = tokens[0] if tokens else ""
    if first == "if" or (first == "else" and len(tokens) > 1 and tokens[1] == "if"):
        return StatementClass.IF_STATEMENT
    if first in ("while", "for", "do"):
        return StatementClass.WHILE_LOOP
    if first == "return":
        return StatementClass.RETURN
    if _has_top_level_assignment(masked):
        return StatementClass.ASSIGNMENT
    if _CALL_RE.search(masked):
        return StatementClass.CALL
    return StatementClass.OTHER


class FileSourceResolver:
    """Resolve (type, line) to source text via TypeEntity.source_path."""

    def __init__(self, project_root: str):
        self._root = project_root
        self._cache: dict[str, list[str]] = {}

    def __call__(self, entity: TypeEntity, line_number: int) -> str:
        if not entity.has_source or not entity.source_path:
            raise MissingSource(f"no source for type {entity.full_name}")
        lines = self._cache.get(entity.source_path)
        if lines is None:
            path = os.path.join(self._root, entity.source_path)
            try:
                with open(path, "r", encoding="utf-8") as f:
                    lines = f.read().splitlines()
            except OSError as exc:
                raise MissingSource(f"cannot read {path}: {exc}") from exc
            self._cache[entity.source_path] = lines
        if not (1 <= line_number <= len(lines)):
            raise MissingSource(
                f"{entity.full_name}:{line_number} outside file ({len(lines)} lines)")
        return lines[line_number - 1]


@dataclass(frozen=True)
class DistributionRow:
    statement_class: StatementClass
    count: int
    percent: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "statement_class": self.statement_class.value,
            "count": self.count,
            "percent": self.percent,
        }


def statement_type_distribution(
    snapshot: StoreSnapshot,
    filt: QueryFilter,
    source_resolver: Callable[[TypeEntity, int], str],
) -> list[DistributionRow]:
    """Classify every in-scope breakpoint's source line; sort by count."""
    counts: dict[StatementClass, int] = {}
    rows = query_breakpoints(snapshot, filt)
    for bp in rows:
        entity = snapshot.types.get(bp.type_id)
        if entity is None:
            raise MissingSource(f"breakpoint {bp.id} has no type row")
        text = source_resolver(entity, bp.line_number)
        if text is None:
            raise MissingSource(f"{entity.full_name}:{bp.line_number} unresolvable")
        cls = classify_statement(text)
        counts[cls] = counts.get(cls, 0) + 1
    total = sum(counts.values())
    out = [
        DistributionRow(
            statement_class=cls,
            count=count,
            percent=round_half_up(Fraction(100 * count, total)) if total else 0,
        )
        for cls, count in counts.items()
    ]
    out.sort(key=lambda r: (-r.count, r.statement_class.value))
    return out


# -- session timing ------------------------------------------------------


@dataclass(frozen=True)
class SessionMetrics:
    """Timing profile of one closed session.

    ``first_breakpoint_ratio`` is the share of the session spent before
    the first breakpoint was set; it stays a Fraction so that
    ratio × elapsed reproduces the first-breakpoint delay exactly.
    """

    session_id: str
    task_issue_key: str
    started_at: int
    finished_at: int
    first_breakpoint_at: Optional[int]
    elapsed_ms: int
    first_breakpoint_elapsed_ms: Optional[int]
    first_breakpoint_ratio: Optional[Fraction]

    def to_dict(self) -> dict[str, Any]:
        ratio = self.first_breakpoint_ratio
        return {
            "session_id": self.session_id,
            "task_issue_key": self.task_issue_key,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "first_breakpoint_at": self.first_breakpoint_at,
            "elapsed_ms": self.elapsed_ms,
            "first_breakpoint_elapsed_ms": self.first_breakpoint_elapsed_ms,
            "first_breakpoint_ratio": None if ratio is None else float(ratio),
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def session_metrics(snapshot: StoreSnapshot, session_id: str) -> SessionMetrics:
    session = snapshot.session_or_fail(session_id)
    if session.finished_at is None:
        raise SessionOpen(f"session {session_id} has not ended")
    elapsed = session.finished_at - session.started_at
    bps = snapshot.breakpoints_of_session(session_id)
    first_at: Optional[int] = min((b.created_at for b in bps), default=None)
    first_elapsed: Optional[int] = None
    ratio: Optional[Fraction] = None
    if first_at is not None:
        first_elapsed = first_at - session.started_at
        if elapsed > 0:
            ratio = Fraction(first_elapsed, elapsed)
        else:
            ratio = Fraction(0)
    task = snapshot.tasks.get(session.task_id)
    return SessionMetrics(
        session_id=session_id,
        task_issue_key=task.issue_key if task else "",
        started_at=session.started_at,
        finished_at=session.finished_at,
        first_breakpoint_at=first_at,
        elapsed_ms=elapsed,
        first_breakpoint_elapsed_ms=first_elapsed,
        first_breakpoint_ratio=ratio,
    )


@dataclass(frozen=True)
class TaskElapsed:
    sessions: int
    elapsed_mean_ms: float
    elapsed_sd_ms: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "sessions": self.sessions,
            "elapsed_mean_ms": self.elapsed_mean_ms,
            "elapsed_sd_ms": self.elapsed_sd_ms,
        }


@dataclass(frozen=True)
class FirstBreakpointStats:
    ratio_mean: float
    ratio_sd: float
    sessions_with_ratio: int
    per_task: Mapping[str, TaskElapsed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "ratio_mean": self.ratio_mean,
            "ratio_sd": self.ratio_sd,
            "sessions_with_ratio": self.sessions_with_ratio,
            "per_task": {key: row.to_dict() for key, row in sorted(self.per_task.items())},
        }


def _population_sd(values: Sequence[Fraction]) -> float:
    n = len(values)
    mean = sum(values, Fraction(0)) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return math.sqrt(var)


def first_breakpoint_stats(metrics: Iterable[SessionMetrics]) -> FirstBreakpointStats:
    """Population mean/sd of the first-breakpoint ratio plus per-task timing."""
    metrics = list(metrics)
    ratios = [m.first_breakpoint_ratio for m in metrics
              if m.first_breakpoint_ratio is not None]
    if not ratios:
        raise NoDefinedMFB("no session has a first breakpoint and an end time")
    mean = sum(ratios, Fraction(0)) / len(ratios)
    per_task: dict[str, TaskElapsed] = {}
    for key in sorted({m.task_issue_key for m in metrics}):
        elapsed = [Fraction(m.elapsed_ms) for m in metrics if m.task_issue_key == key]
        per_task[key] = TaskElapsed(
            sessions=len(elapsed),
            elapsed_mean_ms=float(fmean(float(e) for e in elapsed)),
            elapsed_sd_ms=_population_sd(elapsed),
        )
    return FirstBreakpointStats(
        ratio_mean=float(mean),
        ratio_sd=_population_sd(ratios),
        sessions_with_ratio=len(ratios),
        per_task=per_task,
    )


# -- correlation and fit ---------------------------------------------------


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of y = alpha / x**beta on the log-log plane."""

    alpha: float
    beta: float
    rho: float
    n: int
    pearson_log: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "rho": self.rho,
            "n": self.n,
            "pearson_log": self.pearson_log,
        }


def fit_power_law(points: Sequence[tuple[float, float]]) -> PowerLawFit:
    if len(points) < 2:
        raise DegenerateInput(f"need at least 2 points, got {len(points)}")
    xs = np.asarray([p[0] for p in points], dtype=float)
    ys = np.asarray([p[1] for p in points], dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise NonPositive("power-law fit needs strictly positive coordinates")
    if np.all(xs == xs[0]):
        raise DegenerateInput("all x values equal; slope undefined")
    ln_x = np.log(xs)
    ln_y = np.log(ys)
    slope, intercept = np.polyfit(ln_x, ln_y, 1)
    result = spearmanr(xs, ys)
    rho = float(getattr(result, "statistic", getattr(result, "correlation", None)))
    if np.all(ln_y == ln_y[0]):
        pearson = 0.0
    else:
        pearson = float(np.corrcoef(ln_x, ln_y)[0, 1])
    return PowerLawFit(
        alpha=float(np.exp(intercept)),
        beta=float(-slope),
        rho=rho,
        n=len(points),
        pearson_log=pearson,
    )


# -- co-location and hot-spots ----------------------------------------------


class ColocationMode(str, Enum):
    SAME_TASK = "SameTask"
    ACROSS_TASKS = "AcrossTasks"


@dataclass(frozen=True)
class ColocationGroup:
    location: SourceLocation
    task_issue_keys: tuple[str, ...]
    breakpoint_count: int
    distinct_developers: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "type_full_name": self.location.type_full_name,
            "line_number": self.location.line_number,
            "task_issue_keys": list(self.task_issue_keys),
            "breakpoint_count": self.breakpoint_count,
            "distinct_developers": self.distinct_developers,
        }


def _simple_name(full_name: str) -> str:
    return full_name.rpartition(".")[2]


def colocated_breakpoints(
    snapshot: StoreSnapshot,
    filt: QueryFilter,
    mode: ColocationMode | str = ColocationMode.SAME_TASK,
) -> list[ColocationGroup]:
    """Lines carrying ≥2 breakpoints from ≥2 developers, grouped by mode."""
    mode = ColocationMode(mode)
    groups: dict[tuple, list] = {}
    for bp in query_breakpoints(snapshot, filt):
        session = snapshot.sessions[bp.session_id]
        entity = snapshot.types[bp.type_id]
        key: tuple = (entity.full_name, bp.line_number)
        if mode is ColocationMode.SAME_TASK:
            key = key + (session.task_id,)
        groups.setdefault(key, []).append((bp, session))
    out: list[ColocationGroup] = []
    for key, members in groups.items():
        if len(members) < 2:
            continue
        developers = {session.developer_id for _, session in members}
        if len(developers) < 2:
            continue
        task_keys = sorted({
            snapshot.tasks[session.task_id].issue_key for _, session in members
        })
        out.append(ColocationGroup(
            location=SourceLocation(type_full_name=key[0], line_number=key[1]),
            task_issue_keys=tuple(task_keys),
            breakpoint_count=len(members),
            distinct_developers=len(developers),
        ))
    out.sort(key=lambda g: (
        _simple_name(g.location.type_full_name),
        g.location.type_full_name,
        g.location.line_number,
        g.task_issue_keys,
    ))
    return out


@dataclass(frozen=True)
class ClassTaskRow:
    type_full_name: str
    simple_name: str
    task_issue_keys: tuple[str, ...]
    breakpoint_count: int
    developer_diversity: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "type_full_name": self.type_full_name,
            "simple_name": self.simple_name,
            "task_issue_keys": list(self.task_issue_keys),
            "breakpoint_count": self.breakpoint_count,
            "developer_diversity": self.developer_diversity,
        }


def class_task_matrix(snapshot: StoreSnapshot, filt: QueryFilter) -> list[ClassTaskRow]:
    """Types whose breakpoints span at least two tasks."""
    by_type: dict[str, list] = {}
    for bp in query_breakpoints(snapshot, filt):
        by_type.setdefault(bp.type_id, []).append(bp)
    rows: list[ClassTaskRow] = []
    for type_id, bps in by_type.items():
        entity = snapshot.types[type_id]
        sessions = [snapshot.sessions[bp.session_id] for bp in bps]
        task_ids = {s.task_id for s in sessions}
        if len(task_ids) < 2:
            continue
        rows.append(ClassTaskRow(
            type_full_name=entity.full_name,
            simple_name=entity.simple_name,
            task_issue_keys=tuple(sorted(
                snapshot.tasks[tid].issue_key for tid in task_ids)),
            breakpoint_count=len(bps),
            developer_diversity=len({s.developer_id for s in sessions}),
        ))
    rows.sort(key=lambda r: (r.simple_name, r.type_full_name))
    return rows


class HotSpotScope(str, Enum):
    LINE = "Line"
    METHOD = "Method"
    CLASS = "Class"


@dataclass(frozen=True)
class HotSpot:
    scope: HotSpotScope
    type_full_name: str
    method_signature: Optional[str]
    line_number: Optional[int]
    breakpoint_count: int
    distinct_developers: int
    distinct_tasks: int

    @property
    def display_name(self) -> str:
        simple = self.type_full_name.rpartition(".")[2]
        if self.scope is HotSpotScope.METHOD and self.method_signature:
            return f"{simple}.{self.method_signature.split('(', 1)[0]}"
        if self.scope is HotSpotScope.LINE and self.line_number is not None:
            return f"{simple}:{self.line_number}"
        return simple

    def to_dict(self) -> dict[str, Any]:
        return {
            "scope": self.scope.value,
            "type_full_name": self.type_full_name,
            "method_signature": self.method_signature,
            "line_number": self.line_number,
            "breakpoint_count": self.breakpoint_count,
            "distinct_developers": self.distinct_developers,
            "distinct_tasks": self.distinct_tasks,
        }


def method_hotspots(
    snapshot: StoreSnapshot,
    filt: QueryFilter,
    min_count: int = 1,
) -> list[HotSpot]:
    """Methods accumulating at least ``min_count`` breakpoints."""
    if min_count < 1:
        raise InvalidValue(f"min_count must be >= 1, got {min_count}")
    by_method: dict[str, list] = {}
    for bp in query_breakpoints(snapshot, filt):
        if bp.method_id is None:
            continue
        by_method.setdefault(bp.method_id, []).append(bp)
    out: list[HotSpot] = []
    for method_id, bps in by_method.items():
        if len(bps) < min_count:
            continue
        method = snapshot.methods[method_id]
        entity = snapshot.types[method.type_id]
        sessions = [snapshot.sessions[bp.session_id] for bp in bps]
        out.append(HotSpot(
            scope=HotSpotScope.METHOD,
            type_full_name=entity.full_name,
            method_signature=method.signature,
            line_number=None,
            breakpoint_count=len(bps),
            distinct_developers=len({s.developer_id for s in sessions}),
            distinct_tasks=len({s.task_id for s in sessions}),
        ))
    out.sort(key=lambda h: (-h.breakpoint_count, h.display_name,
                            h.method_signature or ""))
    return out


def recommend_breakpoints(
    snapshot: StoreSnapshot,
    product_id: str,
    k: int = 10,
    context_session_id: Optional[str] = None,
) -> list[HotSpot]:
    """Top-k breakpoint lines of a product, hottest first.

    Lines the querying session already breakpointed are excluded, so the
    caller only sees locations that would be new to them.
    """
    if k < 1:
        raise InvalidValue(f"k must be >= 1, got {k}")
    exclude: set[tuple[str, int]] = set()
    if context_session_id is not None:
        for bp in snapshot.breakpoints_of_session(context_session_id):
            entity = snapshot.types[bp.type_id]
            exclude.add((entity.full_name, bp.line_number))
    by_line: dict[tuple[str, int], list] = {}
    for bp in query_breakpoints(snapshot, QueryFilter(product_id=product_id)):
        entity = snapshot.types[bp.type_id]
        key = (entity.full_name, bp.line_number)
        if key in exclude:
            continue
        by_line.setdefault(key, []).append(bp)
    spots: list[HotSpot] = []
    for (full_name, line), bps in by_line.items():
        sessions = [snapshot.sessions[bp.session_id] for bp in bps]
        spots.append(HotSpot(
            scope=HotSpotScope.LINE,
            type_full_name=full_name,
            method_signature=None,
            line_number=line,
            breakpoint_count=len(bps),
            distinct_developers=len({s.developer_id for s in sessions}),
            distinct_tasks=len({s.task_id for s in sessions}),
        ))
    spots.sort(key=lambda h: (
        -h.breakpoint_count,
        -h.distinct_developers,
        -h.distinct_tasks,
        h.type_full_name.rpartition(".")[2],
        h.type_full_name,
        h.line_number,
    ))
    return spots[:k]


# -- group comparison --------------------------------------------------------


@dataclass(frozen=True)
class GroupStats:
    sessions: int
    first_breakpoint_ms: Optional[Fraction]
    time_to_start_ms: Optional[Fraction]
    elapsed_ms: Optional[Fraction]

    def to_dict(self) -> dict[str, Any]:
        def f(v: Optional[Fraction]) -> Optional[float]:
            return None if v is None else float(v)

        return {
            "sessions": self.sessions,
            "first_breakpoint_ms": f(self.first_breakpoint_ms),
            "time_to_start_ms": f(self.time_to_start_ms),
            "elapsed_ms": f(self.elapsed_ms),
        }


COMPARISON_METRICS = ("first_breakpoint", "time_to_start", "elapsed")


@dataclass(frozen=True)
class GroupComparison:
    control: GroupStats
    experiment: GroupStats
    delta_seconds: Mapping[str, Optional[float]]
    ratio_percent: Mapping[str, Optional[int]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "control": self.control.to_dict(),
            "experiment": self.experiment.to_dict(),
            "delta_seconds": {k: self.delta_seconds[k] for k in COMPARISON_METRICS},
            "ratio_percent": {k: self.ratio_percent[k] for k in COMPARISON_METRICS},
        }


def _session_timings(snapshot: StoreSnapshot, session_id: str) -> dict[str, Optional[int]]:
    session = snapshot.session_or_fail(session_id)
    bps = snapshot.breakpoints_of_session(session_id)
    first_bp = min((b.created_at for b in bps), default=None)
    resume_at: Optional[int] = None
    for event in snapshot.events_of_session(session_id):
        if event.kind is EventKind.RESUME and event.occurred_at >= session.started_at:
            resume_at = event.occurred_at
            break
    return {
        "first_breakpoint": None if first_bp is None else first_bp - session.started_at,
        "time_to_start": None if resume_at is None else resume_at - session.started_at,
        "elapsed": None if session.finished_at is None
        else session.finished_at - session.started_at,
    }


def _group_stats(snapshot: StoreSnapshot, session_ids: Sequence[str]) -> GroupStats:
    samples: dict[str, list[int]] = {m: [] for m in COMPARISON_METRICS}
    for session_id in session_ids:
        timings = _session_timings(snapshot, session_id)
        for metric, value in timings.items():
            if value is not None:
                samples[metric].append(value)

    def mean(metric: str) -> Optional[Fraction]:
        values = samples[metric]
        if not values:
            return None
        return Fraction(sum(values), len(values))

    return GroupStats(
        sessions=len(session_ids),
        first_breakpoint_ms=mean("first_breakpoint"),
        time_to_start_ms=mean("time_to_start"),
        elapsed_ms=mean("elapsed"),
    )


def group_comparison(
    snapshot: StoreSnapshot,
    control_session_ids: Sequence[str],
    experiment_session_ids: Sequence[str],
) -> GroupComparison:
    """Mean timing comparison between a control and an experiment group.

    delta_seconds is control minus experiment; ratio_percent is the
    experiment mean as a rounded percentage of the control mean.
    """
    if not control_session_ids or not experiment_session_ids:
        raise EmptyGroup("both groups need at least one session")
    control = _group_stats(snapshot, control_session_ids)
    experiment = _group_stats(snapshot, experiment_session_ids)
    deltas: dict[str, Optional[float]] = {}
    ratios: dict[str, Optional[int]] = {}
    pairs = {
        "first_breakpoint": (control.first_breakpoint_ms, experiment.first_breakpoint_ms),
        "time_to_start": (control.time_to_start_ms, experiment.time_to_start_ms),
        "elapsed": (control.elapsed_ms, experiment.elapsed_ms),
    }
    for metric, (c, e) in pairs.items():
        if c is None or e is None:
            deltas[metric] = None
            ratios[metric] = None
            continue
        deltas[metric] = float((c - e) / 1000)
        ratios[metric] = None if c == 0 else round_half_up(Fraction(100) * e / c)
    return GroupComparison(
        control=control,
        experiment=experiment,
        delta_seconds=deltas,
        ratio_percent=ratios,
    )
