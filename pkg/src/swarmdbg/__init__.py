"""Debugging-telemetry collection, storage, analytics, and export."""

from .errors import SwarmError
from .graphs import (
    CallGraph,
    CallGraphEdge,
    ExportFormat,
    Granularity,
    SequenceRow,
    build_call_graph,
    export_graph,
    layered_layout,
    sequence_stack_rows,
    starting_and_ending_methods,
)
from .ingest import IngestSummary, Ingestor, StackFrame, StackSnapshot, load_catalog
from .metrics import (
    ColocationMode,
    FirstBreakpointStats,
    GroupComparison,
    HotSpot,
    PowerLawFit,
    SessionMetrics,
    StatementClass,
    class_task_matrix,
    classify_statement,
    colocated_breakpoints,
    first_breakpoint_stats,
    fit_power_law,
    group_comparison,
    method_hotspots,
    recommend_breakpoints,
    session_metrics,
    statement_type_distribution,
)
from .model import (
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
    validate_event_stream,
)
from .search import SearchHit, SearchMode, SearchQuery, search_breakpoints
from .store import QueryFilter, Store, StoreSnapshot, TimeRange

__version__ = "0.1.0"

__all__ = [
    "Breakpoint",
    "BreakpointKind",
    "CallGraph",
    "CallGraphEdge",
    "ColocationMode",
    "DebugEvent",
    "Developer",
    "EventKind",
    "ExportFormat",
    "FirstBreakpointStats",
    "Granularity",
    "GroupComparison",
    "HotSpot",
    "IngestSummary",
    "Ingestor",
    "Invocation",
    "MethodEntity",
    "Namespace",
    "PowerLawFit",
    "Product",
    "QueryFilter",
    "SearchHit",
    "SearchMode",
    "SearchQuery",
    "SequenceRow",
    "Session",
    "SessionMetrics",
    "SessionOutcome",
    "StackFrame",
    "StackSnapshot",
    "StatementClass",
    "Store",
    "StoreSnapshot",
    "SwarmError",
    "Task",
    "TimeRange",
    "TypeEntity",
    "build_call_graph",
    "canonical_json",
    "class_task_matrix",
    "classify_statement",
    "colocated_breakpoints",
    "export_graph",
    "first_breakpoint_stats",
    "fit_power_law",
    "group_comparison",
    "layered_layout",
    "load_catalog",
    "method_hotspots",
    "recommend_breakpoints",
    "search_breakpoints",
    "sequence_stack_rows",
    "session_metrics",
    "starting_and_ending_methods",
    "statement_type_distribution",
    "validate_event_stream",
]
