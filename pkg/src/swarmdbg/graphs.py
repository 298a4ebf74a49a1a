"""Shared call-graph construction, layouts, sequence rows, and exports.

The call graph aggregates invocation rows at method or type granularity,
keeping one weighted edge per (source, target, task). Types without
available source are outside the project domain and never enter a
graph. Starting/ending sets, the layered layout, and the per-session
sequence stack rows are all derived from the same edge relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

from .errors import CyclicInvocation
from .model import canonical_json
from .store import QueryFilter, StoreSnapshot, query_invocations

__all__ = [
    "CallGraph",
    "CallGraphEdge",
    "ExportFormat",
    "Granularity",
    "SequenceRow",
    "StartingEndingResult",
    "build_call_graph",
    "export_graph",
    "layered_layout",
    "sequence_stack_rows",
    "starting_and_ending_methods",
]


class Granularity(str, Enum):
    TYPE_LEVEL = "TypeLevel"
    METHOD_LEVEL = "MethodLevel"


class ExportFormat(str, Enum):
    GVJSON = "GVJSON"
    DOT = "DOT"


@dataclass(frozen=True)
class CallGraphEdge:
    source: str
    target: str
    task_id: str
    weight: int


@dataclass(frozen=True)
class CallGraph:
    granularity: Granularity
    nodes: frozenset[str]
    edges: tuple[CallGraphEdge, ...]
    invoking_set: frozenset[str]
    invoked_set: frozenset[str]
    # Display metadata resolved at build time so exports need no snapshot.
    node_labels: Mapping[str, str]
    task_keys: Mapping[str, str]
    task_colors: Mapping[str, str]


@dataclass(frozen=True)
class StartingEndingResult:
    starting: frozenset[str]
    ending: frozenset[str]


@dataclass(frozen=True)
class SequenceRow:
    methods: tuple[str, ...]
    dotted_return_index: Optional[int]


def build_call_graph(
    snapshot: StoreSnapshot,
    filt: QueryFilter,
    granularity: Granularity | str = Granularity.TYPE_LEVEL,
) -> CallGraph:
    """Aggregate filtered invocation rows into a weighted task-tagged graph."""
    granularity = Granularity(granularity)
    weights: dict[tuple[str, str, str], int] = {}
    labels: dict[str, str] = {}
    task_keys: dict[str, str] = {}
    task_colors: dict[str, str] = {}
    for row in query_invocations(snapshot, filt):
        session = snapshot.sessions[row.session_id]
        invoking = snapshot.methods[row.invoking_method_id]
        invoked = snapshot.methods[row.invoked_method_id]
        src_type = snapshot.types[invoking.type_id]
        dst_type = snapshot.types[invoked.type_id]
        if not src_type.has_source or not dst_type.has_source:
            continue
        if granularity is Granularity.TYPE_LEVEL:
            src, dst = src_type.id, dst_type.id
            labels[src] = src_type.simple_name
            labels[dst] = dst_type.simple_name
        else:
            src, dst = invoking.id, invoked.id
            labels[src] = f"{src_type.simple_name}.{invoking.signature}"
            labels[dst] = f"{dst_type.simple_name}.{invoked.signature}"
        task = snapshot.tasks[session.task_id]
        task_keys[task.id] = task.issue_key
        task_colors[task.id] = task.display_color
        key = (src, dst, task.id)
        weights[key] = weights.get(key, 0) + 1
    edges = [
        CallGraphEdge(source=src, target=dst, task_id=task_id, weight=count)
        for (src, dst, task_id), count in weights.items()
    ]
    edges.sort(key=lambda e: (labels[e.source], labels[e.target],
                              task_keys[e.task_id], e.source, e.target, e.task_id))
    nodes = frozenset(labels)
    return CallGraph(
        granularity=granularity,
        nodes=nodes,
        edges=tuple(edges),
        invoking_set=frozenset(e.source for e in edges),
        invoked_set=frozenset(e.target for e in edges),
        node_labels=labels,
        task_keys=task_keys,
        task_colors=task_colors,
    )


def starting_and_ending_methods(graph: CallGraph) -> StartingEndingResult:
    """Nodes that only invoke, and nodes that are only invoked."""
    return StartingEndingResult(
        starting=graph.invoking_set - graph.invoked_set,
        ending=graph.invoked_set - graph.invoking_set,
    )


def layered_layout(graph: CallGraph) -> dict[str, int]:
    """Breadth-first layer per node; starting nodes sit in layer 0.

    Nodes unreachable from every starting node land one layer below the
    deepest assigned layer. A graph with no starting node at all (pure
    cycles) puts everything in layer 0 so the top layer stays nonempty.
    """
    adjacency: dict[str, set[str]] = {node: set() for node in graph.nodes}
    for edge in graph.edges:
        adjacency[edge.source].add(edge.target)
    starting = sorted(graph.invoking_set - graph.invoked_set)
    layers: dict[str, int] = {node: 0 for node in starting}
    frontier = list(starting)
    depth = 0
    while frontier:
        depth += 1
        nxt: list[str] = []
        for node in frontier:
            for succ in sorted(adjacency[node]):
                if succ not in layers:
                    layers[succ] = depth
                    nxt.append(succ)
        frontier = nxt
    unassigned = sorted(node for node in graph.nodes if node not in layers)
    if unassigned:
        overflow = 1 + max(layers.values()) if layers else 0
        for node in unassigned:
            layers[node] = overflow
    return layers


def sequence_stack_rows(snapshot: StoreSnapshot, session_id: str) -> list[SequenceRow]:
    """Root-to-leaf chains of one session's invocation relation.

    Rows come out in first-observation order; a row repeating the
    previous row's prefix marks the last shared position so renderers
    can draw the dotted return.
    """
    snapshot.session_or_fail(session_id)
    rows = [inv for inv in snapshot.invocations.values()
            if inv.session_id == session_id]
    rows.sort(key=lambda r: r.occurred_at)  # stable: ties keep insertion order

    edge_order: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for row in rows:
        pair = (row.invoking_method_id, row.invoked_method_id)
        if pair not in seen:
            seen.add(pair)
            edge_order.append(pair)
    if not edge_order:
        return []

    adjacency: dict[str, list[str]] = {}
    targets: set[str] = set()
    for src, dst in edge_order:
        adjacency.setdefault(src, [])
        if dst not in adjacency[src]:
            adjacency[src].append(dst)
        targets.add(dst)

    _reject_cycles(adjacency, session_id)

    roots = [src for src, _ in edge_order
             if src not in targets]
    ordered_roots: list[str] = []
    for root in roots:
        if root not in ordered_roots:
            ordered_roots.append(root)

    chains: list[tuple[str, ...]] = []

    def walk(node: str, path: list[str]) -> None:
        successors = adjacency.get(node, [])
        if not successors:
            chains.append(tuple(path))
            return
        for succ in successors:
            path.append(succ)
            walk(succ, path)
            path.pop()

    for root in ordered_roots:
        walk(root, [root])

    out: list[SequenceRow] = []
    previous: tuple[str, ...] = ()
    for chain in chains:
        shared = 0
        for a, b in zip(previous, chain):
            if a != b:
                break
            shared += 1
        out.append(SequenceRow(
            methods=chain,
            dotted_return_index=shared - 1 if shared > 0 else None,
        ))
        previous = chain
    return out


def _reject_cycles(adjacency: Mapping[str, list[str]], session_id: str) -> None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[str, int] = {}

    for start in adjacency:
        if color.get(start, WHITE) != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        color[start] = GRAY
        while stack:
            node, index = stack[-1]
            successors = adjacency.get(node, [])
            if index < len(successors):
                stack[-1] = (node, index + 1)
                succ = successors[index]
                state = color.get(succ, WHITE)
                if state == GRAY:
                    raise CyclicInvocation(
                        f"session {session_id} invocation relation is cyclic")
                if state == WHITE:
                    color[succ] = GRAY
                    stack.append((succ, 0))
            else:
                color[node] = BLACK
                stack.pop()


def export_graph(graph: CallGraph, format: ExportFormat | str = ExportFormat.GVJSON) -> bytes:
    format = ExportFormat(format)
    if format is ExportFormat.GVJSON:
        return _export_gvjson(graph)
    return _export_dot(graph)


def _export_gvjson(graph: CallGraph) -> bytes:
    nodes = [
        {"id": node, "label": graph.node_labels[node],
         "granularity": graph.granularity.value}
        for node in sorted(graph.nodes, key=lambda n: (graph.node_labels[n], n))
    ]
    edges = [
        {"source": e.source, "target": e.target, "task": e.task_id,
         "color": graph.task_colors[e.task_id], "weight": e.weight}
        for e in graph.edges
    ]
    return canonical_json({"nodes": nodes, "edges": edges}).encode("utf-8")


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _export_dot(graph: CallGraph) -> bytes:
    label_counts: dict[str, int] = {}
    for node in graph.nodes:
        label = graph.node_labels[node]
        label_counts[label] = label_counts.get(label, 0) + 1
    names: dict[str, str] = {}
    for node in graph.nodes:
        label = graph.node_labels[node]
        names[node] = label if label_counts[label] == 1 else f"{label}#{node[:8]}"

    lines = ["digraph globalview {", "  rankdir=TB;",
             '  node [shape=box, style="rounded,filled", fillcolor="#d3d3d3"];']
    for node in sorted(graph.nodes, key=lambda n: (graph.node_labels[n], n)):
        lines.append(f"  {_dot_quote(names[node])} "
                     f"[label={_dot_quote(graph.node_labels[node])}];")
    for edge in graph.edges:
        penwidth = round(1 + math.log(edge.weight), 6)
        lines.append(
            f"  {_dot_quote(names[edge.source])} -> {_dot_quote(names[edge.target])} "
            f'[color="{graph.task_colors[edge.task_id]}", penwidth={penwidth}, '
            f"label={_dot_quote(graph.task_keys[edge.task_id])}];")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
