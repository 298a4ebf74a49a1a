"""Call-graph construction, set formulas, layers, sequence rows, exports."""

from __future__ import annotations

import json
import math
import random

import pytest

from conftest import TickClock, seed_product
from swarmdbg.errors import CyclicInvocation, UnknownSession
from swarmdbg.graphs import (
    CallGraph,
    CallGraphEdge,
    ExportFormat,
    Granularity,
    build_call_graph,
    export_graph,
    layered_layout,
    sequence_stack_rows,
    starting_and_ending_methods,
)
from swarmdbg.ingest import Ingestor, StackFrame, StackSnapshot
from swarmdbg.store import QueryFilter, Store, query_invocations


def graph_from_pairs(pairs) -> CallGraph:
    """Direct CallGraph over node-name edges, one synthetic task."""
    pairs = list(pairs)
    nodes = frozenset(n for pair in pairs for n in pair)
    edges = tuple(CallGraphEdge(source=a, target=b, task_id="t", weight=1)
                  for a, b in pairs)
    return CallGraph(
        granularity=Granularity.TYPE_LEVEL,
        nodes=nodes,
        edges=edges,
        invoking_set=frozenset(a for a, _ in pairs),
        invoked_set=frozenset(b for _, b in pairs),
        node_labels={n: n for n in nodes},
        task_keys={"t": "T1"},
        task_colors={"t": "#1f77b4"},
    )


def brute_force_starting_ending(nodes, pairs):
    """Independent per-node degree scan."""
    starting, ending = set(), set()
    for node in nodes:
        outs = sum(1 for a, _ in pairs if a == node)
        ins = sum(1 for _, b in pairs if b == node)
        if outs > 0 and ins == 0:
            starting.add(node)
        if ins > 0 and outs == 0:
            ending.add(node)
    return starting, ending


def random_digraph(rng: random.Random):
    size = rng.randint(2, 12)
    nodes = [f"n{i}" for i in range(size)]
    possible = [(a, b) for a in nodes for b in nodes if a != b]
    count = rng.randint(1, min(len(possible), 3 * size))
    return set(rng.sample(possible, count))


# -- starting and ending sets -------------------------------------------------


def test_chain_has_single_start_and_end():
    result = starting_and_ending_methods(graph_from_pairs([("A", "B"), ("B", "C")]))
    assert result.starting == {"A"}
    assert result.ending == {"C"}


def test_two_cycle_has_no_start_or_end():
    result = starting_and_ending_methods(graph_from_pairs([("A", "B"), ("B", "A")]))
    assert result.starting == frozenset()
    assert result.ending == frozenset()


def test_random_digraphs_match_brute_force_and_never_overlap():
    rng = random.Random(99)
    for _ in range(300):
        pairs = random_digraph(rng)
        graph = graph_from_pairs(pairs)
        result = starting_and_ending_methods(graph)
        starting, ending = brute_force_starting_ending(graph.nodes, pairs)
        assert result.starting == starting
        assert result.ending == ending
        assert not (result.starting & result.ending)


def test_store_built_graph_agrees_with_direct_construction(tmp_path):
    rng = random.Random(5)
    for trial in range(10):
        store = Store(tmp_path / f"agree{trial}.db")
        seed_product(store)
        ingestor = Ingestor(store, clock=TickClock())
        session = ingestor.open_session("alice", "demo", "T1")
        pairs = random_digraph(rng)
        for a, b in sorted(pairs):
            ingestor.record_invocation(
                session.id, (f"app.{a}", "run()"), (f"app.{b}", "run()"))
        # Invocation-auto-registered types carry no source; flag them in.
        for node in {n for p in pairs for n in p}:
            ingestor.record_breakpoint(session.id, f"app.{node}", 1)
        graph = build_call_graph(store.snapshot(), QueryFilter(),
                                 Granularity.TYPE_LEVEL)
        by_label = {(graph.node_labels[e.source], graph.node_labels[e.target])
                    for e in graph.edges}
        assert by_label == pairs
        got = starting_and_ending_methods(graph)
        starting, ending = brute_force_starting_ending(
            {n for p in pairs for n in p}, pairs)
        assert {graph.node_labels[n] for n in got.starting} == starting
        assert {graph.node_labels[n] for n in got.ending} == ending
        store.close()


# -- layered layout -------------------------------------------------------------


def test_diamond_layers():
    graph = graph_from_pairs([("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")])
    assert layered_layout(graph) == {"A": 0, "B": 1, "C": 1, "D": 2}


def test_pure_cycle_sits_in_layer_zero():
    graph = graph_from_pairs([("A", "B"), ("B", "C"), ("C", "A")])
    layers = layered_layout(graph)
    assert layers == {"A": 0, "B": 0, "C": 0}


def test_cycle_hanging_off_chain_goes_below_deepest_layer():
    graph = graph_from_pairs([("A", "B"), ("C", "D"), ("D", "C")])
    layers = layered_layout(graph)
    assert layers["A"] == 0
    assert layers["B"] == 1
    assert layers["C"] == layers["D"] == 2


def test_layer_soundness_on_random_digraphs():
    rng = random.Random(123)
    for _ in range(200):
        pairs = random_digraph(rng)
        graph = graph_from_pairs(pairs)
        layers = layered_layout(graph)
        assert set(layers) == set(graph.nodes), "every node is placed"
        starting = graph.invoking_set - graph.invoked_set
        if starting:
            assert {n for n, d in layers.items() if d == 0} == starting
        reachable = set(starting)
        frontier = list(starting)
        adjacency = {}
        for a, b in pairs:
            adjacency.setdefault(a, set()).add(b)
        while frontier:
            node = frontier.pop()
            for succ in adjacency.get(node, ()):
                if succ not in reachable:
                    reachable.add(succ)
                    frontier.append(succ)
        for a, b in pairs:
            if a in reachable:
                assert layers[b] <= layers[a] + 1


def test_layout_is_deterministic():
    rng = random.Random(321)
    pairs = random_digraph(rng)
    graph = graph_from_pairs(pairs)
    assert layered_layout(graph) == layered_layout(graph_from_pairs(sorted(pairs)))


# -- build_call_graph over a store ----------------------------------------------


def _invocation_store(tmp_path, name="inv"):
    store = Store(tmp_path / f"{name}.db")
    seed_product(store, task_keys=("T1", "T2"))
    ingestor = Ingestor(store, clock=TickClock())
    return store, ingestor


def test_edges_aggregate_per_source_target_task(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    s1 = ingestor.open_session("alice", "demo", "T1")
    s2 = ingestor.open_session("bob", "demo", "T2")
    for session in (s1, s2):
        ingestor.record_breakpoint(session.id, "app.Main", 1)
        ingestor.record_breakpoint(session.id, "app.Worker", 1)
    for _ in range(3):
        ingestor.record_invocation(s1.id, ("app.Main", "main()"),
                                   ("app.Worker", "work()"))
    ingestor.record_invocation(s2.id, ("app.Main", "main()"),
                               ("app.Worker", "work()"))

    graph = build_call_graph(store.snapshot(), QueryFilter())
    assert len(graph.nodes) == 2
    assert len(graph.edges) == 2, "same pair, two tasks, two edges"
    assert sorted(e.weight for e in graph.edges) == [1, 3]
    assert sum(e.weight for e in graph.edges) == 4


def test_method_level_distinguishes_methods_of_one_type(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    session = ingestor.open_session("alice", "demo", "T1")
    ingestor.record_breakpoint(session.id, "app.Main", 1)
    ingestor.record_invocation(session.id, ("app.Main", "main()"),
                               ("app.Main", "helper()"))
    type_level = build_call_graph(store.snapshot(), QueryFilter(),
                                  Granularity.TYPE_LEVEL)
    method_level = build_call_graph(store.snapshot(), QueryFilter(),
                                    Granularity.METHOD_LEVEL)
    assert len(type_level.nodes) == 1, "self edge at type level"
    assert len(method_level.nodes) == 2
    assert sorted(method_level.node_labels.values()) == [
        "Main.helper()", "Main.main()"]


def test_sourceless_types_never_enter_graph(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    session = ingestor.open_session("alice", "demo", "T1")
    ingestor.record_breakpoint(session.id, "app.Known", 1)
    ingestor.record_invocation(session.id, ("app.Known", "run()"),
                               ("lib.Opaque", "call()"))
    graph = build_call_graph(store.snapshot(), QueryFilter())
    assert graph.nodes == frozenset()
    assert graph.edges == ()


def test_task_filter_monotonicity_on_fixture(gv):
    tasks = {t.issue_key: t.id for t in gv.tasks.values()}
    all_graph = build_call_graph(gv, QueryFilter())
    one = build_call_graph(gv, QueryFilter(task_ids=frozenset({tasks["318"]})))
    both = build_call_graph(
        gv, QueryFilter(task_ids=frozenset({tasks["318"], tasks["667"]})))
    assert one.nodes <= both.nodes <= all_graph.nodes
    assert set(one.edges) <= set(both.edges) <= set(all_graph.edges)


def test_weight_conservation_under_task_filters(tmp_path):
    rng = random.Random(8)
    for trial in range(10):
        store, ingestor = _invocation_store(tmp_path, name=f"wc{trial}")
        sessions = [ingestor.open_session(f"dev{i}", "demo", key)
                    for i, key in enumerate(("T1", "T1", "T2"))]
        names = [f"app.N{i}" for i in range(5)]
        for session in sessions:
            ingestor.record_breakpoint(session.id, rng.choice(names), 1)
            for name in names:
                ingestor.record_breakpoint(session.id, name, 2)
        total = rng.randint(1, 40)
        for _ in range(total):
            session = rng.choice(sessions)
            a, b = rng.sample(names, 2)
            ingestor.record_invocation(session.id, (a, "m()"), (b, "m()"))
        snapshot = store.snapshot()
        task_ids = [t.id for t in snapshot.tasks.values()]
        filters = [QueryFilter()] + [
            QueryFilter(task_ids=frozenset({tid})) for tid in task_ids]
        for filt in filters:
            expected = len(query_invocations(snapshot, filt))
            for granularity in Granularity:
                graph = build_call_graph(snapshot, filt, granularity)
                assert sum(e.weight for e in graph.edges) == expected
        store.close()


def test_fixture_global_view_shape(gv):
    graph = build_call_graph(gv, QueryFilter())
    labels = set(graph.node_labels.values())
    assert labels == {"JabRefMain", "BasePanel", "AuthorsFormatter", "URLUtil"}
    assert len(graph.edges) == 4
    assert sum(e.weight for e in graph.edges) == 9

    layers = {graph.node_labels[n]: d for n, d in layered_layout(graph).items()}
    assert layers == {"JabRefMain": 0, "BasePanel": 1,
                      "AuthorsFormatter": 2, "URLUtil": 2}

    result = starting_and_ending_methods(graph)
    assert {graph.node_labels[n] for n in result.starting} == {"JabRefMain"}
    assert {graph.node_labels[n] for n in result.ending} == {
        "AuthorsFormatter", "URLUtil"}


def test_fixture_per_task_subgraphs(gv):
    tasks = {t.issue_key: t.id for t in gv.tasks.values()}
    for key, ending_label in (("318", "AuthorsFormatter"), ("667", "URLUtil")):
        graph = build_call_graph(gv, QueryFilter(task_ids=frozenset({tasks[key]})))
        assert len(graph.nodes) == 3
        assert len(graph.edges) == 2
        labels = {graph.node_labels[n] for n in graph.nodes}
        assert labels == {"JabRefMain", "BasePanel", ending_label}


# -- sequence stack rows ---------------------------------------------------------


def _step(ingestor, session_id, *frames):
    snapshot = StackSnapshot(frames=tuple(
        StackFrame(type_full_name=t, method_signature=m, line_number=line)
        for t, m, line in frames))
    ingestor.record_step_event(session_id, "StepInto", snapshot)


def test_sequence_rows_share_prefix_with_dotted_return(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    session = ingestor.open_session("alice", "demo", "T1")
    _step(ingestor, session.id,
          ("app.Circle", "draw()", 7), ("app.Shape", "draw()", 22),
          ("app.Main", "main()", 3))
    _step(ingestor, session.id,
          ("app.Square", "draw()", 9), ("app.Shape", "draw()", 23),
          ("app.Main", "main()", 3))
    snapshot = store.snapshot()
    rows = sequence_stack_rows(snapshot, session.id)

    def label(method_id):
        method = snapshot.methods[method_id]
        return f"{snapshot.types[method.type_id].simple_name}.{method.signature}"

    assert [[label(m) for m in row.methods] for row in rows] == [
        ["Main.main()", "Shape.draw()", "Circle.draw()"],
        ["Main.main()", "Shape.draw()", "Square.draw()"],
    ]
    assert rows[0].dotted_return_index is None
    assert rows[1].dotted_return_index == 1


def test_sequence_rows_cover_every_observed_edge(tmp_path):
    rng = random.Random(17)
    for trial in range(20):
        store, ingestor = _invocation_store(tmp_path, name=f"cov{trial}")
        session = ingestor.open_session("alice", "demo", "T1")
        # Random forest: each node calls into strictly higher indices (acyclic).
        edges = set()
        for _ in range(rng.randint(1, 15)):
            a = rng.randint(0, 4)
            b = rng.randint(a + 1, 6)
            edges.add((f"app.N{a}", f"app.N{b}"))
            ingestor.record_invocation(session.id, (f"app.N{a}", "m()"),
                                       (f"app.N{b}", "m()"))
        snapshot = store.snapshot()
        rows = sequence_stack_rows(snapshot, session.id)

        def full(method_id):
            method = snapshot.methods[method_id]
            return snapshot.types[method.type_id].full_name

        covered = set()
        for row in rows:
            for src, dst in zip(row.methods, row.methods[1:]):
                covered.add((full(src), full(dst)))
        assert covered == edges
        store.close()


def test_sequence_rows_empty_session(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    session = ingestor.open_session("alice", "demo", "T1")
    assert sequence_stack_rows(store.snapshot(), session.id) == []


def test_sequence_rows_unknown_session(tmp_path):
    store, _ = _invocation_store(tmp_path)
    with pytest.raises(UnknownSession):
        sequence_stack_rows(store.snapshot(), "ghost")


def test_sequence_rows_reject_cyclic_relation(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    session = ingestor.open_session("alice", "demo", "T1")
    ingestor.record_invocation(session.id, ("app.A", "a()"), ("app.B", "b()"))
    ingestor.record_invocation(session.id, ("app.B", "b()"), ("app.A", "a()"))
    with pytest.raises(CyclicInvocation):
        sequence_stack_rows(store.snapshot(), session.id)


def test_sequence_rows_scoped_to_one_session(tmp_path):
    store, ingestor = _invocation_store(tmp_path)
    s1 = ingestor.open_session("alice", "demo", "T1")
    s2 = ingestor.open_session("bob", "demo", "T2")
    ingestor.record_invocation(s1.id, ("app.A", "a()"), ("app.B", "b()"))
    ingestor.record_invocation(s2.id, ("app.C", "c()"), ("app.D", "d()"))
    rows = sequence_stack_rows(store.snapshot(), s1.id)
    assert len(rows) == 1
    assert len(rows[0].methods) == 2


# -- exports ----------------------------------------------------------------------


def test_gvjson_empty_graph():
    graph = graph_from_pairs([])
    assert export_graph(graph, ExportFormat.GVJSON) == b'{"nodes":[],"edges":[]}'


def test_gvjson_shape_and_ordering():
    graph = graph_from_pairs([("B", "C"), ("A", "B")])
    payload = json.loads(export_graph(graph, "GVJSON"))
    assert [n["label"] for n in payload["nodes"]] == ["A", "B", "C"]
    assert payload["nodes"][0] == {"id": "A", "label": "A",
                                   "granularity": "TypeLevel"}
    assert payload["edges"] == [
        {"source": "B", "target": "C", "task": "t", "color": "#1f77b4",
         "weight": 1},
        {"source": "A", "target": "B", "task": "t", "color": "#1f77b4",
         "weight": 1},
    ]


def test_gvjson_bytes_are_deterministic(gv):
    graph = build_call_graph(gv, QueryFilter())
    assert export_graph(graph) == export_graph(graph)


def test_dot_weight_one_has_unit_penwidth():
    graph = graph_from_pairs([("A", "B")])
    text = export_graph(graph, ExportFormat.DOT).decode()
    assert 'penwidth=1.0,' in text
    assert text.startswith("digraph globalview {")
    assert 'style="rounded,filled"' in text
    assert 'fillcolor="#d3d3d3"' in text
    assert text.endswith("}\n")


def test_dot_penwidth_grows_logarithmically():
    edges = (CallGraphEdge(source="A", target="B", task_id="t", weight=3),)
    graph = CallGraph(
        granularity=Granularity.TYPE_LEVEL, nodes=frozenset({"A", "B"}),
        edges=edges, invoking_set=frozenset({"A"}), invoked_set=frozenset({"B"}),
        node_labels={"A": "A", "B": "B"},
        task_keys={"t": "318"}, task_colors={"t": "#ff7f0e"})
    text = export_graph(graph, "DOT").decode()
    assert f"penwidth={round(1 + math.log(3), 6)}" in text
    assert 'label="318"' in text
    assert 'color="#ff7f0e"' in text


def test_dot_disambiguates_duplicate_labels():
    edges = (CallGraphEdge(source="x1", target="x2", task_id="t", weight=1),)
    graph = CallGraph(
        granularity=Granularity.TYPE_LEVEL, nodes=frozenset({"x1", "x2"}),
        edges=edges, invoking_set=frozenset({"x1"}), invoked_set=frozenset({"x2"}),
        node_labels={"x1": "Same", "x2": "Same"},
        task_keys={"t": "T"}, task_colors={"t": "#1f77b4"})
    text = export_graph(graph, "DOT").decode()
    assert '"Same#x1"' in text
    assert '"Same#x2"' in text


def test_dot_node_count_matches_gvjson(gv):
    graph = build_call_graph(gv, QueryFilter())
    payload = json.loads(export_graph(graph, "GVJSON"))
    dot = export_graph(graph, "DOT").decode()
    node_lines = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
    assert len(node_lines) == len(payload["nodes"])
    edge_lines = [l for l in dot.splitlines() if "->" in l]
    assert len(edge_lines) == len(payload["edges"])


def test_export_rejects_unknown_format(gv):
    graph = build_call_graph(gv, QueryFilter())
    with pytest.raises(ValueError):
        export_graph(graph, "XML")
