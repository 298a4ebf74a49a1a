"""Command line interface.

Configuration precedence is flags, then SWARM_DATA_DIR / SWARM_PORT /
SWARM_PROJECT_ROOT, then the defaults (./swarm-data, port 7000, no
project root). Exit codes: 0 success, 1 data or domain error, 2 usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import graphs, metrics
from .errors import (
    InvalidValue,
    MissingSource,
    SwarmError,
    UnknownDeveloper,
    UnknownProduct,
    UnknownSession,
    UnknownTask,
)
from .ingest import Ingestor, load_catalog
from .store import QueryFilter, Store, StoreSnapshot, query_sessions, rows_to_csv

_FILTER_KEYS = ("task", "developer", "product", "session")
_ANALYZE_TARGETS = (
    "table2", "table3", "table5", "table9", "fig6", "fit", "mfb", "table10",
)


@dataclass(frozen=True)
class Config:
    data_dir: Path
    port: int
    project_root: Optional[Path]


def resolve_config(args: argparse.Namespace) -> Config:
    data_dir = getattr(args, "data_dir", None) or os.environ.get("SWARM_DATA_DIR") \
        or "./swarm-data"
    port_raw = getattr(args, "port", None)
    if port_raw is None:
        port_raw = os.environ.get("SWARM_PORT") or "7000"
    try:
        port = int(port_raw)
    except ValueError:
        raise InvalidValue(f"port must be an integer, got {port_raw!r}") from None
    root_raw = getattr(args, "project_root", None) or os.environ.get("SWARM_PROJECT_ROOT")
    return Config(
        data_dir=Path(data_dir),
        port=port,
        project_root=Path(root_raw) if root_raw else None,
    )


def _open_store(config: Config) -> Store:
    config.data_dir.mkdir(parents=True, exist_ok=True)
    return Store(config.data_dir / "swarm.db")


def _filter_pair(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or key not in _FILTER_KEYS or not value:
        raise argparse.ArgumentTypeError(
            f"filters look like task=318 (keys: {', '.join(_FILTER_KEYS)})")
    return key, value


def _build_filter(snapshot: StoreSnapshot,
                  pairs: Sequence[tuple[str, str]]) -> QueryFilter:
    values: dict[str, list[str]] = {key: [] for key in _FILTER_KEYS}
    for key, value in pairs:
        if value == "all":
            continue
        values[key].append(value)

    product_id: Optional[str] = None
    if values["product"]:
        if len(values["product"]) > 1:
            raise InvalidValue("at most one product filter")
        name = values["product"][0]
        product = snapshot.product_by_name(name)
        if product is None:
            raise UnknownProduct(f"no product named {name!r}")
        product_id = product.id

    task_ids: set[str] = set()
    for key in values["task"]:
        matches = [t.id for t in snapshot.tasks.values()
                   if t.issue_key == key
                   and (product_id is None or t.product_id == product_id)]
        if not matches:
            raise UnknownTask(f"no task with issue key {key!r}")
        task_ids.update(matches)

    developer_ids: set[str] = set()
    for name in values["developer"]:
        matches = [d.id for d in snapshot.developers.values() if d.name == name]
        if not matches:
            raise UnknownDeveloper(f"no developer named {name!r}")
        developer_ids.update(matches)

    session_ids: set[str] = set()
    for session_id in values["session"]:
        if session_id not in snapshot.sessions:
            raise UnknownSession(f"no session {session_id}")
        session_ids.add(session_id)

    return QueryFilter(
        product_id=product_id,
        task_ids=frozenset(task_ids) if task_ids else None,
        developer_ids=frozenset(developer_ids) if developer_ids else None,
        session_ids=frozenset(session_ids) if session_ids else None,
    )


def _closed_session_metrics(snapshot: StoreSnapshot,
                            filt: QueryFilter) -> list[metrics.SessionMetrics]:
    out = []
    for session in query_sessions(snapshot, filt):
        if session.finished_at is None:
            continue
        out.append(metrics.session_metrics(snapshot, session.id))
    return out


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- analyze targets ---------------------------------------------------------


def _analyze_table2(snapshot: StoreSnapshot, filt: QueryFilter) -> str:
    stats = metrics.first_breakpoint_stats(_closed_session_metrics(snapshot, filt))
    rows = [
        {
            "task": key,
            "sessions": row.sessions,
            "elapsed_mean_min": row.elapsed_mean_ms / 60000.0,
            "elapsed_sd_min": row.elapsed_sd_ms / 60000.0,
        }
        for key, row in sorted(stats.per_task.items())
    ]
    return rows_to_csv(rows)


def _analyze_mfb(snapshot: StoreSnapshot, filt: QueryFilter) -> str:
    stats = metrics.first_breakpoint_stats(_closed_session_metrics(snapshot, filt))
    return rows_to_csv([{
        "ratio_mean": stats.ratio_mean,
        "ratio_sd": stats.ratio_sd,
        "sessions": stats.sessions_with_ratio,
    }])


def _analyze_table3(snapshot: StoreSnapshot, filt: QueryFilter,
                    config: Config) -> str:
    if config.project_root is None:
        raise MissingSource("statement analysis needs --project-root "
                            "or SWARM_PROJECT_ROOT")
    resolver = metrics.FileSourceResolver(config.project_root)
    rows = metrics.statement_type_distribution(snapshot, filt, resolver)
    return rows_to_csv([r.to_dict() for r in rows])


def _analyze_table5(snapshot: StoreSnapshot, filt: QueryFilter) -> str:
    groups = metrics.colocated_breakpoints(snapshot, filt,
                                           metrics.ColocationMode.SAME_TASK)
    rows = [
        {
            "task": group.task_issue_keys[0],
            "type_full_name": group.location.type_full_name,
            "line_number": group.location.line_number,
            "breakpoint_count": group.breakpoint_count,
            "distinct_developers": group.distinct_developers,
        }
        for group in groups
    ]
    return rows_to_csv(rows)


def _analyze_table9(snapshot: StoreSnapshot, filt: QueryFilter) -> str:
    rows = [
        {
            "type_full_name": row.type_full_name,
            "task_issue_keys": "+".join(row.task_issue_keys),
            "breakpoint_count": row.breakpoint_count,
            "developer_diversity": row.developer_diversity,
        }
        for row in metrics.class_task_matrix(snapshot, filt)
    ]
    return rows_to_csv(rows)


def _analyze_fig6(snapshot: StoreSnapshot, filt: QueryFilter,
                  min_count: int) -> str:
    spots = metrics.method_hotspots(snapshot, filt, min_count=min_count)
    rows = [
        {
            "method": spot.display_name,
            "breakpoint_count": spot.breakpoint_count,
            "distinct_developers": spot.distinct_developers,
            "distinct_tasks": spot.distinct_tasks,
        }
        for spot in spots
    ]
    return rows_to_csv(rows)


def _analyze_fit(snapshot: StoreSnapshot, filt: QueryFilter) -> str:
    points = []
    for m in _closed_session_metrics(snapshot, filt):
        if m.first_breakpoint_elapsed_ms is None:
            continue
        if m.first_breakpoint_elapsed_ms <= 0 or m.elapsed_ms <= 0:
            continue
        points.append((m.first_breakpoint_elapsed_ms / 60000.0,
                       m.elapsed_ms / 60000.0))
    fit = metrics.fit_power_law(points)
    return rows_to_csv([fit.to_dict()])


def _analyze_table10(snapshot: StoreSnapshot, filt: QueryFilter,
                     control_label: str, experiment_label: str) -> str:
    by_task: dict[str, dict[str, list[str]]] = {}
    for session in query_sessions(snapshot, filt):
        task = snapshot.tasks.get(session.task_id)
        if task is None:
            continue
        bucket = by_task.setdefault(task.issue_key, {"control": [], "experiment": []})
        if session.label == control_label:
            bucket["control"].append(session.id)
        elif session.label == experiment_label:
            bucket["experiment"].append(session.id)
    rows = []
    for issue_key in sorted(by_task):
        bucket = by_task[issue_key]
        if not bucket["control"] or not bucket["experiment"]:
            continue
        comparison = metrics.group_comparison(
            snapshot, bucket["control"], bucket["experiment"])
        for metric in metrics.COMPARISON_METRICS:
            control_mean = getattr(comparison.control, f"{metric}_ms")
            experiment_mean = getattr(comparison.experiment, f"{metric}_ms")
            rows.append({
                "task": issue_key,
                "metric": metric,
                "control_mean_ms": None if control_mean is None else float(control_mean),
                "experiment_mean_ms": (
                    None if experiment_mean is None else float(experiment_mean)),
                "delta_seconds": comparison.delta_seconds[metric],
                "ratio_percent": comparison.ratio_percent[metric],
            })
    return rows_to_csv(rows)


# -- commands ----------------------------------------------------------------


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config = resolve_config(args)
    store = _open_store(config)
    app = create_app(store, project_root=(
        str(config.project_root) if config.project_root else None))
    uvicorn.run(app, host=args.host, port=config.port, log_level="warning")
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    log_path = Path(args.file)
    if not log_path.is_file():
        print(f"error: no such file: {log_path}", file=sys.stderr)
        return 1
    store = _open_store(config)
    try:
        catalog_path = log_path.parent / "catalog.json"
        if catalog_path.is_file():
            import json

            load_catalog(store, json.loads(catalog_path.read_text(encoding="utf-8")))
        ingestor = Ingestor(store)
        with log_path.open(encoding="utf-8") as handle:
            summary = ingestor.import_session_log(handle)
    finally:
        store.close()
    print(summary.to_json())
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    store = _open_store(config)
    try:
        snapshot = store.snapshot()
        filt = _build_filter(snapshot, args.filter or [])
        target = args.target
        if target == "table2":
            text = _analyze_table2(snapshot, filt)
        elif target == "table3":
            text = _analyze_table3(snapshot, filt, config)
        elif target == "table5":
            text = _analyze_table5(snapshot, filt)
        elif target == "table9":
            text = _analyze_table9(snapshot, filt)
        elif target == "fig6":
            text = _analyze_fig6(snapshot, filt, args.min_count)
        elif target == "fit":
            text = _analyze_fit(snapshot, filt)
        elif target == "mfb":
            text = _analyze_mfb(snapshot, filt)
        else:
            text = _analyze_table10(snapshot, filt,
                                    args.control_label, args.experiment_label)
    finally:
        store.close()
    _emit(text, args.output)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    store = _open_store(config)
    try:
        snapshot = store.snapshot()
        product = snapshot.product_by_name(args.product)
        if product is None:
            raise UnknownProduct(f"no product named {args.product!r}")
        task_ids: Optional[frozenset[str]] = None
        if args.tasks and args.tasks != "all":
            wanted = set()
            for key in args.tasks.split(","):
                task = snapshot.task_by_key(product.id, key.strip())
                if task is None:
                    raise UnknownTask(f"no task {key.strip()!r} in product")
                wanted.add(task.id)
            task_ids = frozenset(wanted)
        filt = QueryFilter(product_id=product.id, task_ids=task_ids)
        graph = graphs.build_call_graph(snapshot, filt, args.granularity)
        payload = graphs.export_graph(
            graph,
            graphs.ExportFormat.GVJSON if args.format == "gvjson"
            else graphs.ExportFormat.DOT,
        )
    finally:
        store.close()
    if args.output:
        Path(args.output).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    from . import search as search_mod

    config = resolve_config(args)
    store = _open_store(config)
    try:
        snapshot = store.snapshot()
        filt = QueryFilter()
        if args.product:
            product = snapshot.product_by_name(args.product)
            if product is None:
                raise UnknownProduct(f"no product named {args.product!r}")
            filt = QueryFilter(product_id=product.id)
        mode = {m.value.lower(): m for m in search_mod.SearchMode}[args.mode]
        hits = search_mod.search_breakpoints(
            snapshot,
            search_mod.SearchQuery(text=args.query, mode=mode, filter=filt))
        rows = []
        for hit in hits:
            entity = snapshot.types[hit.breakpoint.type_id]
            rows.append({
                "score": hit.score,
                "matched_field": hit.matched_field.value,
                "type_full_name": entity.full_name,
                "line_number": hit.breakpoint.line_number,
                "session_id": hit.breakpoint.session_id,
            })
    finally:
        store.close()
    _emit(rows_to_csv(rows), args.output)
    return 0


def _cmd_recommend(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    store = _open_store(config)
    try:
        snapshot = store.snapshot()
        product = snapshot.product_by_name(args.product)
        if product is None:
            raise UnknownProduct(f"no product named {args.product!r}")
        spots = metrics.recommend_breakpoints(
            snapshot, product.id, k=args.k, context_session_id=args.session)
        rows = [
            {
                "type_full_name": spot.type_full_name,
                "line_number": spot.line_number,
                "breakpoint_count": spot.breakpoint_count,
                "distinct_developers": spot.distinct_developers,
                "distinct_tasks": spot.distinct_tasks,
            }
            for spot in spots
        ]
    finally:
        store.close()
    _emit(rows_to_csv(rows), args.output)
    return 0


def _cmd_fixtures(args: argparse.Namespace) -> int:
    from . import fixtures
    from .model import canonical_json

    out_dir = Path(args.out)
    manifest = fixtures.generate(out_dir)
    fixtures.verify(out_dir)
    print(canonical_json(manifest))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data-dir", help="store directory (SWARM_DATA_DIR)")
    common.add_argument("--project-root",
                        help="source checkout for statement analysis "
                             "(SWARM_PROJECT_ROOT)")

    parser = argparse.ArgumentParser(
        prog="swarm",
        description="debugging telemetry: collection, analytics, export",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", parents=[common], help="run the REST service")
    p_serve.add_argument("--port", help="listen port (SWARM_PORT)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.set_defaults(func=_cmd_serve)

    p_ingest = sub.add_parser("ingest", parents=[common],
                              help="import a JSONL session log")
    p_ingest.add_argument("file", help="session log (catalog.json beside it "
                                       "is loaded first)")
    p_ingest.set_defaults(func=_cmd_ingest)

    p_analyze = sub.add_parser("analyze", parents=[common],
                               help="print an analytics table as CSV")
    p_analyze.add_argument("target", choices=_ANALYZE_TARGETS)
    p_analyze.add_argument("--filter", action="append", type=_filter_pair,
                           metavar="KEY=VALUE",
                           help="task=…, developer=…, product=…, session=… "
                                "(value 'all' is a no-op)")
    p_analyze.add_argument("--min-count", type=int, default=5,
                           help="fig6 method threshold")
    p_analyze.add_argument("--control-label", default="control")
    p_analyze.add_argument("--experiment-label", default="experiment")
    p_analyze.add_argument("-o", "--output", help="write CSV here instead of stdout")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_export = sub.add_parser("export", parents=[common],
                              help="emit the call graph")
    p_export.add_argument("format", choices=("gvjson", "dot"))
    p_export.add_argument("--product", required=True)
    p_export.add_argument("--tasks", help="comma-separated issue keys, or all")
    p_export.add_argument("--granularity", default="TypeLevel",
                          choices=("TypeLevel", "MethodLevel"))
    p_export.add_argument("-o", "--output")
    p_export.set_defaults(func=_cmd_export)

    p_search = sub.add_parser("search", parents=[common],
                              help="search breakpoints")
    p_search.add_argument("query")
    p_search.add_argument("--mode", default="fuzzy",
                          choices=("fuzzy", "match", "wildcard"))
    p_search.add_argument("--product")
    p_search.add_argument("-o", "--output")
    p_search.set_defaults(func=_cmd_search)

    p_rec = sub.add_parser("recommend", parents=[common],
                           help="rank breakpoint locations")
    p_rec.add_argument("--product", required=True)
    p_rec.add_argument("-k", type=int, default=10)
    p_rec.add_argument("--session", help="exclude lines this session already set")
    p_rec.add_argument("-o", "--output")
    p_rec.set_defaults(func=_cmd_recommend)

    p_fix = sub.add_parser("fixtures", parents=[common],
                           help="study-shaped corpora")
    fix_sub = p_fix.add_subparsers(dest="fixtures_command", required=True)
    p_gen = fix_sub.add_parser("generate")
    p_gen.add_argument("--out", default="./fixtures")
    p_gen.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except SwarmError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
