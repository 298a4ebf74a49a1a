"""REST facade over the store, ingestion, search, graphs, and metrics.

Bodies are parsed by hand and every response is rendered through the
canonical JSON encoder, so an API response is byte-equal to the
serialized result of the corresponding library call. Errors map to
{code, message} with the status owned by the error type.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import graphs, metrics, search, store as store_mod
from .errors import InvalidValue, SwarmError, UnknownProduct, UnknownSession, UnknownTask, UnknownType
from .ingest import Ingestor, StackSnapshot
from .model import canonical_json
from .store import QueryFilter, Store, StoreSnapshot


def _json_response(payload: Any, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload).encode("utf-8"),
        status_code=status_code,
        media_type="application/json",
    )


def _bytes_response(body: bytes) -> Response:
    return Response(content=body, media_type="application/json")


async def _read_body(request: Request) -> Mapping[str, Any]:
    raw = await request.body()
    try:
        parsed = json.loads(raw if raw else b"null")
    except ValueError:
        parsed = None
    if not isinstance(parsed, dict):
        raise _MalformedBody()
    return parsed


class _MalformedBody(Exception):
    pass


def _opt_int(body: Mapping[str, Any], name: str) -> Optional[int]:
    value = body.get(name)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidValue(f"field {name!r} must be an integer")
    return value


def _req_str(body: Mapping[str, Any], name: str) -> str:
    value = body.get(name)
    if not isinstance(value, str):
        raise InvalidValue(f"missing string field {name!r}")
    return value


def _resolve_tasks(snapshot: StoreSnapshot, product_id: str,
                   tasks_param: Optional[str]) -> Optional[frozenset[str]]:
    if tasks_param is None or tasks_param == "" or tasks_param == "all":
        return None
    task_ids = []
    for key in tasks_param.split(","):
        key = key.strip()
        task = snapshot.task_by_key(product_id, key)
        if task is None:
            raise UnknownTask(f"no task {key!r} in product")
        task_ids.append(task.id)
    return frozenset(task_ids)


def _parse_granularity(value: str) -> graphs.Granularity:
    try:
        return graphs.Granularity(value)
    except ValueError:
        raise InvalidValue(f"unknown granularity {value!r}") from None


def _product_or_fail(snapshot: StoreSnapshot, product_id: str):
    product = snapshot.products.get(product_id)
    if product is None:
        raise UnknownProduct(f"no product {product_id}")
    return product


def _type_hot_lines(snapshot: StoreSnapshot, type_id: str) -> list[dict[str, int]]:
    counts: dict[int, int] = {}
    for bp in snapshot.breakpoints.values():
        if bp.type_id == type_id:
            counts[bp.line_number] = counts.get(bp.line_number, 0) + 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [{"line_number": line, "breakpoint_count": count} for line, count in ordered]


def type_details(snapshot: StoreSnapshot, type_id: str) -> dict[str, Any]:
    entity = snapshot.types.get(type_id)
    if entity is None:
        raise UnknownType(f"no type {type_id}")
    out = entity.to_dict()
    out["hot_lines"] = _type_hot_lines(snapshot, type_id)
    return out


def create_app(store: Store, project_root: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="swarm debugging service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    ingestor = Ingestor(store)
    app.state.store = store
    app.state.ingestor = ingestor

    @app.exception_handler(SwarmError)
    async def _domain_error(request: Request, exc: SwarmError) -> Response:
        return _json_response({"code": exc.code, "message": str(exc)},
                              status_code=exc.http_status)

    @app.exception_handler(_MalformedBody)
    async def _bad_body(request: Request, exc: _MalformedBody) -> Response:
        return _json_response({"code": "MalformedBody",
                               "message": "request body must be a JSON object"},
                              status_code=400)

    # -- bootstrap -----------------------------------------------------

    @app.post("/api/products")
    async def create_product(request: Request) -> Response:
        body = await _read_body(request)
        from .model import Product, new_id

        product = store.insert_product(Product(id=new_id(), name=_req_str(body, "name")))
        return _json_response(product.to_dict())

    @app.get("/api/products")
    async def list_products() -> Response:
        snapshot = store.snapshot()
        return _json_response([p.to_dict() for p in snapshot.products.values()])

    @app.post("/api/products/{product_id}/tasks")
    async def create_task(product_id: str, request: Request) -> Response:
        body = await _read_body(request)
        from .model import Task, new_id

        snapshot = store.snapshot()
        _product_or_fail(snapshot, product_id)
        task = store.insert_task(Task(
            id=new_id(),
            product_id=product_id,
            issue_key=_req_str(body, "issue_key"),
            title=body.get("title", "") if isinstance(body.get("title", ""), str) else "",
            display_color=store.next_task_color(),
        ))
        return _json_response(task.to_dict())

    @app.get("/api/products/{product_id}/tasks")
    async def list_tasks(product_id: str) -> Response:
        snapshot = store.snapshot()
        _product_or_fail(snapshot, product_id)
        rows = [t.to_dict() for t in snapshot.tasks.values()
                if t.product_id == product_id]
        return _json_response(rows)

    @app.post("/api/catalog")
    async def upload_catalog(request: Request) -> Response:
        body = await _read_body(request)
        from .ingest import load_catalog

        return _json_response(load_catalog(store, body))

    # -- session lifecycle ----------------------------------------------

    @app.post("/api/sessions")
    async def open_session(request: Request) -> Response:
        body = await _read_body(request)
        session = ingestor.open_session(
            developer_name=_req_str(body, "developer_name"),
            product_name=_req_str(body, "product_name"),
            task_issue_key=_req_str(body, "task_issue_key"),
            label=body.get("label", "") if isinstance(body.get("label", ""), str) else "",
            started_at=_opt_int(body, "started_at"),
        )
        return _json_response(session.to_dict())

    @app.put("/api/sessions/{session_id}/close")
    async def close_session(session_id: str, request: Request) -> Response:
        body = await _read_body(request)
        session = ingestor.close_session(
            session_id,
            outcome=_req_str(body, "outcome"),
            finished_at=_opt_int(body, "finished_at"),
        )
        return _json_response(session.to_dict())

    @app.post("/api/sessions/{session_id}/breakpoints")
    async def add_breakpoint(session_id: str, request: Request) -> Response:
        body = await _read_body(request)
        line = body.get("line_number")
        if isinstance(line, bool) or not isinstance(line, int):
            from .errors import InvalidLine

            raise InvalidLine(f"line_number must be an integer, got {line!r}")
        bp = ingestor.record_breakpoint(
            session_id,
            type_full_name=_req_str(body, "type_full_name"),
            line_number=line,
            kind=body.get("kind", "Line"),
            condition=body.get("condition"),
            created_at=_opt_int(body, "created_at"),
        )
        return _json_response(bp.to_dict())

    @app.post("/api/sessions/{session_id}/events")
    async def add_event(session_id: str, request: Request) -> Response:
        body = await _read_body(request)
        kind = _req_str(body, "kind")
        occurred_at = _opt_int(body, "occurred_at")
        from .model import STEP_KINDS, EventKind

        try:
            parsed_kind = EventKind(kind)
        except ValueError:
            raise InvalidValue(f"unknown event kind {kind!r}") from None
        if parsed_kind in STEP_KINDS:
            snapshot_frames = StackSnapshot.from_list(body.get("frames", []))
            created = ingestor.record_step_event(
                session_id, parsed_kind, snapshot_frames, occurred_at)
            return _json_response({"invocations": [inv.to_dict() for inv in created]})
        payload = body.get("payload")
        if payload is not None and not isinstance(payload, dict):
            raise InvalidValue("event payload must be an object")
        event = ingestor.record_event(session_id, parsed_kind, occurred_at, payload)
        return _json_response({"event": event.to_dict(), "invocations": []})

    @app.post("/api/sessions/{session_id}/invocations")
    async def add_invocation(session_id: str, request: Request) -> Response:
        body = await _read_body(request)

        def pair(name: str) -> tuple[str, str]:
            raw = body.get(name)
            if not isinstance(raw, dict):
                raise InvalidValue(f"missing object field {name!r}")
            return (_req_str(raw, "type_full_name"), _req_str(raw, "method_signature"))

        inv = ingestor.record_invocation(
            session_id,
            invoking=pair("invoking"),
            invoked=pair("invoked"),
            occurred_at=_opt_int(body, "occurred_at"),
        )
        return _json_response(inv.to_dict())

    # -- reads ----------------------------------------------------------

    @app.get("/api/developers/search/findByName")
    async def find_by_name(name: str = "") -> Response:
        snapshot = store.snapshot()
        rows = store_mod.find_developer_by_name(snapshot, name)
        return _json_response([d.to_dict() for d in rows])

    @app.get("/api/breakpoints/search")
    async def breakpoint_search(q: str = "", mode: str = "fuzzy",
                                product: str = "") -> Response:
        snapshot = store.snapshot()
        filt = QueryFilter()
        if product:
            entity = snapshot.products.get(product) or snapshot.product_by_name(product)
            if entity is None:
                raise UnknownProduct(f"no product {product!r}")
            filt = QueryFilter(product_id=entity.id)
        mode_map = {m.value.lower(): m for m in search.SearchMode}
        parsed_mode = mode_map.get(mode.lower())
        if parsed_mode is None:
            raise InvalidValue(f"unknown search mode {mode!r}")
        hits = search.search_breakpoints(
            snapshot, search.SearchQuery(text=q, mode=parsed_mode, filter=filt))
        return _json_response([h.to_dict() for h in hits])

    @app.get("/api/products/{product_id}/globalview")
    async def globalview(product_id: str, tasks: Optional[str] = None,
                         granularity: str = "TypeLevel") -> Response:
        snapshot = store.snapshot()
        _product_or_fail(snapshot, product_id)
        filt = QueryFilter(product_id=product_id,
                           task_ids=_resolve_tasks(snapshot, product_id, tasks))
        graph = graphs.build_call_graph(snapshot, filt, _parse_granularity(granularity))
        return _bytes_response(graphs.export_graph(graph, graphs.ExportFormat.GVJSON))

    @app.get("/api/products/{product_id}/globalview/layers")
    async def globalview_layers(product_id: str, tasks: Optional[str] = None,
                                granularity: str = "TypeLevel") -> Response:
        snapshot = store.snapshot()
        _product_or_fail(snapshot, product_id)
        filt = QueryFilter(product_id=product_id,
                           task_ids=_resolve_tasks(snapshot, product_id, tasks))
        graph = graphs.build_call_graph(snapshot, filt, _parse_granularity(granularity))
        layers = graphs.layered_layout(graph)
        return _json_response({"layers": {node: layers[node] for node in sorted(layers)}})

    @app.get("/api/products/{product_id}/recommendations")
    async def recommendations(product_id: str, k: int = 10,
                              session: Optional[str] = None) -> Response:
        snapshot = store.snapshot()
        _product_or_fail(snapshot, product_id)
        spots = metrics.recommend_breakpoints(
            snapshot, product_id, k=k, context_session_id=session)
        return _json_response([s.to_dict() for s in spots])

    @app.get("/api/sessions/{session_id}/metrics")
    async def session_metrics_route(session_id: str) -> Response:
        snapshot = store.snapshot()
        return _json_response(metrics.session_metrics(snapshot, session_id).to_dict())

    @app.get("/api/sessions/{session_id}/sequence-rows")
    async def sequence_rows(session_id: str) -> Response:
        snapshot = store.snapshot()
        rows = graphs.sequence_stack_rows(snapshot, session_id)
        return _json_response([
            {"methods": list(row.methods), "dotted_return_index": row.dotted_return_index}
            for row in rows
        ])

    @app.get("/api/types/{type_id}")
    async def type_route(type_id: str) -> Response:
        snapshot = store.snapshot()
        return _json_response(type_details(snapshot, type_id))

    return app
