"""HTTP/JSON service exposing the profiling pipeline.

Uploads create immutable log snapshots keyed by content hash (same bytes and
parse options yield the same id), so every read endpoint is a pure function
of its URL and the stored snapshot. Endpoint responses are the canonical
serializations produced by the library, byte for byte.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from threading import Lock

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .discovery import discover_dfg
from .enhancement import AggregationFn, EnhancedModel, Selection, enhance_model, export_dot, export_json
from .errors import AttrLensError, ParseError, UnknownLogError
from .eventlog import EventLog
from .ingest import ColumnMapping, parse_csv, parse_xes
from .profiles import FilterQuery, build_profile, filter_attributes, filter_result_to_json, profiles_to_json
from .typeclass import DEFAULT_TYPE_THRESHOLD

DEFAULT_PORT = 8000
DEFAULT_MAX_UPLOAD = 50 * 1024 * 1024

PORT_ENV = "ATTRLENS_PORT"
MAX_UPLOAD_ENV = "ATTRLENS_MAX_UPLOAD_BYTES"


def _canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


@dataclass(frozen=True)
class StoredLog:
    """An immutable uploaded snapshot."""

    id: str
    log: EventLog
    format: str


class LogStore:
    """In-memory snapshot store keyed by content hash.

    With a directory attached, each upload is also written as a small JSON
    envelope (raw bytes plus parse options) and reloaded on construction, so
    restarts keep their ids stable.
    """

    def __init__(self, directory: str | Path | None = None):
        self._logs: dict[str, StoredLog] = {}
        self._lock = Lock()
        self._directory = Path(directory) if directory else None
        if self._directory:
            self._directory.mkdir(parents=True, exist_ok=True)
            for path in sorted(self._directory.glob("*.json")):
                envelope = json.loads(path.read_text("utf-8"))
                self.add(
                    base64.b64decode(envelope["data"]),
                    fmt=envelope["format"],
                    mapping=ColumnMapping(**envelope["mapping"]) if envelope["mapping"] else None,
                )

    @staticmethod
    def _identify(data: bytes, fmt: str, mapping: ColumnMapping | None) -> str:
        digest = hashlib.sha256()
        digest.update(fmt.encode())
        if mapping is not None:
            digest.update(
                _canonical(
                    {
                        "case": mapping.case_col,
                        "activity": mapping.activity_col,
                        "time": mapping.time_col,
                        "timeFormat": mapping.time_format,
                        "booleanCols": sorted(mapping.boolean_cols),
                    }
                ).encode()
            )
        digest.update(b"\x00")
        digest.update(data)
        return digest.hexdigest()[:12]

    def add(self, data: bytes, *, fmt: str, mapping: ColumnMapping | None = None) -> StoredLog:
        """Parse and store an upload; identical uploads return the same snapshot."""
        if fmt == "xes":
            log = parse_xes(data)
        elif fmt == "csv":
            log = parse_csv(data, mapping)
        else:
            raise ParseError(f"unknown log format {fmt!r}; expected csv or xes")
        log_id = self._identify(data, fmt, mapping)
        with self._lock:
            existing = self._logs.get(log_id)
            if existing is not None:
                return existing
            stored = StoredLog(log_id, log, fmt)
            self._logs[log_id] = stored
        if self._directory:
            envelope = {
                "format": fmt,
                "mapping": None
                if mapping is None
                else {
                    "case_col": mapping.case_col,
                    "activity_col": mapping.activity_col,
                    "time_col": mapping.time_col,
                    "time_format": mapping.time_format,
                    "boolean_cols": sorted(mapping.boolean_cols),
                },
                "data": base64.b64encode(data).decode("ascii"),
            }
            (self._directory / f"{log_id}.json").write_text(json.dumps(envelope), "utf-8")
        return stored

    def get(self, log_id: str) -> StoredLog:
        try:
            return self._logs[log_id]
        except KeyError:
            raise UnknownLogError(f"no log with id {log_id!r}") from None

    def ids(self) -> list[str]:
        return sorted(self._logs)


def _json_response(payload: str, status: int = 200) -> Response:
    return Response(content=payload, status_code=status, media_type="application/json")


def _error(status: int, code: str, message: str) -> Response:
    return _json_response(_canonical({"error": code, "message": message}), status)


def _parse_selection(body: dict) -> Selection:
    attribute = body.get("attribute")
    if not isinstance(attribute, str) or not attribute:
        raise ValueError("body needs an 'attribute' string")
    fn = AggregationFn.parse(str(body.get("fn", "")))
    return Selection(attribute, fn, _parse_scope(str(body.get("scope", "all"))))


def _parse_scope(scope: str) -> str | None:
    if scope == "all":
        return None
    prefix, _, name = scope.partition(":")
    if prefix != "activity" or not name:
        raise ValueError(f"scope must be 'all' or 'activity:<name>', got {scope!r}")
    return name


def create_app(store: LogStore | None = None, *, max_upload_bytes: int | None = None) -> FastAPI:
    """Build the HTTP application around a (possibly pre-seeded) log store."""
    store = store if store is not None else LogStore()
    if max_upload_bytes is None:
        max_upload_bytes = int(os.environ.get(MAX_UPLOAD_ENV, DEFAULT_MAX_UPLOAD))

    app = FastAPI(title="attrlens", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    @app.exception_handler(AttrLensError)
    async def _handle_domain_error(request: Request, exc: AttrLensError):
        status = 404 if isinstance(exc, UnknownLogError) else 400
        return _error(status, exc.code, exc.message)

    @app.exception_handler(ValueError)
    async def _handle_value_error(request: Request, exc: ValueError):
        return _error(400, "bad-request", str(exc))

    @app.post("/logs")
    async def upload_log(
        request: Request,
        format: str | None = None,
        caseCol: str = "Case ID",
        activityCol: str = "Activity",
        timeCol: str = "Timestamp",
        timeFormat: str = "auto",
        booleanCols: str = "",
    ):
        data = await request.body()
        if len(data) > max_upload_bytes:
            return _error(413, "too-large", f"upload exceeds {max_upload_bytes} bytes")
        if not data:
            return _error(400, "parse-error", "empty upload")
        fmt = format or ("xes" if data.lstrip()[:1] == b"<" else "csv")
        mapping = None
        if fmt == "csv":
            mapping = ColumnMapping(
                case_col=caseCol,
                activity_col=activityCol,
                time_col=timeCol,
                time_format=timeFormat,
                boolean_cols=frozenset(c for c in booleanCols.split(",") if c),
            )
        stored = store.add(data, fmt=fmt, mapping=mapping)
        return _json_response(
            _canonical(
                {
                    "id": stored.id,
                    "traces": len(stored.log.traces),
                    "events": stored.log.event_count,
                }
            ),
            status=201,
        )

    @app.get("/logs")
    async def list_logs():
        return _json_response(_canonical({"logs": store.ids()}))

    @app.get("/logs/{log_id}/profile")
    async def get_profile(log_id: str, th: float = DEFAULT_TYPE_THRESHOLD):
        stored = store.get(log_id)
        return _json_response(profiles_to_json(build_profile(stored.log, th), th))

    @app.get("/logs/{log_id}/attributes")
    async def get_attributes(
        log_id: str,
        activity: str | None = None,
        characteristic: str | None = None,
        cvMin: float | None = None,
        cvMax: float | None = None,
        type: str | None = None,
        th: float = DEFAULT_TYPE_THRESHOLD,
    ):
        stored = store.get(log_id)
        query = FilterQuery(activity, characteristic, cvMin, cvMax, type)
        result = filter_attributes(build_profile(stored.log, th), query)
        return _json_response(filter_result_to_json(result, query))

    @app.get("/logs/{log_id}/model")
    async def get_model(log_id: str):
        stored = store.get(log_id)
        return _json_response(export_json(EnhancedModel.plain(discover_dfg(stored.log))))

    @app.post("/logs/{log_id}/enhance")
    async def post_enhance(log_id: str, request: Request):
        stored = store.get(log_id)
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            return _error(400, "bad-request", f"invalid JSON body: {exc}")
        selection = _parse_selection(body if isinstance(body, dict) else {})
        dep = enhance_model(discover_dfg(stored.log), stored.log, selection)
        return _json_response(export_json(dep))

    @app.get("/logs/{log_id}/dep.dot")
    async def get_dot(
        log_id: str,
        attribute: str | None = None,
        fn: str = "mean",
        scope: str = "all",
    ):
        stored = store.get(log_id)
        dep = EnhancedModel.plain(discover_dfg(stored.log))
        if attribute:
            selection = Selection(attribute, AggregationFn.parse(fn), _parse_scope(scope))
            dep = enhance_model(dep, stored.log, selection)
        return Response(content=export_dot(dep), media_type="text/vnd.graphviz")

    return app


def serve(store: LogStore, port: int | None = None, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted."""
    import uvicorn

    if port is None:
        port = int(os.environ.get(PORT_ENV, DEFAULT_PORT))
    uvicorn.run(create_app(store), host=host, port=port, log_level="info")
