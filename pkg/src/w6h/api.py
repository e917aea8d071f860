"""HTTP interface over matrices and sessions.

Thin JSON mappings onto the model/session operations: request and response
bodies reuse the storage module's document schemas. Session mutations are
serialized per session; matrix edits are serialized globally. Every
successful mutation appends exactly one event to that session's log, so
replaying the log reproduces the served state.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import defaults
from .errors import (
    DanglingCandidateRef,
    DuplicateId,
    NotAnswered,
    NotPending,
    NotWhy,
    SubsetViolation,
    UnknownGroup,
    UnknownInstance,
    VerdictOnNonWhy,
    W6HError,
)
from .model import Concern, Interrogative, PatternMatrix, PrecedenceGraph, add_concern
from .session import (
    Answer,
    Mode,
    ScopeEntry,
    Session,
    Status,
    Verdict,
    apply_verdict,
    coverage,
    create_session,
    next_questions,
    now_iso,
    record_answer,
    skip,
)
from .storage import (
    SessionEvent,
    answered_event,
    append_to_log,
    concern_to_dict,
    created_event,
    gated_event,
    instance_to_dict,
    matrix_to_dict,
    save_matrix,
    session_to_dict,
    skipped_event,
    write_log,
)

_STATUS_BY_ERROR: dict[type, int] = {
    UnknownInstance: 404,
    NotPending: 409,
    SubsetViolation: 409,
    NotAnswered: 409,
    NotWhy: 409,
    DuplicateId: 409,
    UnknownGroup: 422,
    VerdictOnNonWhy: 422,
    DanglingCandidateRef: 422,
}


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message},
    )


@dataclass
class _SessionRecord:
    session: Session
    events: list[SessionEvent]
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Store:
    """All served state plus the locks that serialize writes to it."""

    def __init__(
        self,
        matrix: PatternMatrix,
        graph: PrecedenceGraph,
        matrix_path: str | None,
        log_dir: str | None,
    ) -> None:
        self.matrix = matrix
        self.graph = graph
        self.matrix_path = matrix_path
        self.log_dir = Path(log_dir) if log_dir else None
        self.matrix_lock = threading.Lock()
        self.sessions: dict[str, _SessionRecord] = {}
        self.sessions_lock = threading.Lock()
        self.etag = self._compute_etag()

    def _compute_etag(self) -> str:
        return '"' + hashlib.sha256(save_matrix(self.matrix).encode("utf-8")).hexdigest()[:32] + '"'

    def refresh_etag(self) -> None:
        self.etag = self._compute_etag()

    def log_path(self, session_id: str) -> Path | None:
        if self.log_dir is None:
            return None
        return self.log_dir / f"{session_id}.w6hlog.jsonl"


class ScopeEntryBody(BaseModel):
    group: str
    tag: str | None = None


class SessionCreateBody(BaseModel):
    group: str | None = None
    scope: list[ScopeEntryBody] | None = None
    mode: Literal["full", "triage"] = "full"
    id: str | None = None


class AnswerBody(BaseModel):
    instance_id: str
    text: str = ""
    items: list[str] | None = None
    verdict: Literal["proceed", "not_needed"] | None = None
    timestamp: str | None = None


class SkipBody(BaseModel):
    instance_id: str


class GateBody(BaseModel):
    instance_id: str
    verdict: Literal["proceed", "not_needed"]
    affected_tag: str


class ConcernBody(BaseModel):
    id: str
    text: str
    interrogative: Literal["who", "what", "which", "where", "how", "why", "when"]
    groups: list[str]
    question: str | None = None
    tags: list[str] = []
    gatekeeper: bool = False
    candidates_from: str | None = None


def _unblocked_payload(session: Session) -> list[dict]:
    return [instance_to_dict(q) for q in next_questions(session)]


def _coverage_payload(session: Session) -> list[dict]:
    return [
        {
            "group": group,
            "interrogative": interrogative.value,
            "total": cell.total,
            "answered": cell.answered,
            "skipped": cell.skipped,
            "gated_out": cell.gated_out,
            "pending": cell.pending,
        }
        for (group, interrogative), cell in coverage(session).cells.items()
    ]


def create_app(
    matrix: PatternMatrix | None = None,
    graph: PrecedenceGraph | None = None,
    matrix_path: str | None = None,
    log_dir: str | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    """Build the service around one matrix and one graph.

    When matrix_path is given, concern insertions are persisted to that
    file; when log_dir is given, each session's event log is also written
    under it.
    """
    store = _Store(
        matrix=matrix or defaults.default_matrix(),
        graph=graph or defaults.default_graph(),
        matrix_path=matrix_path,
        log_dir=log_dir,
    )
    app = FastAPI(title="w6h", docs_url=None, redoc_url=None)
    app.state.store = store

    @app.exception_handler(W6HError)
    def _domain_error(request: Request, exc: W6HError) -> JSONResponse:
        status = _STATUS_BY_ERROR.get(type(exc), 400)
        return _error(status, type(exc).__name__, str(exc))

    @app.exception_handler(RequestValidationError)
    def _validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return _error(422, "ValidationError", str(exc.errors()))

    # -- matrix ------------------------------------------------------------

    @app.get("/api/matrix")
    def get_matrix(request: Request) -> Response:
        if request.headers.get("if-none-match") == store.etag:
            return Response(status_code=304, headers={"ETag": store.etag})
        return JSONResponse(matrix_to_dict(store.matrix), headers={"ETag": store.etag})

    @app.post("/api/matrix/concerns", status_code=201)
    def post_concern(body: ConcernBody) -> dict:
        try:
            concern = Concern(
                id=body.id,
                text=body.text,
                interrogative=Interrogative(body.interrogative),
                groups=frozenset(body.groups),
                question=body.question,
                tags=frozenset(body.tags),
                gatekeeper=body.gatekeeper,
                candidates_from=body.candidates_from,
            )
        except ValueError as exc:
            raise RequestValidationError([{"msg": str(exc)}]) from exc
        with store.matrix_lock:
            store.matrix = add_concern(store.matrix, concern)
            store.refresh_etag()
            if store.matrix_path:
                Path(store.matrix_path).write_text(
                    save_matrix(store.matrix), encoding="utf-8"
                )
        return {"added": concern_to_dict(concern)}

    # -- sessions ----------------------------------------------------------

    def _record_or_none(session_id: str) -> _SessionRecord | None:
        return store.sessions.get(session_id)

    @app.post("/api/sessions", status_code=201)
    def post_session(body: SessionCreateBody):
        if body.scope is not None:
            scope = [ScopeEntry(group=e.group, tag=e.tag) for e in body.scope]
        elif body.group is not None:
            scope = [ScopeEntry(group=body.group)]
        else:
            return _error(422, "ValidationError", "one of 'group' or 'scope' is required")
        session = create_session(
            store.matrix, store.graph, scope, Mode(body.mode), session_id=body.id
        )
        record = _SessionRecord(session=session, events=[created_event(session)])
        with store.sessions_lock:
            if session.id in store.sessions:
                raise DuplicateId(f"session id {session.id!r} already exists")
            store.sessions[session.id] = record
        path = store.log_path(session.id)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            write_log(path, record.events)
        pending = sum(1 for i in session.instances if i.status is Status.PENDING)
        return {
            "id": session.id,
            "pending": pending,
            "session": session_to_dict(session),
            "unblocked": _unblocked_payload(session),
        }

    @app.get("/api/sessions")
    def list_sessions(offset: int = 0, limit: int = 50) -> dict:
        with store.sessions_lock:
            records = list(store.sessions.values())
        items = []
        for record in records[offset : offset + limit]:
            session = record.session
            items.append(
                {
                    "id": session.id,
                    "created": session.created,
                    "mode": session.mode.value,
                    "matrix_ref": session.matrix_ref,
                    "pending": sum(
                        1 for i in session.instances if i.status is Status.PENDING
                    ),
                }
            )
        return {"sessions": items, "offset": offset, "limit": limit, "total": len(records)}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        record = _record_or_none(session_id)
        if record is None:
            return _error(404, "UnknownSession", f"no session {session_id!r}")
        return {
            "session": session_to_dict(record.session),
            "unblocked": _unblocked_payload(record.session),
        }

    @app.get("/api/sessions/{session_id}/next")
    def get_next(session_id: str):
        record = _record_or_none(session_id)
        if record is None:
            return _error(404, "UnknownSession", f"no session {session_id!r}")
        return {"questions": _unblocked_payload(record.session)}

    def _mutate(record: _SessionRecord, updated: Session, event: SessionEvent) -> None:
        record.session = updated
        record.events.append(event)
        path = store.log_path(updated.id)
        if path is not None:
            append_to_log(path, event)

    @app.post("/api/sessions/{session_id}/answers")
    def post_answer(session_id: str, body: AnswerBody):
        record = _record_or_none(session_id)
        if record is None:
            return _error(404, "UnknownSession", f"no session {session_id!r}")
        with record.lock:
            answer = Answer(
                instance_id=body.instance_id,
                text=body.text,
                items=tuple(body.items) if body.items is not None else None,
                verdict=Verdict(body.verdict) if body.verdict else None,
                timestamp=body.timestamp or now_iso(),
            )
            updated = record_answer(record.session, body.instance_id, answer)
            _mutate(record, updated, answered_event(len(record.events) + 1, answer))
            return {
                "answered": body.instance_id,
                "unblocked": _unblocked_payload(updated),
                "session": session_to_dict(updated),
            }

    @app.post("/api/sessions/{session_id}/skip")
    def post_skip(session_id: str, body: SkipBody):
        record = _record_or_none(session_id)
        if record is None:
            return _error(404, "UnknownSession", f"no session {session_id!r}")
        with record.lock:
            updated = skip(record.session, body.instance_id)
            _mutate(
                record,
                updated,
                skipped_event(len(record.events) + 1, body.instance_id),
            )
            return {
                "skipped": body.instance_id,
                "unblocked": _unblocked_payload(updated),
                "session": session_to_dict(updated),
            }

    @app.post("/api/sessions/{session_id}/gate")
    def post_gate(session_id: str, body: GateBody):
        record = _record_or_none(session_id)
        if record is None:
            return _error(404, "UnknownSession", f"no session {session_id!r}")
        with record.lock:
            updated = apply_verdict(
                record.session,
                body.instance_id,
                Verdict(body.verdict),
                body.affected_tag,
            )
            _mutate(
                record,
                updated,
                gated_event(
                    len(record.events) + 1,
                    body.instance_id,
                    Verdict(body.verdict),
                    body.affected_tag,
                ),
            )
            return {
                "gated": body.instance_id,
                "unblocked": _unblocked_payload(updated),
                "session": session_to_dict(updated),
            }

    @app.get("/api/sessions/{session_id}/coverage")
    def get_coverage(session_id: str):
        record = _record_or_none(session_id)
        if record is None:
            return _error(404, "UnknownSession", f"no session {session_id!r}")
        return {"cells": _coverage_payload(record.session)}

    # -- static UI ---------------------------------------------------------

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    else:

        @app.get("/")
        def index() -> dict:
            return {"service": "w6h", "api": "/api"}

    return app
