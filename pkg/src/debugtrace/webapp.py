"""HTTP + JSON wire protocol over the service layer.

All endpoints live under /api/v1. Authentication is the hex token in the
Authorization header (an optional "Bearer " prefix is tolerated).
Snapshots travel as JSON objects mapping path to base64 bytes. Read-only
listing endpoints (questions, tickets, leaderboards, stats) are public;
everything that mutates state or serves code requires a token.
"""

from __future__ import annotations

from typing import Optional

from fastapi import Depends, FastAPI, Header, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .codec import encode_event, encode_files, encode_question, encode_ticket, decode_files
from .errors import Forbidden, ServiceError
from .model import ErrorClass, EventKind, QuestionKind, SessionMode, Snapshot, UserRole
from .reports.stats import stats_rows
from .service import Service


class LoginBody(BaseModel):
    user_id: str
    secret: str


class QuestionBody(BaseModel):
    kind: str
    title: str
    initial: dict[str, str]
    reference: dict[str, str]
    error_classes: list[str] = Field(default_factory=list)
    difficulty: int = 3


class StartSessionBody(BaseModel):
    question_id: Optional[str] = None
    mode: str = "Training"


class EventBody(BaseModel):
    kind: str
    snapshot: Optional[dict[str, str]] = None
    compile_ok: Optional[bool] = None
    error_log: Optional[str] = None


class EndBody(BaseModel):
    completed: bool = False


class ResumeBody(BaseModel):
    question_id: Optional[str] = None


class TicketBody(BaseModel):
    session_id: str
    form_text: str


class AnswerBody(BaseModel):
    explanation: str
    snapshot: dict[str, str]


class SweepBody(BaseModel):
    now_ms: Optional[int] = None


class CheckBody(BaseModel):
    snapshot: dict[str, str]


def _snapshot_payload(snapshot: Optional[Snapshot]) -> Optional[dict[str, str]]:
    if snapshot is None:
        return None
    return encode_files(snapshot.raw_files())


def create_app(service: Service) -> FastAPI:
    app = FastAPI(title="debugtrace", docs_url=None, redoc_url=None)

    @app.exception_handler(ServiceError)
    def service_error_handler(_request: Request, exc: ServiceError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": exc.code, "message": str(exc)},
        )

    def auth(authorization: Optional[str] = Header(default=None)) -> tuple[str, UserRole]:
        token = authorization or ""
        if token.startswith("Bearer "):
            token = token[len("Bearer ") :]
        return service.authenticate(token.strip() or None)

    # -- auth ---------------------------------------------------------------

    @app.post("/api/v1/login")
    def login(body: LoginBody):
        return service.login(body.user_id, body.secret)

    # -- questions ------------------------------------------------------------

    @app.get("/api/v1/questions")
    async def list_questions():
        # Hot read path (also the load-test target): cached bytes, no
        # threadpool dispatch, no per-request serialization.
        return Response(content=service.questions_wire_payload(), media_type="application/json")

    @app.post("/api/v1/questions")
    def publish_question(body: QuestionBody, user=Depends(auth)):
        question_id = service.publish_question(
            user_id=user[0],
            kind=QuestionKind(body.kind),
            title=body.title,
            initial_files=decode_files(body.initial),
            reference_files=decode_files(body.reference),
            error_classes=frozenset(ErrorClass(c) for c in body.error_classes),
            difficulty=body.difficulty,
        )
        return {"question_id": question_id}

    @app.get("/api/v1/questions/{question_id}")
    def get_question(question_id: str):
        return encode_question(service.get_question(question_id))

    @app.get("/api/v1/questions/{question_id}/initial-snapshot")
    def get_initial_snapshot(question_id: str, user=Depends(auth)):
        snapshot = service.initial_snapshot(question_id)
        return {"snapshot_id": snapshot.snapshot_id, "snapshot": _snapshot_payload(snapshot)}

    @app.get("/api/v1/questions/{question_id}/leaderboard")
    def leaderboard(question_id: str):
        return {
            "question_id": question_id,
            "entries": [
                {
                    "user_id": e.user_id,
                    "debug_count": e.debug_count,
                    "elapsed_seconds": e.elapsed_seconds,
                    "completed_at": e.completed_at,
                }
                for e in service.leaderboard(question_id)
            ],
        }

    # -- sessions -------------------------------------------------------------

    @app.post("/api/v1/sessions/resume")
    def resume_session(body: ResumeBody, user=Depends(auth)):
        session_id, snapshot = service.resume_session(user[0], body.question_id)
        return {
            "session_id": session_id,
            "snapshot_id": snapshot.snapshot_id,
            "snapshot": _snapshot_payload(snapshot),
        }

    @app.post("/api/v1/sessions")
    def start_session(body: StartSessionBody, user=Depends(auth)):
        session_id, snapshot = service.start_session(user[0], body.question_id, SessionMode(body.mode))
        return {
            "session_id": session_id,
            "snapshot_id": snapshot.snapshot_id if snapshot else None,
            "snapshot": _snapshot_payload(snapshot),
        }

    @app.post("/api/v1/sessions/{session_id}/events")
    def record_event(session_id: str, body: EventBody, user=Depends(auth)):
        event_id = service.record_event(
            user_id=user[0],
            session_id=session_id,
            kind=EventKind(body.kind),
            files=decode_files(body.snapshot) if body.snapshot else None,
            compile_ok=body.compile_ok,
            error_log=body.error_log,
        )
        return {"event_id": event_id}

    @app.post("/api/v1/sessions/{session_id}/end")
    def end_session(session_id: str, body: EndBody, user=Depends(auth)):
        return service.end_session(user[0], session_id, body.completed)

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str, user=Depends(auth)):
        record = service.get_session(user[0], session_id)
        return {
            "session_id": record.session_id,
            "user_id": record.user_id,
            "question_id": record.question_id,
            "mode": record.mode.value,
            "state": record.state.value,
            "started_at": record.started_at,
            "last_activity_at": record.last_activity_at,
            "ended_at": record.ended_at,
            "completed": record.completed,
            "debug_count": record.debug_count,
            "events": [encode_event(e) for e in record.events],
        }

    # -- tickets --------------------------------------------------------------

    @app.get("/api/v1/tickets")
    def list_tickets():
        return [encode_ticket(t) for t in service.list_tickets()]

    @app.post("/api/v1/tickets")
    def create_ticket(body: TicketBody, user=Depends(auth)):
        ticket_id = service.create_ticket(user[0], body.session_id, body.form_text)
        return {"ticket_id": ticket_id}

    @app.get("/api/v1/tickets/{ticket_id}")
    def get_ticket(ticket_id: str):
        return encode_ticket(service.get_ticket(ticket_id))

    @app.get("/api/v1/tickets/{ticket_id}/snapshot")
    def get_ticket_snapshot(ticket_id: str, user=Depends(auth)):
        ticket = service.get_ticket(ticket_id)
        snapshot = service.store.get_snapshot(ticket.snapshot_id)
        return {"snapshot_id": snapshot.snapshot_id, "snapshot": _snapshot_payload(snapshot)}

    @app.post("/api/v1/tickets/{ticket_id}/answer")
    def answer_ticket(ticket_id: str, body: AnswerBody, user=Depends(auth)):
        ticket = service.answer_ticket(user[0], ticket_id, body.explanation, decode_files(body.snapshot))
        return encode_ticket(ticket)

    @app.post("/api/v1/check")
    def check_snapshot(body: CheckBody, user=Depends(auth)):
        # Stateless parse check backing the plugin's default compile command.
        from .jsparse import parse_snapshot
        from .model import Snapshot

        snapshot = Snapshot.create(decode_files(body.snapshot))
        logic, view = parse_snapshot(snapshot)
        errors = []
        for path, outcome in sorted(logic.items()):
            if not outcome.ok:
                e = outcome.error
                errors.append({"path": path, "line": e.line, "col": e.col, "message": e.message})
        for path, outcome in sorted(view.items()):
            if not outcome.ok:
                e = outcome.error
                errors.append({"path": path, "line": e.line, "col": e.col, "message": e.message})
        return {"ok": not errors, "errors": errors}

    # -- stats and admin --------------------------------------------------------

    @app.get("/api/v1/stats")
    def stats(group_by: str = "question"):
        rows = stats_rows(service.session_records(), service.question_map(), group_by=group_by)
        return {"group_by": group_by, "rows": [row.to_dict() for row in rows]}

    @app.post("/api/v1/admin/sweep")
    def admin_sweep(body: SweepBody, user=Depends(auth)):
        if user[1] is not UserRole.TEACHER:
            raise Forbidden("sweep is a teacher operation")
        return {"transitioned": service.sweep_timeouts(now=body.now_ms)}

    return app
