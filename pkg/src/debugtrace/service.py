"""Platform service: token login, session lifecycle, ingestion, question
bank, help/answer workflow, and leaderboards.

The service keeps live state in memory and writes through to the store;
per-session writes serialize on a session lock (the store's single-writer
contract), while end-of-session analysis runs outside any lock. A clock
callable is injected so tests can force timeouts deterministically.
"""

from __future__ import annotations

import hashlib
import json
import secrets as secrets_mod
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional

from .astdiff import diff_file_maps
from .behavior import annotate_direction, label_sequence
from .config import Config
from .errors import (
    AlreadyEnded, AuthExpired, AuthFailed, EmptySession, Forbidden, MissingSnapshot,
    NoSeededError, NoSnapshotYet, NotOwner, NothingToResume, QuestionNotFound,
    ReferenceUnparseableError, ResumeAvailable, SessionExists, SessionNotActive,
    SessionNotFound, TicketNotFound, TicketNotOpen,
)
from .jsparse import parse_snapshot, snapshot_structural_hash
from .model import (
    BehaviorSequence, DebugEvent, EventKind, FileLayer, HelpTicket, Question, QuestionKind,
    SessionMode, SessionRecord, SessionState, Snapshot, TicketAnswer, TicketStatus, UserRole,
)
from .store import Store


def now_ms() -> int:
    return int(time.time() * 1000)


def hash_secret(secret: str) -> str:
    return hashlib.sha256(secret.encode("utf-8")).hexdigest()


def _new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


@dataclass
class _LiveSession:
    session_id: str
    user_id: str
    question_id: Optional[str]
    question_key: str
    mode: SessionMode
    state: SessionState
    started_at: int
    last_activity_at: int
    ended_at: Optional[int] = None
    completed: bool = False
    events: list[DebugEvent] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def to_record(self) -> SessionRecord:
        return SessionRecord(
            session_id=self.session_id,
            user_id=self.user_id,
            question_id=self.question_id,
            mode=self.mode,
            state=self.state,
            events=tuple(self.events),
            started_at=self.started_at,
            last_activity_at=self.last_activity_at,
            ended_at=self.ended_at,
            completed=self.completed,
        )


@dataclass(frozen=True)
class LeaderboardEntry:
    user_id: str
    debug_count: int
    elapsed_seconds: float
    completed_at: int


class Service:
    def __init__(self, store: Store, config: Optional[Config] = None, clock: Callable[[], int] = now_ms):
        self.store = store
        self.config = config or Config()
        self._now = clock
        self._lock = threading.RLock()
        self._users: dict[str, dict] = store.load_users()
        self._tokens: dict[str, dict] = store.load_tokens()
        self._questions: dict[str, Question] = store.load_questions()
        self._tickets: dict[str, HelpTicket] = store.load_tickets()
        self._questions_payload: Optional[bytes] = None
        self._sessions: dict[str, _LiveSession] = {}
        for record in store.iter_sessions():
            self._sessions[record.session_id] = _LiveSession(
                session_id=record.session_id,
                user_id=record.user_id,
                question_id=record.question_id,
                question_key=self._question_key(record.question_id, record.mode),
                mode=record.mode,
                state=record.state,
                started_at=record.started_at,
                last_activity_at=record.last_activity_at,
                ended_at=record.ended_at,
                completed=record.completed,
                events=list(record.events),
            )

    # -- users and auth ----------------------------------------------------

    def provision_user(self, user_id: str, secret: str, role: UserRole) -> None:
        with self._lock:
            self.store.put_user(user_id, role, hash_secret(secret))
            self._users[user_id] = {"user_id": user_id, "role": role.value, "secret_hash": hash_secret(secret)}

    def list_users(self) -> list[dict]:
        with self._lock:
            return [{"user_id": u["user_id"], "role": u["role"]} for u in self._users.values()]

    def login(self, user_id: str, secret: str) -> dict:
        with self._lock:
            user = self._users.get(user_id)
            if user is None or user["secret_hash"] != hash_secret(secret):
                raise AuthFailed("unknown user or bad secret")
            token = secrets_mod.token_hex(32)
            issued = self._now()
            expires = issued + self.config.token_ttl_ms
            self.store.put_token(token, user_id, issued, expires)
            self._tokens[token] = {
                "token": token, "user_id": user_id, "issued_at": issued, "expires_at": expires,
            }
            return {"token": token, "user_id": user_id, "issued_at": issued, "expires_at": expires}

    def authenticate(self, token: Optional[str]) -> tuple[str, UserRole]:
        with self._lock:
            entry = self._tokens.get(token or "")
            if entry is None:
                raise AuthFailed("missing or unknown token")
            if self._now() >= entry["expires_at"]:
                raise AuthExpired("token expired")
            user = self._users[entry["user_id"]]
            return user["user_id"], UserRole(user["role"])

    def role_of(self, user_id: str) -> UserRole:
        with self._lock:
            return UserRole(self._users[user_id]["role"])

    # -- questions ---------------------------------------------------------

    def publish_question(
        self,
        user_id: str,
        kind: QuestionKind,
        title: str,
        initial_files: dict[str, bytes],
        reference_files: dict[str, bytes],
        error_classes: frozenset,
        difficulty: int,
    ) -> str:
        role = self.role_of(user_id)
        if kind is QuestionKind.ACCEPTANCE and role is UserRole.STUDENT:
            raise Forbidden("acceptance questions need a teaching assistant or teacher")
        initial = Snapshot.create(initial_files, captured_at=self._now())
        reference = Snapshot.create(reference_files, captured_at=self._now())
        reference_hash = self._reference_hash_or_raise(reference)
        if kind is QuestionKind.ACCEPTANCE:
            # The seeded error must exist: tree-level equality of logic files
            # (formatting ignored) plus byte-equality elsewhere means none.
            if initial.snapshot_id == reference.snapshot_id or (
                snapshot_structural_hash(initial) == reference_hash
                and self._non_logic_equal(initial, reference)
            ):
                raise NoSeededError("initial snapshot does not differ from the reference")
        self.store.put_snapshot(initial)
        self.store.put_snapshot(reference)
        question = Question(
            question_id=_new_id("q"),
            kind=kind,
            author_id=user_id,
            title=title,
            initial_snapshot_id=initial.snapshot_id,
            reference_snapshot_id=reference.snapshot_id,
            error_classes=error_classes,
            difficulty=difficulty,
            published=True,
        )
        with self._lock:
            self.store.put_question(question)
            self._questions[question.question_id] = question
            self._questions_payload = None
        return question.question_id

    def _reference_hash_or_raise(self, reference: Snapshot) -> Optional[str]:
        h = snapshot_structural_hash(reference)
        if h is None:
            raise ReferenceUnparseableError("reference logic files must parse")
        return h

    @staticmethod
    def _non_logic_equal(a: Snapshot, b: Snapshot) -> bool:
        a_rest = {p: r.data for p, r in a.files.items() if r.layer is not FileLayer.LOGIC}
        b_rest = {p: r.data for p, r in b.files.items() if r.layer is not FileLayer.LOGIC}
        return a_rest == b_rest

    def list_questions(self) -> list[Question]:
        with self._lock:
            return sorted(
                (q for q in self._questions.values() if q.published),
                key=lambda q: q.question_id,
            )

    def questions_wire_payload(self) -> bytes:
        """Pre-rendered JSON for the hot read path; rebuilt on publish."""
        with self._lock:
            if self._questions_payload is None:
                from .codec import encode_question

                rendered = json.dumps(
                    [encode_question(q) for q in self.list_questions()],
                    separators=(",", ":"),
                )
                self._questions_payload = rendered.encode("utf-8")
            return self._questions_payload

    def get_question(self, question_id: str) -> Question:
        with self._lock:
            q = self._questions.get(question_id)
        if q is None or not q.published:
            raise QuestionNotFound(question_id)
        return q

    def initial_snapshot(self, question_id: str) -> Snapshot:
        q = self.get_question(question_id)
        return self.store.get_snapshot(q.initial_snapshot_id)

    def reference_snapshot(self, question_id: str, user_id: str) -> Snapshot:
        # Reference solutions are visible to TA/Teacher roles only.
        if self.role_of(user_id) is UserRole.STUDENT:
            raise Forbidden("reference snapshots are not visible to students")
        q = self.get_question(question_id)
        return self.store.get_snapshot(q.reference_snapshot_id)

    # -- session lifecycle ---------------------------------------------------

    @staticmethod
    def _question_key(question_id: Optional[str], mode: SessionMode) -> str:
        if question_id:
            return question_id
        return f"{mode.value}:local"

    def _find_open_session(self, user_id: str, question_key: str) -> Optional[_LiveSession]:
        for live in self._sessions.values():
            if (
                live.user_id == user_id
                and live.question_key == question_key
                and live.state in (SessionState.ACTIVE, SessionState.TIMED_OUT)
            ):
                return live
        return None

    def _resolve_start_source(
        self, question_id: Optional[str], mode: SessionMode, user_id: str
    ) -> tuple[Optional[str], Optional[Snapshot]]:
        """Returns (stored question_id, initial snapshot or None)."""
        if mode is SessionMode.TROUBLESHOOT:
            if self.role_of(user_id) is not UserRole.TEACHING_ASSISTANT:
                raise Forbidden("troubleshooting is a teaching-assistant workflow")
            ticket = self._tickets.get(question_id or "")
            if ticket is None:
                raise QuestionNotFound(f"no ticket {question_id}")
            return question_id, self.store.get_snapshot(ticket.snapshot_id)
        if question_id is None:
            if mode is not SessionMode.FREE_DEBUG:
                raise QuestionNotFound("question_id required outside free debugging")
            return None, None
        with self._lock:
            q = self._questions.get(question_id)
        if q is not None:
            if not q.published:
                raise QuestionNotFound(question_id)
            return question_id, self.store.get_snapshot(q.initial_snapshot_id)
        if mode is SessionMode.FREE_DEBUG and question_id in self._shared_snapshot_ids():
            return question_id, self.store.get_snapshot(question_id)
        raise QuestionNotFound(question_id)

    def _shared_snapshot_ids(self) -> set[str]:
        # Code offered for pulling: snapshots on public tickets and the
        # initial snapshots of published questions.
        with self._lock:
            shared = {t.snapshot_id for t in self._tickets.values()}
            for t in self._tickets.values():
                if t.answer is not None:
                    shared.add(t.answer.answer_snapshot_id)
            shared.update(
                q.initial_snapshot_id for q in self._questions.values() if q.published and q.initial_snapshot_id
            )
        return shared

    def start_session(
        self, user_id: str, question_id: Optional[str], mode: SessionMode
    ) -> tuple[str, Optional[Snapshot]]:
        question_id, initial = self._resolve_start_source(question_id, mode, user_id)
        key = self._question_key(question_id, mode)
        with self._lock:
            existing = self._find_open_session(user_id, key)
            if existing is not None:
                if existing.state is SessionState.ACTIVE:
                    raise SessionExists(existing.session_id)
                raise ResumeAvailable(existing.session_id)
            session_id = _new_id("s")
            started = self._now()
            self.store.create_session(session_id, user_id, question_id, mode, started)
            self._sessions[session_id] = _LiveSession(
                session_id=session_id,
                user_id=user_id,
                question_id=question_id,
                question_key=key,
                mode=mode,
                state=SessionState.ACTIVE,
                started_at=started,
                last_activity_at=started,
            )
        return session_id, initial

    def _session_or_raise(self, session_id: str) -> _LiveSession:
        with self._lock:
            live = self._sessions.get(session_id)
        if live is None:
            raise SessionNotFound(session_id)
        return live

    def record_event(
        self,
        user_id: str,
        session_id: str,
        kind: EventKind,
        files: Optional[dict[str, bytes]] = None,
        compile_ok: Optional[bool] = None,
        error_log: Optional[str] = None,
    ) -> int:
        live = self._session_or_raise(session_id)
        if live.user_id != user_id:
            raise NotOwner(session_id)
        snapshot: Optional[Snapshot] = None
        if kind is EventKind.SAVE:
            if not files:
                raise MissingSnapshot("Save events carry a snapshot")
        if files:
            snapshot = Snapshot.create(files, captured_at=self._now())
            self.store.put_snapshot(snapshot)
        with live.lock:
            if live.state is not SessionState.ACTIVE:
                raise SessionNotActive(f"session is {live.state.value}")
            at = self._now()
            event = DebugEvent(
                event_id=len(live.events) + 1,
                kind=kind,
                at=at,
                snapshot_id=snapshot.snapshot_id if snapshot else None,
                compile_ok=compile_ok if kind is EventKind.COMPILE else None,
                error_log=error_log,
            )
            self.store.append_event(session_id, event)
            live.events.append(event)
            live.last_activity_at = at
            return event.event_id

    def sweep_timeouts(self, now: Optional[int] = None) -> list[str]:
        """Transition idle Active sessions to TimedOut; nothing is deleted."""
        moment = self._now() if now is None else now
        timeout = self.config.session_timeout_ms
        transitioned = []
        with self._lock:
            candidates = list(self._sessions.values())
        for live in candidates:
            with live.lock:
                if live.state is SessionState.ACTIVE and moment - live.last_activity_at > timeout:
                    self.store.append_state(live.session_id, SessionState.TIMED_OUT, moment)
                    live.state = SessionState.TIMED_OUT
                    transitioned.append(live.session_id)
        return transitioned

    def resume_session(self, user_id: str, question_id: Optional[str]) -> tuple[str, Snapshot]:
        with self._lock:
            candidates = [
                c for c in self._sessions.values()
                if c.user_id == user_id
                and c.state is SessionState.TIMED_OUT
                and (question_id is None or c.question_id == question_id or c.question_key == question_id)
            ]
            # Without a question id, the most recently active session resumes.
            live = max(candidates, key=lambda c: (c.last_activity_at, c.session_id), default=None)
        if live is None:
            raise NothingToResume(str(question_id))
        with live.lock:
            if live.state is not SessionState.TIMED_OUT:
                raise NothingToResume(str(question_id))
            at = self._now()
            self.store.append_state(live.session_id, SessionState.ACTIVE, at)
            live.state = SessionState.ACTIVE
            live.last_activity_at = at
            latest = live.to_record().latest_save()
        if latest is None:
            # Resumable session with no saves yet: hand back the question's
            # initial snapshot when there is one.
            if live.question_id and live.question_id in self._questions:
                return live.session_id, self.initial_snapshot(live.question_id)
            raise NothingToResume("no snapshot recorded before the timeout")
        return live.session_id, self.store.get_snapshot(latest.snapshot_id)

    def end_session(self, user_id: str, session_id: str, completed: bool) -> dict:
        live = self._session_or_raise(session_id)
        if live.user_id != user_id:
            raise NotOwner(session_id)
        with live.lock:
            if live.state is SessionState.ENDED:
                raise AlreadyEnded(session_id)
            at = self._now()
            self.store.append_state(session_id, SessionState.ENDED, at, completed=completed)
            live.state = SessionState.ENDED
            live.ended_at = at
            live.completed = completed
            record = live.to_record()

        # Analysis runs outside any lock; the session is terminal now.
        analysis = self.analyze_session(record)
        if analysis is not None:
            with live.lock:
                self.store.append_analysis(session_id, analysis)
        return {
            "session_id": session_id,
            "debug_count": record.debug_count,
            "elapsed_seconds": (at - record.started_at) / 1000.0,
            "completed": completed,
            "labels": [l.label.value for l in analysis.labels] if analysis else [],
        }

    def analyze_session(self, record: SessionRecord) -> Optional[BehaviorSequence]:
        try:
            sequence = label_sequence(record, self.store.get_snapshot)
        except EmptySession:
            return None
        directions = ()
        if record.question_id:
            with self._lock:
                q = self._questions.get(record.question_id)
            if q is not None and q.reference_snapshot_id:
                reference = self.store.get_snapshot(q.reference_snapshot_id)
                directions = tuple(annotate_direction(record, self.store.get_snapshot, reference))
        return BehaviorSequence(session_id=sequence.session_id, labels=sequence.labels, directions=directions)

    def get_session(self, user_id: str, session_id: str) -> SessionRecord:
        live = self._session_or_raise(session_id)
        if live.user_id != user_id and self.role_of(user_id) is UserRole.STUDENT:
            raise NotOwner(session_id)
        with live.lock:
            return live.to_record()

    def leaderboard(self, question_id: str) -> list[LeaderboardEntry]:
        self.get_question(question_id)
        entries = []
        with self._lock:
            sessions = [s for s in self._sessions.values() if s.question_id == question_id]
        for live in sessions:
            with live.lock:
                if live.mode is SessionMode.RANK and live.state is SessionState.ENDED and live.completed:
                    record = live.to_record()
                    entries.append(
                        LeaderboardEntry(
                            user_id=record.user_id,
                            debug_count=record.debug_count,
                            elapsed_seconds=(record.ended_at - record.started_at) / 1000.0,
                            completed_at=record.ended_at,
                        )
                    )
        entries.sort(key=lambda e: (e.debug_count, e.elapsed_seconds, e.user_id))
        return entries

    # -- help tickets --------------------------------------------------------

    def create_ticket(self, user_id: str, session_id: str, form_text: str) -> str:
        live = self._session_or_raise(session_id)
        if live.user_id != user_id:
            raise NotOwner(session_id)
        with live.lock:
            record = live.to_record()
            latest = record.latest_save()
            if latest is None:
                raise NoSnapshotYet("help needs at least one saved snapshot")
            ticket = HelpTicket(
                ticket_id=_new_id("t"),
                session_id=session_id,
                question_id=record.question_id,
                asker_id=user_id,
                form_text=form_text,
                snapshot_id=latest.snapshot_id,
                status=TicketStatus.OPEN,
            )
            if live.state is SessionState.ACTIVE:
                at = self._now()
                event = DebugEvent(
                    event_id=len(live.events) + 1,
                    kind=EventKind.HELP,
                    at=at,
                    snapshot_id=latest.snapshot_id,
                )
                self.store.append_event(session_id, event)
                live.events.append(event)
                live.last_activity_at = at
        with self._lock:
            self.store.put_ticket(ticket)
            self._tickets[ticket.ticket_id] = ticket
        return ticket.ticket_id

    def list_tickets(self) -> list[HelpTicket]:
        with self._lock:
            return sorted(self._tickets.values(), key=lambda t: t.ticket_id)

    def get_ticket(self, ticket_id: str) -> HelpTicket:
        with self._lock:
            ticket = self._tickets.get(ticket_id)
        if ticket is None:
            raise TicketNotFound(ticket_id)
        return ticket

    def answer_ticket(
        self, user_id: str, ticket_id: str, explanation: str, answer_files: dict[str, bytes]
    ) -> HelpTicket:
        if self.role_of(user_id) is not UserRole.TEACHING_ASSISTANT:
            raise Forbidden("answering belongs to teaching assistants")
        with self._lock:
            ticket = self._tickets.get(ticket_id)
            if ticket is None:
                raise TicketNotFound(ticket_id)
            if ticket.status is not TicketStatus.OPEN:
                raise TicketNotOpen(ticket_id)
        answer_snapshot = Snapshot.create(answer_files, captured_at=self._now())
        self.store.put_snapshot(answer_snapshot)
        asker_snapshot = self.store.get_snapshot(ticket.snapshot_id)
        diff = diff_file_maps(asker_snapshot.raw_files(), answer_files)
        answered = HelpTicket(
            ticket_id=ticket.ticket_id,
            session_id=ticket.session_id,
            question_id=ticket.question_id,
            asker_id=ticket.asker_id,
            form_text=ticket.form_text,
            snapshot_id=ticket.snapshot_id,
            status=TicketStatus.ANSWERED,
            answer=TicketAnswer(
                answerer_id=user_id,
                explanation=explanation,
                answer_snapshot_id=answer_snapshot.snapshot_id,
                changed_file_diff=diff,
            ),
        )
        with self._lock:
            self.store.put_ticket(answered)
            self._tickets[ticket_id] = answered
        return answered

    # -- misc ----------------------------------------------------------------

    def session_records(self) -> list[SessionRecord]:
        with self._lock:
            sessions = list(self._sessions.values())
        records = []
        for live in sessions:
            with live.lock:
                records.append(live.to_record())
        return records

    def question_map(self) -> dict[str, Question]:
        with self._lock:
            return dict(self._questions)
