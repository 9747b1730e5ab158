"""File-backed persistence.

Layout under the store root:

    meta/version                 format version string "1"
    blobs/<hh>/<digest>          canonical snapshot encoding (the digested bytes)
    sessions/<session_id>.log    append-only framed records, one per line
    records/users.db             framed records, last write per key wins
    records/questions.db
    records/tickets.db
    records/tokens.db

Line framing: 8 lowercase hex digits giving the payload byte length, one
space, the UTF-8 JSON payload (no embedded newlines), then "\\n". A torn
final line (truncated payload or missing newline) is detected and dropped
on open; a malformed non-final line is corruption.

Session logs are event-sourced: a "session" head record, "event" records
for the debug stream, "state" records for lifecycle transitions, and an
optional "analysis" record. Derived fields are recomputed on load, never
trusted from a cache.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from pathlib import Path
from typing import Iterator, Optional

from . import codec
from .errors import CorruptBlob, CorruptLog, NotFound, SequenceGap, StoreUnreadable
from .model import (
    BehaviorSequence, DebugEvent, EventKind, Question, SessionMode, SessionRecord,
    SessionState, Snapshot, UserRole, canonical_snapshot_encoding, compute_snapshot_id,
    decode_snapshot_encoding,
)

FORMAT_VERSION = "1"


def frame_line(payload: dict) -> bytes:
    body = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("utf-8")
    if b"\n" in body:
        raise ValueError("payload must not contain newlines")
    return f"{len(body):08x} ".encode("ascii") + body + b"\n"


def read_frames(data: bytes, *, path: str = "<log>") -> list[dict]:
    """Decode framed lines; a torn trailing line is dropped silently."""
    frames = []
    pos = 0
    n = len(data)
    while pos < n:
        header_end = pos + 9
        if header_end > n:
            break  # torn header
        header = data[pos:header_end]
        try:
            length = int(header[:8], 16)
        except ValueError:
            raise CorruptLog(f"{path}: bad frame header at byte {pos}")
        if header[8:9] != b" ":
            raise CorruptLog(f"{path}: bad frame header at byte {pos}")
        body_end = header_end + length
        if body_end + 1 > n:
            break  # torn payload or missing newline
        body = data[header_end:body_end]
        if data[body_end : body_end + 1] != b"\n":
            # Complete-length line without terminator: corrupt unless it is
            # the final bytes (torn write), which the bounds check covered.
            raise CorruptLog(f"{path}: missing newline at byte {body_end}")
        try:
            frames.append(json.loads(body.decode("utf-8")))
        except (UnicodeDecodeError, json.JSONDecodeError):
            raise CorruptLog(f"{path}: undecodable payload at byte {header_end}")
        pos = body_end + 1
    return frames


class Store:
    """Single-writer-per-session persistence with concurrent readers."""

    def __init__(self, root: str | os.PathLike, create: bool = True):
        self.root = Path(root)
        meta = self.root / "meta" / "version"
        if meta.exists():
            version = meta.read_text().strip()
            if version != FORMAT_VERSION:
                raise StoreUnreadable(f"unsupported store format version {version!r}")
        elif create:
            for sub in ("meta", "blobs", "sessions", "records"):
                (self.root / sub).mkdir(parents=True, exist_ok=True)
            meta.write_text(FORMAT_VERSION)
        else:
            raise StoreUnreadable(f"no store at {self.root}")
        self._log_lock = threading.Lock()
        self._log_tails: dict[str, int] = {}  # session_id -> last event_id

    # -- snapshots ---------------------------------------------------------

    def _blob_path(self, digest: str) -> Path:
        return self.root / "blobs" / digest[:2] / digest

    def put_snapshot(self, snapshot: Snapshot) -> str:
        """Write the blob if absent; idempotent for identical content."""
        files = snapshot.raw_files()
        encoding = canonical_snapshot_encoding(files)
        digest = hashlib.sha256(encoding).hexdigest()
        path = self._blob_path(digest)
        if path.exists():
            existing = path.read_bytes()
            if hashlib.sha256(existing).hexdigest() != digest:
                raise CorruptBlob(f"blob {digest} fails its digest check")
            return digest
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + f".tmp.{os.getpid()}.{threading.get_ident()}")
        with open(tmp, "wb") as f:
            f.write(encoding)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
        return digest

    def get_snapshot(self, snapshot_id: str, captured_at: int = 0) -> Snapshot:
        path = self._blob_path(snapshot_id)
        if not path.exists():
            raise NotFound(f"snapshot {snapshot_id}")
        data = path.read_bytes()
        if hashlib.sha256(data).hexdigest() != snapshot_id:
            raise CorruptBlob(f"blob {snapshot_id} fails its digest check")
        return Snapshot.create(decode_snapshot_encoding(data), captured_at=captured_at)

    def has_snapshot(self, snapshot_id: str) -> bool:
        return self._blob_path(snapshot_id).exists()

    # -- session logs ------------------------------------------------------

    def _session_path(self, session_id: str) -> Path:
        return self.root / "sessions" / f"{session_id}.log"

    def _append_frames(self, session_id: str, payloads: list[dict]) -> None:
        path = self._session_path(session_id)
        data = b"".join(frame_line(p) for p in payloads)
        with open(path, "ab") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())

    def create_session(
        self,
        session_id: str,
        user_id: str,
        question_id: Optional[str],
        mode: SessionMode,
        started_at: int,
    ) -> None:
        path = self._session_path(session_id)
        if path.exists():
            raise SequenceGap(f"session {session_id} already exists")
        self._append_frames(
            session_id,
            [
                {
                    "type": "session",
                    "session_id": session_id,
                    "user_id": user_id,
                    "question_id": question_id,
                    "mode": mode.value,
                    "started_at": started_at,
                }
            ],
        )
        with self._log_lock:
            self._log_tails[session_id] = 0

    def _tail_event_id(self, session_id: str) -> int:
        with self._log_lock:
            cached = self._log_tails.get(session_id)
        if cached is not None:
            return cached
        record = self.load_session(session_id)
        tail = record.events[-1].event_id if record.events else 0
        with self._log_lock:
            self._log_tails[session_id] = tail
        return tail

    def append_event(self, session_id: str, event: DebugEvent) -> None:
        """Durably append one event; event ids must be gapless from 1."""
        if not self._session_path(session_id).exists():
            raise NotFound(f"session {session_id}")
        expected = self._tail_event_id(session_id) + 1
        if event.event_id != expected:
            raise SequenceGap(
                f"event_id {event.event_id} does not continue sequence (expected {expected})"
            )
        self._append_frames(session_id, [dict(codec.encode_event(event), type="event")])
        with self._log_lock:
            self._log_tails[session_id] = event.event_id

    def append_state(
        self, session_id: str, state: SessionState, at: int, completed: Optional[bool] = None
    ) -> None:
        payload = {"type": "state", "state": state.value, "at": at}
        if completed is not None:
            payload["completed"] = completed
        if not self._session_path(session_id).exists():
            raise NotFound(f"session {session_id}")
        self._append_frames(session_id, [payload])

    def append_analysis(self, session_id: str, analysis: BehaviorSequence) -> None:
        if not self._session_path(session_id).exists():
            raise NotFound(f"session {session_id}")
        self._append_frames(session_id, [dict(codec.encode_analysis(analysis), type="analysis")])

    def load_session(self, session_id: str) -> SessionRecord:
        record, _ = self._replay(session_id)
        return record

    def load_analysis(self, session_id: str) -> Optional[BehaviorSequence]:
        _, analysis = self._replay(session_id)
        return analysis

    def _replay(self, session_id: str) -> tuple[SessionRecord, Optional[BehaviorSequence]]:
        path = self._session_path(session_id)
        if not path.exists():
            raise NotFound(f"session {session_id}")
        frames = read_frames(path.read_bytes(), path=str(path))
        if not frames or frames[0].get("type") != "session":
            raise CorruptLog(f"{path}: missing session head record")
        head = frames[0]
        events: list[DebugEvent] = []
        state = SessionState.ACTIVE
        ended_at: Optional[int] = None
        completed = False
        last_activity = head["started_at"]
        analysis: Optional[BehaviorSequence] = None
        for frame in frames[1:]:
            ftype = frame.get("type")
            if ftype == "event":
                event = codec.decode_event(frame)
                if events and event.event_id != events[-1].event_id + 1:
                    raise CorruptLog(f"{path}: event sequence gap at {event.event_id}")
                if not events and event.event_id != 1:
                    raise CorruptLog(f"{path}: first event_id is {event.event_id}")
                events.append(event)
                last_activity = max(last_activity, event.at)
            elif ftype == "state":
                state = SessionState(frame["state"])
                if state is SessionState.ENDED:
                    ended_at = frame["at"]
                    completed = bool(frame.get("completed", False))
                elif state is SessionState.ACTIVE:
                    # Resume refreshes activity so the timeout clock restarts.
                    last_activity = max(last_activity, frame["at"])
            elif ftype == "analysis":
                analysis = codec.decode_analysis(frame)
            else:
                raise CorruptLog(f"{path}: unknown record type {ftype!r}")
        record = SessionRecord(
            session_id=head["session_id"],
            user_id=head["user_id"],
            question_id=head.get("question_id"),
            mode=SessionMode(head["mode"]),
            state=state,
            events=tuple(events),
            started_at=head["started_at"],
            last_activity_at=last_activity,
            ended_at=ended_at,
            completed=completed,
        )
        return record, analysis

    def list_sessions(self) -> list[str]:
        sessions_dir = self.root / "sessions"
        if not sessions_dir.exists():
            return []
        return sorted(p.stem for p in sessions_dir.glob("*.log"))

    def iter_sessions(self) -> Iterator[SessionRecord]:
        for session_id in self.list_sessions():
            yield self.load_session(session_id)

    # -- record files ------------------------------------------------------

    def _records_path(self, name: str) -> Path:
        return self.root / "records" / f"{name}.db"

    def append_record(self, name: str, key_field: str, record: dict) -> None:
        path = self._records_path(name)
        with open(path, "ab") as f:
            f.write(frame_line(record))
            f.flush()
            os.fsync(f.fileno())

    def load_records(self, name: str, key_field: str) -> dict[str, dict]:
        path = self._records_path(name)
        if not path.exists():
            return {}
        result: dict[str, dict] = {}
        for record in read_frames(path.read_bytes(), path=str(path)):
            result[record[key_field]] = record
        return result

    # typed conveniences

    def put_user(self, user_id: str, role: UserRole, secret_hash: str) -> None:
        self.append_record("users", "user_id", codec.encode_user(user_id, role, secret_hash))

    def load_users(self) -> dict[str, dict]:
        return self.load_records("users", "user_id")

    def put_question(self, question: Question) -> None:
        self.append_record("questions", "question_id", codec.encode_question(question))

    def load_questions(self) -> dict[str, Question]:
        return {
            k: codec.decode_question(v) for k, v in self.load_records("questions", "question_id").items()
        }

    def put_ticket(self, ticket) -> None:
        self.append_record("tickets", "ticket_id", codec.encode_ticket(ticket))

    def load_tickets(self) -> dict:
        return {k: codec.decode_ticket(v) for k, v in self.load_records("tickets", "ticket_id").items()}

    def put_token(self, token: str, user_id: str, issued_at: int, expires_at: int) -> None:
        self.append_record(
            "tokens", "token",
            {"token": token, "user_id": user_id, "issued_at": issued_at, "expires_at": expires_at},
        )

    def load_tokens(self) -> dict[str, dict]:
        return self.load_records("tokens", "token")
