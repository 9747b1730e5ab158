"""Domain types shared by every other module.

All types are immutable value objects; mutation happens only through the
store's serialized operations. Timestamps are integer epoch milliseconds
(UTC) throughout.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import EmptySnapshot


class UserRole(str, Enum):
    STUDENT = "Student"
    TEACHING_ASSISTANT = "TeachingAssistant"
    TEACHER = "Teacher"

    @property
    def may_answer(self) -> bool:
        # Only teaching assistants hold the dual help/answer right.
        return self is UserRole.TEACHING_ASSISTANT


class FileLayer(str, Enum):
    LOGIC = "Logic"
    VIEW = "View"
    STYLE = "Style"
    OTHER = "Other"


_EXTENSION_LAYERS = {".js": FileLayer.LOGIC, ".wxml": FileLayer.VIEW, ".wxss": FileLayer.STYLE}


def layer_for_path(path: str) -> FileLayer:
    dot = path.rfind(".")
    if dot < 0:
        return FileLayer.OTHER
    return _EXTENSION_LAYERS.get(path[dot:].lower(), FileLayer.OTHER)


def canonical_snapshot_encoding(files: dict[str, bytes]) -> bytes:
    """Length-prefixed (path, bytes) pairs, paths sorted by byte value.

    Each entry is len(path) || path || len(body) || body with 8-byte
    big-endian lengths; this is also the exact byte layout of stored blobs.
    """
    if not files:
        raise EmptySnapshot("snapshot must contain at least one file")
    out = bytearray()
    for path in sorted(files, key=lambda p: p.encode("utf-8")):
        pb = path.encode("utf-8")
        body = files[path]
        out += struct.pack(">Q", len(pb))
        out += pb
        out += struct.pack(">Q", len(body))
        out += body
    return bytes(out)


def decode_snapshot_encoding(blob: bytes) -> dict[str, bytes]:
    files: dict[str, bytes] = {}
    pos = 0
    n = len(blob)
    while pos < n:
        if pos + 8 > n:
            raise ValueError("truncated snapshot encoding")
        (plen,) = struct.unpack_from(">Q", blob, pos)
        pos += 8
        path = blob[pos : pos + plen].decode("utf-8")
        pos += plen
        if pos + 8 > n:
            raise ValueError("truncated snapshot encoding")
        (blen,) = struct.unpack_from(">Q", blob, pos)
        pos += 8
        if pos + blen > n:
            raise ValueError("truncated snapshot encoding")
        files[path] = blob[pos : pos + blen]
        pos += blen
    if not files:
        raise ValueError("empty snapshot encoding")
    return files


def compute_snapshot_id(files: dict[str, bytes]) -> str:
    """SHA-256 hex digest of the canonical file-set encoding."""
    return hashlib.sha256(canonical_snapshot_encoding(files)).hexdigest()


@dataclass(frozen=True)
class FileRecord:
    layer: FileLayer
    data: bytes


@dataclass(frozen=True)
class Snapshot:
    """One captured multi-file code state, content-addressed by its file set.

    ``captured_at`` records when the capture happened and is deliberately
    excluded from equality: identity is the content hash.
    """

    snapshot_id: str
    files: dict[str, FileRecord]
    captured_at: int = field(compare=False, default=0)

    @staticmethod
    def create(files: dict[str, bytes], captured_at: int = 0) -> "Snapshot":
        sid = compute_snapshot_id(files)
        records = {p: FileRecord(layer_for_path(p), data) for p, data in files.items()}
        return Snapshot(snapshot_id=sid, files=records, captured_at=captured_at)

    def raw_files(self) -> dict[str, bytes]:
        return {p: r.data for p, r in self.files.items()}

    def logic_files(self) -> dict[str, bytes]:
        return {p: r.data for p, r in self.files.items() if r.layer is FileLayer.LOGIC}

    def view_files(self) -> dict[str, bytes]:
        return {p: r.data for p, r in self.files.items() if r.layer is FileLayer.VIEW}


class EventKind(str, Enum):
    SAVE = "Save"
    COMPILE = "Compile"
    RUN = "Run"
    HELP = "Help"
    RESET = "Reset"


@dataclass(frozen=True)
class DebugEvent:
    event_id: int
    kind: EventKind
    at: int
    snapshot_id: Optional[str] = None
    compile_ok: Optional[bool] = None
    error_log: Optional[str] = None

    def __post_init__(self):
        if self.kind is EventKind.SAVE and not self.snapshot_id:
            raise ValueError("Save events must carry a snapshot_id")
        if (self.compile_ok is not None) != (self.kind is EventKind.COMPILE):
            raise ValueError("compile_ok is present exactly for Compile events")


class SessionMode(str, Enum):
    TRAINING = "Training"
    RANK = "Rank"
    FREE_DEBUG = "FreeDebug"
    TROUBLESHOOT = "Troubleshoot"


class SessionState(str, Enum):
    ACTIVE = "Active"
    TIMED_OUT = "TimedOut"
    ENDED = "Ended"


# Allowed lifecycle transitions; Ended is terminal.
SESSION_TRANSITIONS = {
    (SessionState.ACTIVE, SessionState.TIMED_OUT),
    (SessionState.ACTIVE, SessionState.ENDED),
    (SessionState.TIMED_OUT, SessionState.ACTIVE),
    (SessionState.TIMED_OUT, SessionState.ENDED),
}


@dataclass(frozen=True)
class SessionRecord:
    session_id: str
    user_id: str
    question_id: Optional[str]
    mode: SessionMode
    state: SessionState
    events: tuple[DebugEvent, ...]
    started_at: int
    last_activity_at: int
    ended_at: Optional[int] = None
    completed: bool = False

    @property
    def debug_count(self) -> int:
        return sum(1 for e in self.events if e.kind is EventKind.COMPILE)

    def save_events(self) -> list[DebugEvent]:
        return [e for e in self.events if e.kind is EventKind.SAVE]

    def latest_save(self) -> Optional[DebugEvent]:
        saves = self.save_events()
        return saves[-1] if saves else None


class QuestionKind(str, Enum):
    PRACTICE = "Practice"
    ACCEPTANCE = "Acceptance"


class ErrorClass(str, Enum):
    PARAMETER = "ParameterError"
    ATTRIBUTE = "AttributeError"
    SYNTAX = "SyntaxError"
    FUNCTIONAL = "FunctionalError"


@dataclass(frozen=True)
class Question:
    question_id: str
    kind: QuestionKind
    author_id: str
    title: str
    initial_snapshot_id: Optional[str]
    reference_snapshot_id: Optional[str]
    error_classes: frozenset[ErrorClass]
    difficulty: int
    published: bool

    def __post_init__(self):
        if not 1 <= self.difficulty <= 5:
            raise ValueError("difficulty must be in 1..5")


class TicketStatus(str, Enum):
    OPEN = "Open"
    ANSWERED = "Answered"


@dataclass(frozen=True)
class TicketAnswer:
    answerer_id: str
    explanation: str
    answer_snapshot_id: str
    changed_file_diff: dict[str, "LineDelta"]


@dataclass(frozen=True)
class HelpTicket:
    ticket_id: str
    session_id: str
    question_id: Optional[str]
    asker_id: str
    form_text: str
    snapshot_id: str
    status: TicketStatus
    answer: Optional[TicketAnswer] = None

    def __post_init__(self):
        if (self.status is TicketStatus.ANSWERED) != (self.answer is not None):
            raise ValueError("status is Answered exactly when an answer is present")


@dataclass(frozen=True)
class LineDelta:
    """Per-file line diff summary."""

    added: int = 0
    removed: int = 0
    changed: int = 0

    def is_empty(self) -> bool:
        return self.added == 0 and self.removed == 0 and self.changed == 0


class Behavior(str, Enum):
    NO_CHANGE = "NoChange"
    PARAM_TWEAK = "ParamTweak"
    API_CHANGE = "ApiChange"
    STRUCT_EDIT = "StructEdit"
    REVERT = "Revert"
    SYNTAX_BREAK = "SyntaxBreak"
    SYNTAX_FIX = "SyntaxFix"


# One-letter alphabet used when behavior sequences are compared as strings.
BEHAVIOR_SYMBOLS = {
    Behavior.NO_CHANGE: "N",
    Behavior.PARAM_TWEAK: "P",
    Behavior.API_CHANGE: "A",
    Behavior.STRUCT_EDIT: "S",
    Behavior.REVERT: "R",
    Behavior.SYNTAX_BREAK: "B",
    Behavior.SYNTAX_FIX: "F",
}


@dataclass(frozen=True)
class BehaviorLabel:
    label: Behavior
    from_event_id: int
    to_event_id: int
    detail: Optional[str] = None

    def __post_init__(self):
        if not self.from_event_id < self.to_event_id:
            raise ValueError("labels span an ordered Save event pair")


class Direction(str, Enum):
    TOWARD = "Toward"
    AWAY = "Away"
    NEUTRAL = "Neutral"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class DirectionLabel:
    direction: Direction
    event_id: int
    distance_to_reference: int

    def __post_init__(self):
        if self.distance_to_reference < 0:
            raise ValueError("distance is non-negative")


@dataclass(frozen=True)
class BehaviorSequence:
    """Behavior labels for a session's consecutive save pairs plus any
    direction annotations (empty when the question has no reference)."""

    session_id: str
    labels: tuple[BehaviorLabel, ...]
    directions: tuple[DirectionLabel, ...] = ()

    def label_string(self) -> str:
        return "".join(BEHAVIOR_SYMBOLS[l.label] for l in self.labels)
