"""JSON codecs shared by the store format and the wire protocol.

Snapshots travel and persist as {path: base64-bytes} maps; every other
type is a flat key-value object. Decoders validate through the model
constructors so invariants hold on every load.
"""

from __future__ import annotations

import base64
from typing import Optional

from .model import (
    Behavior, BehaviorLabel, BehaviorSequence, DebugEvent, Direction, DirectionLabel,
    ErrorClass, EventKind, HelpTicket, LineDelta, Question, QuestionKind, TicketAnswer,
    TicketStatus, UserRole,
)


def encode_files(files: dict[str, bytes]) -> dict[str, str]:
    return {path: base64.b64encode(data).decode("ascii") for path, data in files.items()}


def decode_files(payload: dict[str, str]) -> dict[str, bytes]:
    return {path: base64.b64decode(data) for path, data in payload.items()}


def encode_event(event: DebugEvent) -> dict:
    d = {"event_id": event.event_id, "kind": event.kind.value, "at": event.at}
    if event.snapshot_id is not None:
        d["snapshot_id"] = event.snapshot_id
    if event.compile_ok is not None:
        d["compile_ok"] = event.compile_ok
    if event.error_log is not None:
        d["error_log"] = event.error_log
    return d


def decode_event(d: dict) -> DebugEvent:
    return DebugEvent(
        event_id=d["event_id"],
        kind=EventKind(d["kind"]),
        at=d["at"],
        snapshot_id=d.get("snapshot_id"),
        compile_ok=d.get("compile_ok"),
        error_log=d.get("error_log"),
    )


def encode_question(q: Question) -> dict:
    return {
        "question_id": q.question_id,
        "kind": q.kind.value,
        "author_id": q.author_id,
        "title": q.title,
        "initial_snapshot_id": q.initial_snapshot_id,
        "reference_snapshot_id": q.reference_snapshot_id,
        "error_classes": sorted(c.value for c in q.error_classes),
        "difficulty": q.difficulty,
        "published": q.published,
    }


def decode_question(d: dict) -> Question:
    return Question(
        question_id=d["question_id"],
        kind=QuestionKind(d["kind"]),
        author_id=d["author_id"],
        title=d["title"],
        initial_snapshot_id=d.get("initial_snapshot_id"),
        reference_snapshot_id=d.get("reference_snapshot_id"),
        error_classes=frozenset(ErrorClass(c) for c in d.get("error_classes", [])),
        difficulty=d["difficulty"],
        published=d["published"],
    )


def encode_line_delta(delta: LineDelta) -> dict:
    return {"added": delta.added, "removed": delta.removed, "changed": delta.changed}


def decode_line_delta(d: dict) -> LineDelta:
    return LineDelta(added=d["added"], removed=d["removed"], changed=d["changed"])


def encode_ticket(t: HelpTicket) -> dict:
    d = {
        "ticket_id": t.ticket_id,
        "session_id": t.session_id,
        "question_id": t.question_id,
        "asker_id": t.asker_id,
        "form_text": t.form_text,
        "snapshot_id": t.snapshot_id,
        "status": t.status.value,
    }
    if t.answer is not None:
        d["answer"] = {
            "answerer_id": t.answer.answerer_id,
            "explanation": t.answer.explanation,
            "answer_snapshot_id": t.answer.answer_snapshot_id,
            "changed_file_diff": {
                path: encode_line_delta(delta) for path, delta in t.answer.changed_file_diff.items()
            },
        }
    return d


def decode_ticket(d: dict) -> HelpTicket:
    answer: Optional[TicketAnswer] = None
    if "answer" in d and d["answer"] is not None:
        a = d["answer"]
        answer = TicketAnswer(
            answerer_id=a["answerer_id"],
            explanation=a["explanation"],
            answer_snapshot_id=a["answer_snapshot_id"],
            changed_file_diff={
                path: decode_line_delta(delta) for path, delta in a["changed_file_diff"].items()
            },
        )
    return HelpTicket(
        ticket_id=d["ticket_id"],
        session_id=d["session_id"],
        question_id=d.get("question_id"),
        asker_id=d["asker_id"],
        form_text=d["form_text"],
        snapshot_id=d["snapshot_id"],
        status=TicketStatus(d["status"]),
        answer=answer,
    )


def encode_analysis(seq: BehaviorSequence) -> dict:
    return {
        "session_id": seq.session_id,
        "labels": [
            {
                "label": l.label.value,
                "from_event_id": l.from_event_id,
                "to_event_id": l.to_event_id,
                "detail": l.detail,
            }
            for l in seq.labels
        ],
        "directions": [
            {
                "direction": d.direction.value,
                "event_id": d.event_id,
                "distance_to_reference": d.distance_to_reference,
            }
            for d in seq.directions
        ],
    }


def decode_analysis(d: dict) -> BehaviorSequence:
    return BehaviorSequence(
        session_id=d["session_id"],
        labels=tuple(
            BehaviorLabel(
                label=Behavior(l["label"]),
                from_event_id=l["from_event_id"],
                to_event_id=l["to_event_id"],
                detail=l.get("detail"),
            )
            for l in d["labels"]
        ),
        directions=tuple(
            DirectionLabel(
                direction=Direction(x["direction"]),
                event_id=x["event_id"],
                distance_to_reference=x["distance_to_reference"],
            )
            for x in d["directions"]
        ),
    )


def encode_user(user_id: str, role: UserRole, secret_hash: str) -> dict:
    return {"user_id": user_id, "role": role.value, "secret_hash": secret_hash}
