"""Usage statistics aggregated from session event streams.

A row counts distinct users, sessions, debugs (Compile events), and
completions per group. "Completions" counts successful compiles
(compile_ok true): the recorded moments where the code built cleanly.
The ratio column is total_debugs / completions; the table footer repeats
the formula so readers are never guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..model import EventKind, Question, SessionRecord
from ..store import Store

FORMULA_FOOTER = (
    "completions = Compile events with compile_ok=true; "
    "avg debugs per completion = total debugs / completions"
)


@dataclass(frozen=True)
class StatsRow:
    key: str
    kind: Optional[str]
    title: Optional[str]
    total_users: int
    total_sessions: int
    total_debugs: int
    completions: int

    @property
    def avg_debugs_per_completion(self) -> Optional[float]:
        if self.completions > 0:
            return self.total_debugs / self.completions
        return None

    def avg_text(self) -> str:
        avg = self.avg_debugs_per_completion
        return f"{avg:.2f}" if avg is not None else "—"

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "kind": self.kind,
            "title": self.title,
            "total_users": self.total_users,
            "total_sessions": self.total_sessions,
            "total_debugs": self.total_debugs,
            "completions": self.completions,
            "avg_debugs_per_completion": self.avg_debugs_per_completion,
        }


def _group_key(record: SessionRecord, questions: dict[str, Question], group_by: str) -> tuple[str, Optional[str], Optional[str]]:
    question = questions.get(record.question_id) if record.question_id else None
    if group_by == "question-kind":
        if question is not None:
            return question.kind.value, question.kind.value, None
        return record.mode.value, None, None
    if question is not None:
        return question.question_id, question.kind.value, question.title
    if record.question_id:
        return record.question_id, None, None
    return record.mode.value, None, None


def stats_rows(
    records: list[SessionRecord], questions: dict[str, Question], group_by: str = "question"
) -> list[StatsRow]:
    if group_by not in ("question", "question-kind"):
        raise ValueError("group_by must be 'question' or 'question-kind'")
    groups: dict[str, dict] = {}
    for record in records:
        key, kind, title = _group_key(record, questions, group_by)
        g = groups.setdefault(
            key,
            {"kind": kind, "title": title, "users": set(), "sessions": 0, "debugs": 0, "completions": 0},
        )
        g["users"].add(record.user_id)
        g["sessions"] += 1
        for event in record.events:
            if event.kind is EventKind.COMPILE:
                g["debugs"] += 1
                if event.compile_ok:
                    g["completions"] += 1
    return [
        StatsRow(
            key=key,
            kind=g["kind"],
            title=g["title"],
            total_users=len(g["users"]),
            total_sessions=g["sessions"],
            total_debugs=g["debugs"],
            completions=g["completions"],
        )
        for key, g in sorted(groups.items())
    ]


def scan_store_stats(store: Store, group_by: str = "question") -> list[StatsRow]:
    """Recompute rows purely from the on-disk event logs."""
    records = list(store.iter_sessions())
    return stats_rows(records, store.load_questions(), group_by=group_by)


def render_stats_table(rows: list[StatsRow]) -> str:
    header = ["Group", "Kind", "Users", "Sessions", "Debugs", "Avg/Completion", "Completions"]
    body = [
        [
            row.key if row.title is None else f"{row.key} ({row.title})",
            row.kind or "—",
            str(row.total_users),
            str(row.total_sessions),
            str(row.total_debugs),
            row.avg_text(),
            str(row.completions),
        ]
        for row in rows
    ]
    widths = [max(len(r[i]) for r in [header] + body) if body else len(header[i]) for i in range(len(header))]
    lines = []
    for r in [header] + body:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip())
    lines.append("")
    lines.append(FORMULA_FOOTER)
    return "\n".join(lines) + "\n"
