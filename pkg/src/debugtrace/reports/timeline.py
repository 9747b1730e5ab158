"""Per-session timeline rendered as a self-contained SVG document.

Horizontal time axis; the top lane carries session events (compiles shown
as triangles when they pass and crosses when they fail, help and reset as
diamonds), then one lane per file path where each save that touched the
file gets a marker colored by the behavior label of the pair ending
there. Direction annotations render as arrows above the save markers.
Output is deterministic: fixed palette, fixed geometry, and no generation
timestamps.
"""

from __future__ import annotations

from typing import Optional

from ..model import (
    Behavior, BehaviorSequence, Direction, EventKind, SessionRecord, Snapshot,
)

LABEL_COLORS = {
    Behavior.NO_CHANGE: "#9e9e9e",
    Behavior.PARAM_TWEAK: "#1f77b4",
    Behavior.API_CHANGE: "#9467bd",
    Behavior.STRUCT_EDIT: "#ff7f0e",
    Behavior.REVERT: "#8c564b",
    Behavior.SYNTAX_BREAK: "#d62728",
    Behavior.SYNTAX_FIX: "#2ca02c",
}
FIRST_SAVE_COLOR = "#607d8b"
DIRECTION_GLYPHS = {
    Direction.TOWARD: ("M0 6 L10 -4 M10 -4 L4 -4 M10 -4 L10 2", "#2ca02c"),
    Direction.AWAY: ("M0 -4 L10 6 M10 6 L4 6 M10 6 L10 0", "#d62728"),
    Direction.NEUTRAL: ("M0 1 L10 1 M10 1 L6 -2 M10 1 L6 4", "#9e9e9e"),
}

WIDTH = 960
LANE_HEIGHT = 32
MARGIN_LEFT = 150
MARGIN_RIGHT = 40
MARGIN_TOP = 48
MARGIN_BOTTOM = 36


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def render_timeline(
    record: SessionRecord,
    snapshots: dict[str, Snapshot],
    analysis: Optional[BehaviorSequence] = None,
) -> str:
    saves = record.save_events()
    paths = sorted({p for e in saves for p in snapshots[e.snapshot_id].files})
    lanes = ["session"] + paths
    height = MARGIN_TOP + LANE_HEIGHT * len(lanes) + MARGIN_BOTTOM

    times = [e.at for e in record.events]
    t0 = min(times) if times else record.started_at
    t1 = max(times) if times else record.started_at
    span = max(t1 - t0, 1)
    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT

    def x_of(t: int) -> float:
        return x0 + (x1 - x0) * (t - t0) / span if times else x0

    label_by_to_event = {}
    direction_by_event = {}
    if analysis is not None:
        label_by_to_event = {l.to_event_id: l.label for l in analysis.labels}
        direction_by_event = {d.event_id: d.direction for d in analysis.directions}

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="monospace" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="#ffffff"/>',
        f'<text x="{MARGIN_LEFT}" y="20" font-size="13">session {_esc(record.session_id)} '
        f'({record.mode.value}, {record.state.value})</text>',
    ]

    # lanes
    for i, lane in enumerate(lanes):
        y = MARGIN_TOP + i * LANE_HEIGHT
        parts.append(
            f'<line x1="{x0}" y1="{y + LANE_HEIGHT / 2:.1f}" x2="{x1}" y2="{y + LANE_HEIGHT / 2:.1f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="8" y="{y + LANE_HEIGHT / 2 + 4:.1f}" fill="#333333">{_esc(lane)}</text>'
        )

    # axis ticks: start / end offsets in seconds
    axis_y = MARGIN_TOP + LANE_HEIGHT * len(lanes) + 12
    parts.append(f'<line x1="{x0}" y1="{axis_y}" x2="{x1}" y2="{axis_y}" stroke="#333333"/>')
    for t, anchor in ((t0, "start"), (t1, "end")) if t1 > t0 else ((t0, "start"),):
        parts.append(
            f'<text x="{x_of(t):.1f}" y="{axis_y + 16}" text-anchor="{"start" if anchor == "start" else "end"}">'
            f"+{(t - record.started_at) / 1000.0:.1f}s</text>"
        )

    session_y = MARGIN_TOP + LANE_HEIGHT / 2

    previous_files: dict[str, bytes] = {}
    first = True
    for event in record.events:
        x = x_of(event.at)
        if event.kind is EventKind.SAVE:
            snap = snapshots[event.snapshot_id]
            files = snap.raw_files()
            touched = (
                sorted(files)
                if first
                else sorted(p for p in files if previous_files.get(p) != files[p])
            )
            color = LABEL_COLORS.get(label_by_to_event.get(event.event_id), FIRST_SAVE_COLOR)
            for path in touched:
                lane_idx = 1 + paths.index(path)
                y = MARGIN_TOP + lane_idx * LANE_HEIGHT + LANE_HEIGHT / 2
                parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="{color}"/>')
            direction = direction_by_event.get(event.event_id)
            if direction in DIRECTION_GLYPHS:
                path_d, dcolor = DIRECTION_GLYPHS[direction]
                parts.append(
                    f'<g transform="translate({x - 5:.1f},{MARGIN_TOP - 10})">'
                    f'<path d="{path_d}" stroke="{dcolor}" stroke-width="1.5" fill="none"/></g>'
                )
            elif direction is Direction.UNKNOWN:
                parts.append(
                    f'<text x="{x:.1f}" y="{MARGIN_TOP - 8}" text-anchor="middle" fill="#d62728">?</text>'
                )
            previous_files = files
            first = False
        elif event.kind is EventKind.COMPILE:
            if event.compile_ok:
                parts.append(
                    f'<path d="M{x:.1f} {session_y - 6:.1f} L{x - 5:.1f} {session_y + 4:.1f} '
                    f'L{x + 5:.1f} {session_y + 4:.1f} Z" fill="#2ca02c"/>'
                )
            else:
                parts.append(
                    f'<g stroke="#d62728" stroke-width="2">'
                    f'<line x1="{x - 4:.1f}" y1="{session_y - 4:.1f}" x2="{x + 4:.1f}" y2="{session_y + 4:.1f}"/>'
                    f'<line x1="{x - 4:.1f}" y1="{session_y + 4:.1f}" x2="{x + 4:.1f}" y2="{session_y - 4:.1f}"/></g>'
                )
        else:
            parts.append(
                f'<rect x="{x - 4:.1f}" y="{session_y - 4:.1f}" width="8" height="8" '
                f'transform="rotate(45 {x:.1f} {session_y:.1f})" fill="#777777"/>'
            )
            parts.append(
                f'<text x="{x:.1f}" y="{session_y - 8:.1f}" text-anchor="middle" fill="#777777" '
                f'font-size="9">{event.kind.value}</text>'
            )

    # legend
    legend_x = MARGIN_LEFT
    for behavior, color in LABEL_COLORS.items():
        parts.append(f'<circle cx="{legend_x}" cy="34" r="4" fill="{color}"/>')
        parts.append(f'<text x="{legend_x + 8}" y="38" font-size="9">{behavior.value}</text>')
        legend_x += 8 + 7 * len(behavior.value) + 16

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
