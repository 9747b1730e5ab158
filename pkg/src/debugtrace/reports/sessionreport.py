"""End-of-session analysis document.

Covers the behavior label sequence, direction annotations, per-file line
diffs of the final save against the initial code, API call statistics of
the final snapshot, and control-flow deltas for functions present in both
the initial and final snapshots.
"""

from __future__ import annotations

from typing import Optional

from ..astdiff import diff_file_maps
from ..behavior import api_stats, cfg_diff, extract_snapshot_cfgs
from ..behavior.labels import _logic_trees, label_sequence
from ..codec import encode_analysis, encode_line_delta
from ..errors import SessionNotEnded
from ..model import SessionState, Snapshot
from ..store import Store


def _initial_snapshot(store: Store, record) -> Optional[Snapshot]:
    if record.question_id:
        questions = store.load_questions()
        q = questions.get(record.question_id)
        if q is not None and q.initial_snapshot_id and store.has_snapshot(q.initial_snapshot_id):
            return store.get_snapshot(q.initial_snapshot_id)
    saves = record.save_events()
    if saves:
        return store.get_snapshot(saves[0].snapshot_id)
    return None


def session_report(store: Store, session_id: str, api_prefixes: list[str]) -> dict:
    record = store.load_session(session_id)
    if record.state is not SessionState.ENDED:
        raise SessionNotEnded(f"session {session_id} is {record.state.value}")

    analysis = store.load_analysis(session_id)
    if analysis is None and record.save_events():
        analysis = label_sequence(record, store.get_snapshot)

    saves = record.save_events()
    final = store.get_snapshot(saves[-1].snapshot_id) if saves else None
    initial = _initial_snapshot(store, record)

    line_deltas = {}
    if final is not None and initial is not None:
        line_deltas = {
            path: encode_line_delta(delta)
            for path, delta in diff_file_maps(initial.raw_files(), final.raw_files()).items()
        }

    api = {"calls": {}, "total_calls": 0}
    cfg_changes = []
    if final is not None:
        final_trees = _logic_trees(final) or {}
        stats = api_stats(list(final_trees.values()), api_prefixes) if final_trees else None
        if stats is not None:
            api = {"calls": dict(sorted(stats.calls.items())), "total_calls": stats.total_calls}
        if initial is not None:
            initial_trees = _logic_trees(initial) or {}
            initial_cfgs = extract_snapshot_cfgs(initial_trees)
            final_cfgs = extract_snapshot_cfgs(final_trees)
            for key in sorted(set(initial_cfgs) & set(final_cfgs)):
                delta = cfg_diff(initial_cfgs[key], final_cfgs[key])
                cfg_changes.append(
                    {
                        "path": key[0],
                        "function": key[1],
                        "node_count_delta": delta.node_count_delta,
                        "edge_count_delta": delta.edge_count_delta,
                        "changed_branch_conditions": [list(pair) for pair in delta.changed_branch_conditions],
                        "added_loops": delta.added_loops,
                        "removed_loops": delta.removed_loops,
                    }
                )

    return {
        "session_id": session_id,
        "user_id": record.user_id,
        "question_id": record.question_id,
        "mode": record.mode.value,
        "debug_count": record.debug_count,
        "completed": record.completed,
        "analysis": encode_analysis(analysis) if analysis else None,
        "line_diff_vs_initial": line_deltas,
        "api_stats": api,
        "cfg_diffs": cfg_changes,
    }


def render_session_report(report: dict) -> str:
    lines = [
        f"session {report['session_id']} user={report['user_id']} "
        f"question={report['question_id']} mode={report['mode']}",
        f"debug count: {report['debug_count']}  completed: {report['completed']}",
    ]
    analysis = report.get("analysis")
    if analysis:
        lines.append("behavior labels:")
        for l in analysis["labels"]:
            detail = f" ({l['detail']})" if l.get("detail") else ""
            lines.append(f"  save {l['from_event_id']} -> {l['to_event_id']}: {l['label']}{detail}")
        if analysis["directions"]:
            lines.append("direction annotations:")
            for d in analysis["directions"]:
                lines.append(
                    f"  event {d['event_id']}: {d['direction']} (distance {d['distance_to_reference']})"
                )
    else:
        lines.append("no analysis (no saves)")
    lines.append("line diff vs initial:")
    deltas = report["line_diff_vs_initial"]
    if deltas:
        for path, d in sorted(deltas.items()):
            lines.append(f"  {path}: +{d['added']} -{d['removed']} ~{d['changed']}")
    else:
        lines.append("  (none)")
    lines.append(f"api calls (total {report['api_stats']['total_calls']}):")
    for name, count in report["api_stats"]["calls"].items():
        lines.append(f"  {name}: {count}")
    lines.append("cfg diffs (same-named functions, initial vs final):")
    if report["cfg_diffs"]:
        for c in report["cfg_diffs"]:
            lines.append(
                f"  {c['path']}::{c['function']}: nodes {c['node_count_delta']:+d}, "
                f"edges {c['edge_count_delta']:+d}, loops +{c['added_loops']}/-{c['removed_loops']}, "
                f"conditions changed {len(c['changed_branch_conditions'])}"
            )
    else:
        lines.append("  (none)")
    return "\n".join(lines) + "\n"
