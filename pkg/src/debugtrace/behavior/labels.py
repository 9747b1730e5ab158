"""Behavior labels and debugging-direction annotations for save sequences.

Labels are decided per consecutive save pair in priority order: syntax
transitions outrank reverts, which outrank structural edits, which
outrank parameter-level edits. Earlier rules are objective and cheap;
later ones need diff classification.
"""

from __future__ import annotations

import hashlib
from typing import Callable, Optional

from ..astdiff import EditClass, classify_edit, detect_revert, tree_edit_distance
from ..errors import EmptySession, ReferenceUnparseable
from ..jsparse import parse_snapshot, print_tree, snapshot_structural_hash
from ..jsparse.nodes import Node
from ..model import (
    Behavior, BehaviorLabel, BehaviorSequence, Direction, DirectionLabel, SessionRecord, Snapshot,
)

SnapshotResolver = Callable[[str], Snapshot]


def _logic_trees(snapshot: Snapshot) -> Optional[dict[str, Node]]:
    """Parsed logic trees by path, or None when any logic file fails."""
    logic, _ = parse_snapshot(snapshot)
    trees = {}
    for path, outcome in logic.items():
        if not outcome.ok:
            return None
        trees[path] = outcome.tree
    return trees


def _raw_logic_hash(snapshot: Snapshot) -> str:
    digest = hashlib.sha256()
    for path, data in sorted(snapshot.logic_files().items()):
        digest.update(path.encode("utf-8"))
        digest.update(b"\x00")
        digest.update(data)
        digest.update(b"\x00")
    return digest.hexdigest()


def _pair_label(
    prev_trees: Optional[dict[str, Node]],
    cur_trees: Optional[dict[str, Node]],
    prev_snapshot: Snapshot,
    cur_snapshot: Snapshot,
    prev_hash: Optional[str],
    cur_hash: Optional[str],
    earlier_hashes: list[Optional[str]],
) -> tuple[Behavior, Optional[str]]:
    if prev_trees is not None and cur_trees is not None and prev_hash == cur_hash:
        return Behavior.NO_CHANGE, None
    if prev_trees is not None and cur_trees is None:
        return Behavior.SYNTAX_BREAK, None
    if prev_trees is None and cur_trees is not None:
        return Behavior.SYNTAX_FIX, None
    if prev_trees is None and cur_trees is None:
        # Both unparseable: no canonical form to compare. Byte-identical
        # logic files still count as no change; anything else stays broken.
        if _raw_logic_hash(prev_snapshot) == _raw_logic_hash(cur_snapshot):
            return Behavior.NO_CHANGE, None
        return Behavior.SYNTAX_BREAK, "still unparseable"

    revert_idx = detect_revert(earlier_hashes, cur_hash)
    if revert_idx is not None:
        return Behavior.REVERT, f"matches save #{revert_idx + 1}"

    counts: dict[EditClass, int] = {}
    for path in sorted(set(prev_trees) | set(cur_trees)):
        pt, ct = prev_trees.get(path), cur_trees.get(path)
        if pt is None or ct is None:
            counts[EditClass.STRUCTURAL_CHANGE] = counts.get(EditClass.STRUCTURAL_CHANGE, 0) + 1
            continue
        diff = tree_edit_distance(pt, ct)
        if diff.distance == 0:
            continue
        classification = classify_edit(diff.script, pt, ct)
        for cls, cnt in classification.counts.items():
            counts[cls] = counts.get(cls, 0) + cnt
    detail = ", ".join(f"{cls.value}:{counts[cls]}" for cls in sorted(counts, key=lambda c: c.value))
    if counts.get(EditClass.STRUCTURAL_CHANGE):
        return Behavior.STRUCT_EDIT, detail
    if counts.get(EditClass.API_CALLEE_CHANGE):
        return Behavior.API_CHANGE, detail
    return Behavior.PARAM_TWEAK, detail


def label_sequence(session: SessionRecord, snapshots: SnapshotResolver) -> BehaviorSequence:
    """One BehaviorLabel per consecutive save pair.

    Raises EmptySession when the session has no Save events.
    """
    saves = session.save_events()
    if not saves:
        raise EmptySession(f"session {session.session_id} has no Save events")

    resolved = [snapshots(e.snapshot_id) for e in saves]
    trees = [_logic_trees(s) for s in resolved]
    hashes = [snapshot_structural_hash(s) for s in resolved]

    labels = []
    for idx in range(1, len(saves)):
        # Reverts compare against saves strictly before the previous one;
        # equality with the previous save is NoChange by rule 1. Unparseable
        # earlier saves keep their slot so revert details index correctly.
        earlier = [h if h is not None else "" for h in hashes[: idx - 1]]
        behavior, detail = _pair_label(
            trees[idx - 1], trees[idx], resolved[idx - 1], resolved[idx],
            hashes[idx - 1], hashes[idx], earlier,
        )
        labels.append(
            BehaviorLabel(
                label=behavior,
                from_event_id=saves[idx - 1].event_id,
                to_event_id=saves[idx].event_id,
                detail=detail,
            )
        )
    return BehaviorSequence(session_id=session.session_id, labels=tuple(labels))


def snapshot_distance(snapshot_trees: dict[str, Node], reference_trees: dict[str, Node]) -> int:
    """Sum of per-file tree edit distances, matched by path.

    A path present on only one side contributes that tree's node count.
    """
    total = 0
    for path in set(snapshot_trees) | set(reference_trees):
        st = snapshot_trees.get(path)
        rt = reference_trees.get(path)
        if st is None:
            total += rt.node_count()
        elif rt is None:
            total += st.node_count()
        else:
            total += tree_edit_distance(st, rt).distance
    return total


def annotate_direction(
    session: SessionRecord, snapshots: SnapshotResolver, reference: Snapshot
) -> list[DirectionLabel]:
    """Per save: distance to the reference and whether the save moved
    toward it, away from it, or neither.

    Direction compares against the previous *parseable* save so a broken
    intermediate save does not poison the trend; the first parseable save
    is Neutral and unparseable saves are Unknown (their distance field is
    meaningless and reported as 0).
    """
    ref_trees = _logic_trees(reference)
    if ref_trees is None:
        raise ReferenceUnparseable("reference snapshot has unparseable logic files")

    labels = []
    prev_distance: Optional[int] = None
    for event in session.save_events():
        snap = snapshots(event.snapshot_id)
        trees = _logic_trees(snap)
        if trees is None:
            labels.append(DirectionLabel(direction=Direction.UNKNOWN, event_id=event.event_id, distance_to_reference=0))
            continue
        distance = snapshot_distance(trees, ref_trees)
        if prev_distance is None:
            direction = Direction.NEUTRAL
        elif distance < prev_distance:
            direction = Direction.TOWARD
        elif distance > prev_distance:
            direction = Direction.AWAY
        else:
            direction = Direction.NEUTRAL
        labels.append(DirectionLabel(direction=direction, event_id=event.event_id, distance_to_reference=distance))
        prev_distance = distance
    return labels
