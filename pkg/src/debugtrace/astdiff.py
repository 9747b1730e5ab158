"""Tree edit distance, edit scripts, edit classification, and line diffs.

Distance is the minimum number of unit-cost node operations (insert,
delete, relabel) transforming one ordered tree into another, computed by
the Zhang-Shasha dynamic program. Both trees are wrapped in a shared
virtual root before matching; the wrappers always map to each other, so
scripts never touch them and the wrapped distance equals the unwrapped
one. Above ``EXACT_NODE_LIMIT`` combined nodes a greedy top-down matcher
supplies an upper bound and the result is flagged approximate.

A script is derived from the node mapping: unmatched source nodes become
deletes (children splice into the parent), unmatched target nodes become
inserts (the new node adopts a consecutive run of its parent's children),
label mismatches become relabels. Ops apply in listed order.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import InconsistentScript
from .jsparse.nodes import (
    BLOCK, CALL, FOR, FUNCTION_DECL, IDENTIFIER, IF, LITERAL_KINDS, MEMBER, RETURN, WHILE,
    Node, structurally_equal,
)
from .model import LineDelta

EXACT_NODE_LIMIT = 2000

_WRAPPER_KIND = "\x00Forest"

# Statement-level kinds whose insertion/deletion is always structural.
_STRUCT_STMT_KINDS = frozenset([IF, WHILE, FOR, FUNCTION_DECL, BLOCK, RETURN])

SUPER_ROOT = -1


@dataclass(frozen=True)
class Relabel:
    node: int  # 1-based source postorder index
    old_kind: str
    old_value: Optional[str]
    new_kind: str
    new_value: Optional[str]


@dataclass(frozen=True)
class Delete:
    node: int  # 1-based source postorder index
    kind: str
    value: Optional[str]


@dataclass(frozen=True)
class Insert:
    kind: str
    value: Optional[str]
    parent_src: Optional[int]  # 1-based source postorder index, or None
    parent_ins: Optional[int]  # ordinal of an earlier Insert, or None
    position: int  # child slot at application time
    adopt_count: int  # how many existing children the new node adopts
    target_node: int  # 1-based target postorder index


EditOp = object  # Relabel | Delete | Insert


@dataclass(frozen=True)
class EditScript:
    operations: tuple

    @property
    def cost(self) -> int:
        return len(self.operations)


@dataclass(frozen=True)
class TreeDiff:
    distance: int
    script: EditScript
    approximate: bool


class EditClass(str, Enum):
    LITERAL_CHANGE = "LiteralChange"
    IDENTIFIER_RENAME = "IdentifierRename"
    CALL_ARG_CHANGE = "CallArgChange"
    API_CALLEE_CHANGE = "ApiCalleeChange"
    STRUCTURAL_CHANGE = "StructuralChange"


@dataclass(frozen=True)
class EditClassification:
    counts: dict

    @property
    def classes(self) -> frozenset:
        return frozenset(self.counts)

    def count(self, cls: EditClass) -> int:
        return self.counts.get(cls, 0)


# -- Zhang-Shasha ---------------------------------------------------------


def _wrap(root: Node) -> Node:
    return Node(_WRAPPER_KIND, children=[root])


class _ZsTree:
    """Postorder-indexed view (1-based) with leftmost-leaf-descendant table."""

    def __init__(self, root: Node):
        self.nodes: list[Node] = []
        self.parents: list[int] = []  # 1-based parent index, 0 for root

        def visit(node: Node) -> int:
            child_ids = [visit(c) for c in node.children]
            self.nodes.append(node)
            idx = len(self.nodes)
            self.parents.append(0)
            for cid in child_ids:
                self.parents[cid - 1] = idx
            return idx

        visit(root)
        self.n = len(self.nodes)
        self.lld = [0] * (self.n + 1)
        for i in range(1, self.n + 1):
            node = self.nodes[i - 1]
            if not node.children:
                self.lld[i] = i
            else:
                first_child_idx = i - self._size(node) + self._size(node.children[0])
                # lld(parent) = lld(first child); first child's postorder index is
                # (i - size(node) + size(first child)).
                self.lld[i] = self.lld[first_child_idx]
        self.keyroots = self._keyroots()

    def _size(self, node: Node) -> int:
        return node.node_count()

    def _keyroots(self) -> list[int]:
        seen = set()
        roots = []
        for i in range(self.n, 0, -1):
            if self.lld[i] not in seen:
                roots.append(i)
                seen.add(self.lld[i])
        return sorted(roots)

    def label(self, i: int) -> tuple[str, Optional[str]]:
        return self.nodes[i - 1].label()


def _zs_mapping(a_root: Node, b_root: Node) -> tuple[int, list[tuple[int, int]]]:
    """Exact distance plus an optimal node mapping over wrapped trees.

    Returns (distance, pairs of 1-based postorder indices into the wrapped
    trees). The wrapper pair is included.
    """
    ta, tb = _ZsTree(_wrap(a_root)), _ZsTree(_wrap(b_root))
    n, m = ta.n, tb.n
    td = [[0] * (m + 1) for _ in range(n + 1)]
    fd = [[0] * (m + 1) for _ in range(n + 1)]

    def forest_dist(i: int, j: int) -> None:
        li, lj = ta.lld[i], tb.lld[j]
        fd[li - 1][lj - 1] = 0
        for di in range(li, i + 1):
            fd[di][lj - 1] = fd[di - 1][lj - 1] + 1
        for dj in range(lj, j + 1):
            fd[li - 1][dj] = fd[li - 1][dj - 1] + 1
        for di in range(li, i + 1):
            for dj in range(lj, j + 1):
                if ta.lld[di] == li and tb.lld[dj] == lj:
                    upd = 0 if ta.label(di) == tb.label(dj) else 1
                    fd[di][dj] = min(
                        fd[di - 1][dj] + 1,
                        fd[di][dj - 1] + 1,
                        fd[di - 1][dj - 1] + upd,
                    )
                    td[di][dj] = fd[di][dj]
                else:
                    fd[di][dj] = min(
                        fd[di - 1][dj] + 1,
                        fd[di][dj - 1] + 1,
                        fd[ta.lld[di] - 1][tb.lld[dj] - 1] + td[di][dj],
                    )

    for i in ta.keyroots:
        for j in tb.keyroots:
            forest_dist(i, j)
    distance = td[n][m]

    # Backtrace. The forest matrix left by the forward pass belongs to the
    # final keyroot pair, which is always (root, root).
    mapping: list[tuple[int, int]] = []
    pending: list[tuple[int, int]] = [(n, m)]
    first = True
    while pending:
        i, j = pending.pop()
        if not first:
            forest_dist(i, j)
        first = False
        fr, fc = ta.lld[i] - 1, tb.lld[j] - 1
        row, col = i, j
        while row > fr or col > fc:
            if row > fr and col > fc:
                if ta.lld[row] == ta.lld[i] and tb.lld[col] == tb.lld[j]:
                    # Tree cell: prefer matching the two nodes when optimal,
                    # which pins the wrapper roots to each other.
                    upd = 0 if ta.label(row) == tb.label(col) else 1
                    if fd[row - 1][col - 1] + upd == fd[row][col]:
                        mapping.append((row, col))
                        row -= 1
                        col -= 1
                        continue
                else:
                    p, q = ta.lld[row] - 1, tb.lld[col] - 1
                    if fd[p][q] + td[row][col] == fd[row][col]:
                        pending.append((row, col))
                        row, col = p, q
                        continue
            if row > fr and fd[row - 1][col] + 1 == fd[row][col]:
                row -= 1
                continue
            if col > fc and fd[row][col - 1] + 1 == fd[row][col]:
                col -= 1
                continue
            raise AssertionError("edit-distance backtrace failed to progress")
    return distance, mapping


def _greedy_mapping(a_root: Node, b_root: Node) -> list[tuple[int, int]]:
    """Upper-bound mapping: match roots, align equal-labeled children, recurse."""
    ta, tb = _ZsTree(_wrap(a_root)), _ZsTree(_wrap(b_root))
    index_a = {id(node): i + 1 for i, node in enumerate(ta.nodes)}
    index_b = {id(node): j + 1 for j, node in enumerate(tb.nodes)}
    mapping: list[tuple[int, int]] = []

    def recurse(x: Node, y: Node) -> None:
        mapping.append((index_a[id(x)], index_b[id(y)]))
        sm = difflib.SequenceMatcher(
            a=[c.label() for c in x.children],
            b=[c.label() for c in y.children],
            autojunk=False,
        )
        for block in sm.get_matching_blocks():
            for k in range(block.size):
                recurse(x.children[block.a + k], y.children[block.b + k])

    recurse(ta.nodes[-1], tb.nodes[-1])
    return mapping


# -- mapping -> script ----------------------------------------------------


class _Work:
    __slots__ = ("kind", "value", "children", "b_tag")

    def __init__(self, kind: str, value: Optional[str]):
        self.kind = kind
        self.value = value
        self.children: list[_Work] = []
        self.b_tag: Optional[int] = None  # wrapped-target postorder index

    def to_node(self) -> Node:
        n = Node(self.kind, value=self.value)
        n.children = [c.to_node() for c in self.children]
        return n


def _build_work_tree(ta: _ZsTree) -> list[_Work]:
    """Work nodes indexed by wrapped postorder (1-based at offset -1)."""
    works = [_Work(n.kind, n.value) for n in ta.nodes]
    for i, node in enumerate(ta.nodes):
        child_works = []
        pos = i + 1 - node.node_count()  # first postorder index within subtree, minus 1
        for c in node.children:
            pos += c.node_count()
            child_works.append(works[pos - 1])
        works[i].children = child_works
    return works


def _mapping_to_script(ta: _ZsTree, tb: _ZsTree, mapping: list[tuple[int, int]]) -> EditScript:
    n, m = ta.n, tb.n
    a_to_b = dict(mapping)
    b_to_a = {j: i for i, j in mapping}

    ops: list = []
    relabels = []
    for i, j in sorted(mapping):
        if i == n and j == m:
            continue  # wrapper pair
        if ta.label(i) != tb.label(j):
            ak, av = ta.label(i)
            bk, bv = tb.label(j)
            relabels.append(Relabel(node=i, old_kind=ak, old_value=av, new_kind=bk, new_value=bv))
    deletes = [
        Delete(node=i, kind=ta.label(i)[0], value=ta.label(i)[1])
        for i in range(1, n) if i not in a_to_b
    ]

    # Simulate relabels + deletes on a working copy, then place inserts.
    works = _build_work_tree(ta)
    parent_of: dict[int, _Work] = {}

    def refresh_parents(w: _Work) -> None:
        for c in w.children:
            parent_of[id(c)] = w
            refresh_parents(c)

    refresh_parents(works[-1])
    for op in relabels:
        works[op.node - 1].kind = op.new_kind
        works[op.node - 1].value = op.new_value
    for op in deletes:
        w = works[op.node - 1]
        p = parent_of[id(w)]
        at = p.children.index(w)
        p.children[at : at + 1] = w.children
        for c in w.children:
            parent_of[id(c)] = p
    for i, j in mapping:
        works[i - 1].b_tag = j

    inserted: list[_Work] = []
    inserts: list[Insert] = []
    ins_ordinal: dict[int, int] = {}
    b_preorder = sorted((j for j in range(1, m) if j not in b_to_a), key=lambda j: _preorder_key(tb, j))
    for j in b_preorder:
        parent_j = tb.parents[j - 1]
        if parent_j in b_to_a:
            src_idx = b_to_a[parent_j]
            p_work = works[src_idx - 1]
            parent_src = None if src_idx == n else src_idx
            parent_ins = None
        else:
            parent_src = None
            parent_ins = ins_ordinal[parent_j]
            p_work = inserted[parent_ins]
        lo = tb.lld[j]
        run = [idx for idx, ch in enumerate(p_work.children) if ch.b_tag is not None and lo <= ch.b_tag < j]
        if run:
            assert run == list(range(run[0], run[0] + len(run))), "adopted children not consecutive"
            position, count = run[0], len(run)
        else:
            position = sum(1 for ch in p_work.children if ch.b_tag is not None and ch.b_tag < lo)
            count = 0
        kind, value = tb.label(j)
        w = _Work(kind, value)
        w.b_tag = j
        w.children = p_work.children[position : position + count]
        for c in w.children:
            parent_of[id(c)] = w
        p_work.children[position : position + count] = [w]
        parent_of[id(w)] = p_work
        ins_ordinal[j] = len(inserted)
        inserted.append(w)
        inserts.append(
            Insert(
                kind=kind, value=value,
                parent_src=SUPER_ROOT if (parent_src is None and parent_ins is None) else parent_src,
                parent_ins=parent_ins,
                position=position, adopt_count=count, target_node=j,
            )
        )

    ops = relabels + deletes + inserts
    return EditScript(operations=tuple(ops))


def _preorder_key(t: _ZsTree, j: int) -> tuple:
    # Preorder = ancestors first; among disjoint subtrees, left first.
    # (depth asc would not suffice; use (lld, -postorder): a parent shares its
    # descendants' lld range start but has the larger postorder index.)
    return (t.lld[j], -j)


def apply_script(root: Node, script: EditScript) -> Node:
    """Replay a script against a source tree; returns the resulting tree."""
    ta = _ZsTree(_wrap(root))
    works = _build_work_tree(ta)
    parent_of: dict[int, _Work] = {}

    def refresh(w: _Work) -> None:
        for c in w.children:
            parent_of[id(c)] = w
            refresh(c)

    refresh(works[-1])
    inserted: list[_Work] = []
    try:
        for op in script.operations:
            if isinstance(op, Relabel):
                w = works[op.node - 1]
                w.kind, w.value = op.new_kind, op.new_value
            elif isinstance(op, Delete):
                w = works[op.node - 1]
                p = parent_of[id(w)]
                at = p.children.index(w)
                p.children[at : at + 1] = w.children
                for c in w.children:
                    parent_of[id(c)] = p
            elif isinstance(op, Insert):
                if op.parent_ins is not None:
                    p = inserted[op.parent_ins]
                elif op.parent_src == SUPER_ROOT:
                    p = works[-1]
                else:
                    p = works[op.parent_src - 1]
                w = _Work(op.kind, op.value)
                w.children = p.children[op.position : op.position + op.adopt_count]
                p.children[op.position : op.position + op.adopt_count] = [w]
                for c in w.children:
                    parent_of[id(c)] = w
                parent_of[id(w)] = p
                inserted.append(w)
            else:
                raise InconsistentScript(f"unknown operation {op!r}")
    except (IndexError, KeyError, ValueError) as e:
        raise InconsistentScript(f"script does not apply: {e}") from e
    wrapper = works[-1]
    if len(wrapper.children) != 1:
        raise InconsistentScript("script result is a forest, not a tree")
    return wrapper.children[0].to_node()


def tree_edit_distance(a: Node, b: Node, exact_limit: int = EXACT_NODE_LIMIT) -> TreeDiff:
    """Minimal unit-cost edit script between two ordered trees.

    Exact when the combined node count is within ``exact_limit``; greedy
    upper bound flagged approximate above it.
    """
    combined = a.node_count() + b.node_count()
    if combined <= exact_limit:
        distance, mapping = _zs_mapping(a, b)
        approximate = False
    else:
        mapping = _greedy_mapping(a, b)
        approximate = True
    ta, tb = _ZsTree(_wrap(a)), _ZsTree(_wrap(b))
    script = _mapping_to_script(ta, tb, mapping)
    if approximate:
        distance = script.cost
    else:
        assert script.cost == distance, "script cost diverged from DP distance"
    return TreeDiff(distance=distance, script=script, approximate=approximate)


# -- classification -------------------------------------------------------


def _context_flags(root: Node) -> tuple[list[bool], list[bool], list[str]]:
    """Per wrapped-postorder node: in-callee-chain, in-call-arguments, kind."""
    t = _ZsTree(_wrap(root))
    in_callee = [False] * (t.n + 1)
    in_args = [False] * (t.n + 1)
    kinds = [""] * (t.n + 1)
    index = {id(node): i + 1 for i, node in enumerate(t.nodes)}

    def mark(node: Node, callee: bool, args: bool, member_path: bool) -> None:
        i = index[id(node)]
        kinds[i] = node.kind
        # A node sits on the callee chain while the path from the call's
        # callee child down to it goes through Member nodes only.
        on_chain = callee and member_path and node.kind in (MEMBER, IDENTIFIER)
        in_callee[i] = on_chain
        in_args[i] = args
        for ci, child in enumerate(node.children):
            if node.kind == CALL:
                if ci == 0:
                    mark(child, callee=True, args=args, member_path=True)
                else:
                    mark(child, callee=False, args=True, member_path=False)
            else:
                next_member = member_path and node.kind == MEMBER
                mark(child, callee=callee, args=args, member_path=next_member)

    mark(root, callee=False, args=False, member_path=False)
    return in_callee, in_args, kinds


def classify_edit(script: EditScript, a: Node, b: Node) -> EditClassification:
    """Bucket each operation into an edit class.

    Per-op priority: statement-level insert/delete is structural; then
    callee-chain touches, then call-argument changes, then literal
    relabels, then identifier renames; anything left is structural.
    Raises InconsistentScript when the script does not turn ``a`` into
    ``b``.
    """
    if not structurally_equal(apply_script(a, script), b):
        raise InconsistentScript("script does not transform source into target")

    a_callee, a_args, _ = _context_flags(a)
    b_callee, b_args, _ = _context_flags(b)

    counts: dict[EditClass, int] = {}

    def bump(cls: EditClass) -> None:
        counts[cls] = counts.get(cls, 0) + 1

    for op in script.operations:
        if isinstance(op, (Delete, Insert)) and op.kind in _STRUCT_STMT_KINDS:
            bump(EditClass.STRUCTURAL_CHANGE)
            continue
        if isinstance(op, Insert):
            callee, args = b_callee[op.target_node], b_args[op.target_node]
        else:
            callee, args = a_callee[op.node], a_args[op.node]
        if callee:
            bump(EditClass.API_CALLEE_CHANGE)
        elif args:
            bump(EditClass.CALL_ARG_CHANGE)
        elif isinstance(op, Relabel) and op.old_kind in LITERAL_KINDS:
            bump(EditClass.LITERAL_CHANGE)
        elif isinstance(op, Relabel) and op.old_kind == IDENTIFIER:
            bump(EditClass.IDENTIFIER_RENAME)
        else:
            bump(EditClass.STRUCTURAL_CHANGE)
    return EditClassification(counts=counts)


# -- revert detection -----------------------------------------------------


def detect_revert(history: Sequence[str], candidate: str) -> Optional[int]:
    """Index of the most recent earlier entry structurally equal to the
    candidate, or None."""
    for idx in range(len(history) - 1, -1, -1):
        if history[idx] == candidate:
            return idx
    return None


# -- line diff ------------------------------------------------------------


def line_diff(a_bytes: bytes, b_bytes: bytes) -> LineDelta:
    """LCS line diff summarized as added/removed/changed counts.

    Within each replace hunk, paired remove+add lines count as changed;
    the excess counts as removed or added.
    """
    a = a_bytes.splitlines()
    b = b_bytes.splitlines()
    n, m = len(a), len(b)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row, nxt = dp[i], dp[i + 1]
        for j in range(m - 1, -1, -1):
            if a[i] == b[j]:
                row[j] = nxt[j + 1] + 1
            else:
                row[j] = nxt[j] if nxt[j] >= row[j + 1] else row[j + 1]

    added = removed = changed = 0
    i = j = 0
    while i < n or j < m:
        if i < n and j < m and a[i] == b[j]:
            i += 1
            j += 1
            continue
        # Non-matching hunk: follow the optimal path until the next match.
        dels = ins = 0
        while not (i == n and j == m) and not (i < n and j < m and a[i] == b[j]):
            if j == m or (i < n and dp[i + 1][j] >= dp[i][j + 1]):
                dels += 1
                i += 1
            else:
                ins += 1
                j += 1
        paired = min(dels, ins)
        changed += paired
        removed += dels - paired
        added += ins - paired
    return LineDelta(added=added, removed=removed, changed=changed)


def diff_file_maps(a_files: dict[str, bytes], b_files: dict[str, bytes]) -> dict[str, LineDelta]:
    """Per-path line deltas across two file sets (union of paths)."""
    deltas = {}
    for path in sorted(set(a_files) | set(b_files)):
        deltas[path] = line_diff(a_files.get(path, b""), b_files.get(path, b""))
    return deltas
