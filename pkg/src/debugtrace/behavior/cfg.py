"""Per-function control-flow graph construction and diffing.

Node kinds: Entry, Exit, Stmt, Branch (if conditions), LoopHead (loop
conditions), and Merge (join points after branches). Sequential flow uses
fallthrough edges; Branch and LoopHead emit true/false edges; the edge
closing a loop body is labeled back. Nodes left unreachable (for example
statements after a return) are pruned and listed in the graph's metadata
instead of violating the reachability invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..jsparse.nodes import BLOCK, FOR, FUNCTION_DECL, IF, RETURN, WHILE, Node
from ..jsparse.printer import print_expression
from ..jsparse.tokens import Span

ENTRY = "Entry"
EXIT = "Exit"
STMT = "Stmt"
BRANCH = "Branch"
LOOP_HEAD = "LoopHead"
MERGE = "Merge"


@dataclass(frozen=True)
class CfgNode:
    node_id: int
    kind: str
    text: Optional[str] = None  # condition text for Branch/LoopHead
    span: Optional[Span] = None  # source span for Stmt


@dataclass(frozen=True)
class CfgEdge:
    src: int
    dst: int
    label: Optional[str] = None  # true/false/back/fallthrough


@dataclass(frozen=True)
class Cfg:
    name: str
    nodes: tuple[CfgNode, ...]
    edges: tuple[CfgEdge, ...]
    pruned_unreachable: tuple[int, ...] = ()

    def nodes_of_kind(self, kind: str) -> list[CfgNode]:
        return [n for n in self.nodes if n.kind == kind]

    def conditions_in_order(self) -> list[str]:
        return [n.text or "" for n in self.nodes if n.kind in (BRANCH, LOOP_HEAD)]


@dataclass(frozen=True)
class CfgDelta:
    node_count_delta: int
    edge_count_delta: int
    changed_branch_conditions: tuple[tuple[str, str], ...]
    added_loops: int
    removed_loops: int

    def is_empty(self) -> bool:
        return (
            self.node_count_delta == 0
            and self.edge_count_delta == 0
            and not self.changed_branch_conditions
            and self.added_loops == 0
            and self.removed_loops == 0
        )


class _Builder:
    def __init__(self):
        self.nodes: list[CfgNode] = []
        self.edges: list[tuple[int, int, Optional[str]]] = []

    def add(self, kind: str, text: Optional[str] = None, span: Optional[Span] = None) -> int:
        node_id = len(self.nodes)
        self.nodes.append(CfgNode(node_id=node_id, kind=kind, text=text, span=span))
        return node_id

    def edge(self, src: int, dst: int, label: Optional[str]) -> None:
        self.edges.append((src, dst, label))


def extract_cfg(fn: Node) -> Cfg:
    """Build the control-flow graph of one function declaration."""
    if fn.kind != FUNCTION_DECL or not fn.children or fn.children[-1].kind != BLOCK:
        raise ValueError("extract_cfg expects a FunctionDecl with a Block body")
    b = _Builder()
    entry = b.add(ENTRY)
    exit_node = b.add(EXIT)

    def stmt_list(stmts: list[Node], preds: list[tuple[int, str]]) -> list[tuple[int, str]]:
        # preds: dangling (node, edge-label) pairs awaiting their successor.
        for stmt in stmts:
            preds = build(stmt, preds)
        return preds

    def connect(preds: list[tuple[int, str]], target: int) -> None:
        for src, label in preds:
            b.edge(src, target, label)

    def build(stmt: Node, preds: list[tuple[int, str]]) -> list[tuple[int, str]]:
        kind = stmt.kind
        if kind == BLOCK:
            return stmt_list(stmt.children, preds)
        if kind == IF:
            cond = b.add(BRANCH, text=print_expression(stmt.children[0]))
            connect(preds, cond)
            then_out = build(stmt.children[1], [(cond, "true")])
            if len(stmt.children) == 3:
                else_out = build(stmt.children[2], [(cond, "false")])
            else:
                else_out = [(cond, "false")]
            merge = b.add(MERGE)
            connect(then_out, merge)
            connect(else_out, merge)
            return [(merge, "fallthrough")]
        if kind == WHILE:
            head = b.add(LOOP_HEAD, text=print_expression(stmt.children[0]))
            connect(preds, head)
            body_out = build(stmt.children[1], [(head, "true")])
            for src, _ in body_out:
                b.edge(src, head, "back")
            return [(head, "false")]
        if kind == FOR:
            mask = stmt.value or ""
            parts = list(stmt.children)
            body = parts.pop()
            init = cond_expr = update = None
            for flag in mask:
                part = parts.pop(0)
                if flag == "i":
                    init = part
                elif flag == "c":
                    cond_expr = part
                else:
                    update = part
            if init is not None:
                init_node = b.add(STMT, span=init.span)
                connect(preds, init_node)
                preds = [(init_node, "fallthrough")]
            head = b.add(LOOP_HEAD, text=print_expression(cond_expr) if cond_expr is not None else "")
            connect(preds, head)
            body_out = build(body, [(head, "true")])
            if update is not None:
                upd_node = b.add(STMT, span=update.span)
                connect(body_out, upd_node)
                b.edge(upd_node, head, "back")
            else:
                for src, _ in body_out:
                    b.edge(src, head, "back")
            return [(head, "false")]
        if kind == RETURN:
            node = b.add(STMT, span=stmt.span)
            connect(preds, node)
            b.edge(node, exit_node, "fallthrough")
            return []
        node = b.add(STMT, span=stmt.span)
        connect(preds, node)
        return [(node, "fallthrough")]

    body_out = stmt_list(fn.children[-1].children, [(entry, "fallthrough")])
    connect(body_out, exit_node)

    return _prune(fn.value or "", b, entry, exit_node)


def _prune(name: str, b: _Builder, entry: int, exit_node: int) -> Cfg:
    adjacency: dict[int, list[int]] = {}
    for src, dst, _ in b.edges:
        adjacency.setdefault(src, []).append(dst)
    reachable = set()
    stack = [entry]
    while stack:
        n = stack.pop()
        if n in reachable:
            continue
        reachable.add(n)
        stack.extend(adjacency.get(n, []))
    reachable.add(exit_node)  # Exit always remains, even for non-returning loops

    pruned = tuple(sorted(n.node_id for n in b.nodes if n.node_id not in reachable))
    keep = [n for n in b.nodes if n.node_id in reachable]
    remap = {n.node_id: i for i, n in enumerate(keep)}
    nodes = tuple(
        CfgNode(node_id=remap[n.node_id], kind=n.kind, text=n.text, span=n.span) for n in keep
    )
    edges = tuple(
        CfgEdge(src=remap[s], dst=remap[d], label=l)
        for s, d, l in b.edges
        if s in reachable and d in reachable
    )
    return Cfg(name=name, nodes=nodes, edges=edges, pruned_unreachable=pruned)


def extract_snapshot_cfgs(trees: dict[str, Node]) -> dict[tuple[str, str], Cfg]:
    """CFGs for every top-level function in every parsed logic file."""
    cfgs = {}
    for path, tree in trees.items():
        for node in tree.walk():
            if node.kind == FUNCTION_DECL and node.children and node.children[-1].kind == BLOCK:
                cfgs[(path, node.value or "")] = extract_cfg(node)
    return cfgs


def cfg_diff(a: Cfg, b: Cfg) -> CfgDelta:
    """Count deltas plus condition-text changes in program order."""
    a_conditions = a.conditions_in_order()
    b_conditions = b.conditions_in_order()
    changed = tuple(
        (old, new) for old, new in zip(a_conditions, b_conditions) if old != new
    )
    a_loops = len(a.nodes_of_kind(LOOP_HEAD))
    b_loops = len(b.nodes_of_kind(LOOP_HEAD))
    return CfgDelta(
        node_count_delta=len(b.nodes) - len(a.nodes),
        edge_count_delta=len(b.edges) - len(a.edges),
        changed_branch_conditions=changed,
        added_loops=max(0, b_loops - a_loops),
        removed_loops=max(0, a_loops - b_loops),
    )
