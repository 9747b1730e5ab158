"""Uniform syntax-tree nodes.

One node shape for every kind keeps tree diffing and serialization simple:
a node is (kind, value, children, span). ``value`` carries the identifier
name or literal lexeme for leaves, the operator for Binary/Unary/Assign,
the declaration keyword for VarDecl, the function name for FunctionDecl /
FunctionExpr, and the clause mask for For.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .tokens import Span

PROGRAM = "Program"
FUNCTION_DECL = "FunctionDecl"
VAR_DECL = "VarDecl"
BLOCK = "Block"
IF = "If"
WHILE = "While"
FOR = "For"
RETURN = "Return"
EXPR_STMT = "ExprStmt"
ASSIGN = "Assign"
BINARY = "Binary"
UNARY = "Unary"
CALL = "Call"
MEMBER = "Member"
INDEX = "Index"
IDENTIFIER = "Identifier"
NUMBER_LIT = "NumberLit"
STRING_LIT = "StringLit"
BOOL_LIT = "BoolLit"
NULL_LIT = "NullLit"
OBJECT_LIT = "ObjectLit"
ARRAY_LIT = "ArrayLit"
FUNCTION_EXPR = "FunctionExpr"
ARROW_FUNCTION = "ArrowFunction"
PROPERTY = "Property"

NODE_KINDS = frozenset(
    [
        PROGRAM, FUNCTION_DECL, VAR_DECL, BLOCK, IF, WHILE, FOR, RETURN, EXPR_STMT,
        ASSIGN, BINARY, UNARY, CALL, MEMBER, INDEX, IDENTIFIER, NUMBER_LIT, STRING_LIT,
        BOOL_LIT, NULL_LIT, OBJECT_LIT, ARRAY_LIT, FUNCTION_EXPR, ARROW_FUNCTION, PROPERTY,
    ]
)

LITERAL_KINDS = frozenset([NUMBER_LIT, STRING_LIT, BOOL_LIT, NULL_LIT])
STATEMENT_KINDS = frozenset([FUNCTION_DECL, VAR_DECL, BLOCK, IF, WHILE, FOR, RETURN, EXPR_STMT])


@dataclass
class Node:
    kind: str
    value: Optional[str] = None
    children: list["Node"] = field(default_factory=list)
    span: Optional[Span] = None

    def walk(self) -> Iterator["Node"]:
        """Preorder traversal."""
        yield self
        for c in self.children:
            yield from c.walk()

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)

    def label(self) -> tuple[str, Optional[str]]:
        return (self.kind, self.value)

    def __repr__(self):
        v = f" {self.value!r}" if self.value is not None else ""
        return f"<{self.kind}{v} [{len(self.children)}]>"


def structurally_equal(a: Node, b: Node) -> bool:
    """Equality ignoring spans."""
    if a.kind != b.kind or a.value != b.value or len(a.children) != len(b.children):
        return False
    return all(structurally_equal(x, y) for x, y in zip(a.children, b.children))


def _serialize_into(node: Node, out: list[str]) -> None:
    out.append("(")
    out.append(node.kind)
    if node.value is not None:
        out.append("\x1f")
        out.append(node.value.replace("\\", "\\\\").replace("(", "\\(").replace(")", "\\)"))
    for c in node.children:
        _serialize_into(c, out)
    out.append(")")


def structural_serialization(node: Node) -> str:
    """Span-free canonical serialization; equal iff structurally equal."""
    out: list[str] = []
    _serialize_into(node, out)
    return "".join(out)


def structural_hash(node: Node) -> str:
    return hashlib.sha256(structural_serialization(node).encode("utf-8")).hexdigest()


def to_dict(node: Node) -> dict:
    d: dict = {"kind": node.kind}
    if node.value is not None:
        d["value"] = node.value
    if node.children:
        d["children"] = [to_dict(c) for c in node.children]
    if node.span is not None:
        d["span"] = [node.span.start_line, node.span.start_col, node.span.end_line, node.span.end_col]
    return d


def from_dict(d: dict) -> Node:
    span = None
    if "span" in d:
        s = d["span"]
        span = Span(s[0], s[1], s[2], s[3])
    return Node(
        kind=d["kind"],
        value=d.get("value"),
        children=[from_dict(c) for c in d.get("children", [])],
        span=span,
    )
