"""Canonical source rendering of syntax trees.

Format rules: 2-space indentation, one statement per line, single spaces
around binary/assignment operators, semicolon-terminated statements, no
trailing whitespace. Original formatting is discarded; the contract is
that the output re-parses to a structurally identical tree.

That contract covers every tree the parser can produce. A hand-built
If-with-else whose then-arm is an unbraced trailing if would re-associate
the else on re-parse; the parser never produces that shape (dangling else
always binds inward), so it is outside the contract.
"""

from __future__ import annotations

from .nodes import (
    ARRAY_LIT, ARROW_FUNCTION, ASSIGN, BINARY, BLOCK, BOOL_LIT, CALL, EXPR_STMT, FOR,
    FUNCTION_DECL, FUNCTION_EXPR, IDENTIFIER, IF, INDEX, MEMBER, NULL_LIT, NUMBER_LIT,
    OBJECT_LIT, PROGRAM, PROPERTY, RETURN, STRING_LIT, UNARY, VAR_DECL, WHILE, Node,
)

INDENT = "  "

_BINARY_PREC = {
    "||": 2, "&&": 3,
    "==": 4, "!=": 4, "===": 4, "!==": 4,
    "<": 5, ">": 5, "<=": 5, ">=": 5,
    "+": 6, "-": 6,
    "*": 7, "/": 7, "%": 7,
}


def _precedence(node: Node) -> int:
    k = node.kind
    if k in (ASSIGN, ARROW_FUNCTION):
        return 1
    if k == BINARY:
        return _BINARY_PREC[node.value]
    if k == UNARY:
        return 8
    if k in (CALL, MEMBER, INDEX):
        return 9
    return 10


def _leftmost_opens_brace(expr: Node) -> bool:
    # An ExprStmt must not start with '{' (block) or 'function' (decl).
    n = expr
    while n.kind in (BINARY, ASSIGN, CALL, MEMBER, INDEX):
        n = n.children[0]
    return n.kind in (OBJECT_LIT, FUNCTION_EXPR)


def print_tree(tree: Node) -> str:
    if tree.kind != PROGRAM:
        raise ValueError("print_tree expects a Program root")
    lines: list[str] = []
    for stmt in tree.children:
        _stmt(stmt, 0, lines)
    return "\n".join(lines) + "\n" if lines else ""


def print_expression(expr: Node) -> str:
    """Single-expression rendering (used for CFG condition text)."""
    return _expr(expr, 0, 1)


def _stmt(n: Node, ind: int, out: list[str]) -> None:
    pad = INDENT * ind
    k = n.kind
    if k == VAR_DECL:
        out.append(pad + _var_decl_text(n, ind) + ";")
    elif k == FUNCTION_DECL:
        _function_lines(n, ind, out, prefix=pad, suffix="")
    elif k == BLOCK:
        if not n.children:
            out.append(pad + "{}")
        else:
            out.append(pad + "{")
            for s in n.children:
                _stmt(s, ind + 1, out)
            out.append(pad + "}")
    elif k == IF:
        _if_stmt(n, ind, out)
    elif k == WHILE:
        head = pad + "while (" + _expr(n.children[0], ind, 1) + ")"
        _attach_body(head, n.children[1], ind, out)
    elif k == FOR:
        _for_stmt(n, ind, out)
    elif k == RETURN:
        if n.children:
            out.append(pad + "return " + _expr(n.children[0], ind, 1) + ";")
        else:
            out.append(pad + "return;")
    elif k == EXPR_STMT:
        e = n.children[0]
        text = _expr(e, ind, 1)
        if _leftmost_opens_brace(e):
            text = "(" + text + ")"
        out.append(pad + text + ";")
    else:
        raise ValueError(f"not a statement kind: {k}")


def _var_decl_text(n: Node, ind: int) -> str:
    name = n.children[0].value
    if len(n.children) == 2:
        return f"{n.value} {name} = " + _expr(n.children[1], ind, 1)
    return f"{n.value} {name}"


def _attach_body(head: str, body: Node, ind: int, out: list[str]) -> None:
    pad = INDENT * ind
    if body.kind == BLOCK:
        if not body.children:
            out.append(head + " {}")
        else:
            out.append(head + " {")
            for s in body.children:
                _stmt(s, ind + 1, out)
            out.append(pad + "}")
    else:
        out.append(head)
        _stmt(body, ind + 1, out)


def _if_stmt(n: Node, ind: int, out: list[str]) -> None:
    pad = INDENT * ind
    cond = _expr(n.children[0], ind, 1)
    then = n.children[1]
    els = n.children[2] if len(n.children) == 3 else None

    if then.kind == BLOCK:
        if then.children:
            out.append(pad + f"if ({cond}) {{")
            for s in then.children:
                _stmt(s, ind + 1, out)
            tail = pad + "}"
        else:
            tail = pad + f"if ({cond}) {{}}"
        if els is None:
            out.append(tail)
        elif els.kind == BLOCK:
            if els.children:
                out.append(tail + " else {")
                for s in els.children:
                    _stmt(s, ind + 1, out)
                out.append(pad + "}")
            else:
                out.append(tail + " else {}")
        else:
            out.append(tail + " else")
            _stmt(els, ind + 1, out)
    else:
        out.append(pad + f"if ({cond})")
        _stmt(then, ind + 1, out)
        if els is not None:
            if els.kind == BLOCK:
                if els.children:
                    out.append(pad + "else {")
                    for s in els.children:
                        _stmt(s, ind + 1, out)
                    out.append(pad + "}")
                else:
                    out.append(pad + "else {}")
            else:
                out.append(pad + "else")
                _stmt(els, ind + 1, out)


def _for_stmt(n: Node, ind: int, out: list[str]) -> None:
    pad = INDENT * ind
    mask = n.value or ""
    parts = list(n.children)
    body = parts.pop()
    texts = {"i": "", "c": "", "u": ""}
    for flag in mask:
        part = parts.pop(0)
        if flag == "i" and part.kind == VAR_DECL:
            texts[flag] = _var_decl_text(part, ind)
        else:
            texts[flag] = _expr(part, ind, 1)
    cond = " " + texts["c"] if texts["c"] else ""
    upd = " " + texts["u"] if texts["u"] else ""
    head = pad + f"for ({texts['i']};{cond};{upd})"
    _attach_body(head, body, ind, out)


def _function_lines(n: Node, ind: int, out: list[str], prefix: str, suffix: str) -> None:
    # FunctionDecl as a statement; prefix carries the indent, suffix any ';'.
    out.append(prefix + _function_text(n, ind, decl=True) + suffix)
    # _function_text may already contain the body lines (joined); nothing else here.


def _function_text(n: Node, ind: int, decl: bool) -> str:
    name = n.value or ""
    params = [c.value for c in n.children[:-1]]
    body = n.children[-1]
    head = f"function {name}(" if name else "function ("
    head += ", ".join(params) + ")"
    return head + " " + _block_text(body, ind)


def _block_text(block: Node, ind: int) -> str:
    if not block.children:
        return "{}"
    inner: list[str] = []
    for s in block.children:
        _stmt(s, ind + 1, inner)
    return "{\n" + "\n".join(inner) + "\n" + INDENT * ind + "}"


def _arrow_text(n: Node, ind: int) -> str:
    params = [c.value for c in n.children[:-1]]
    body = n.children[-1]
    head = "(" + ", ".join(params) + ") => "
    if body.kind == BLOCK:
        return head + _block_text(body, ind)
    body_text = _expr(body, ind, 1)
    if _leftmost_opens_brace(body):
        body_text = "(" + body_text + ")"
    return head + body_text


def _expr(n: Node, ind: int, min_prec: int) -> str:
    k = n.kind
    if k == IDENTIFIER:
        text = n.value
    elif k in (NUMBER_LIT, STRING_LIT, BOOL_LIT):
        text = n.value
    elif k == NULL_LIT:
        text = "null"
    elif k == ASSIGN:
        left = _expr(n.children[0], ind, 9)
        right = _expr(n.children[1], ind, 1)
        text = f"{left} {n.value} {right}"
    elif k == BINARY:
        prec = _BINARY_PREC[n.value]
        left = _expr(n.children[0], ind, prec)
        right = _expr(n.children[1], ind, prec + 1)
        text = f"{left} {n.value} {right}"
    elif k == UNARY:
        text = n.value + _expr(n.children[0], ind, 8)
    elif k == CALL:
        callee = _expr(n.children[0], ind, 9)
        args = ", ".join(_expr(a, ind, 1) for a in n.children[1:])
        text = f"{callee}({args})"
    elif k == MEMBER:
        obj = _expr(n.children[0], ind, 9)
        text = f"{obj}.{n.children[1].value}"
    elif k == INDEX:
        obj = _expr(n.children[0], ind, 9)
        text = f"{obj}[" + _expr(n.children[1], ind, 1) + "]"
    elif k == OBJECT_LIT:
        if not n.children:
            text = "{}"
        else:
            text = "{ " + ", ".join(_property_text(p, ind) for p in n.children) + " }"
    elif k == ARRAY_LIT:
        text = "[" + ", ".join(_expr(e, ind, 1) for e in n.children) + "]"
    elif k == FUNCTION_EXPR:
        text = _function_text(n, ind, decl=False)
    elif k == ARROW_FUNCTION:
        text = _arrow_text(n, ind)
    else:
        raise ValueError(f"not an expression kind: {k}")

    if _precedence(n) < min_prec:
        return "(" + text + ")"
    return text


def _property_text(p: Node, ind: int) -> str:
    key, value = p.children
    return f"{key.value}: " + _expr(value, ind, 1)
