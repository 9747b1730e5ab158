"""Logic-layer parsing, printing, and view-layer tag trees."""

from __future__ import annotations

import hashlib
from typing import Optional

from ..model import Snapshot
from .bench import BenchRow, bench_all, bench_parse, mean_ms, render_table, rows_to_records
from .lexer import tokenize
from .nodes import Node, from_dict, structural_hash, structurally_equal, to_dict
from .parser import ParseErrorInfo, ParseOutcome, parse, try_parse
from .printer import print_expression, print_tree
from .tokens import Span, Token, TokenKind
from .wxml import TagElement, TagOutcome, TagText, parse_tags, try_parse_tags

__all__ = [
    "BenchRow", "Node", "ParseErrorInfo", "ParseOutcome", "Span", "TagElement",
    "TagOutcome", "TagText", "Token", "TokenKind", "bench_all", "bench_parse",
    "from_dict", "mean_ms", "parse", "parse_snapshot", "parse_tags", "print_expression",
    "print_tree", "render_table", "rows_to_records", "snapshot_structural_hash",
    "structural_hash", "structurally_equal", "to_dict", "tokenize", "try_parse",
    "try_parse_tags",
]


def parse_snapshot(snapshot: Snapshot) -> tuple[dict[str, ParseOutcome], dict[str, TagOutcome]]:
    """Parse every logic file and every view file independently.

    One file's failure never blocks the others; errors come back as data.
    Style and other layers are not parsed here.
    """
    logic = {}
    for path, data in snapshot.logic_files().items():
        logic[path] = try_parse(data.decode("utf-8", errors="replace"))
    view = {}
    for path, data in snapshot.view_files().items():
        view[path] = try_parse_tags(data.decode("utf-8", errors="replace"))
    return logic, view


def snapshot_structural_hash(snapshot: Snapshot) -> Optional[str]:
    """Hash of the canonical printed form of all logic trees, paths sorted.

    None when any logic file fails to parse: an unparseable snapshot has no
    canonical form. Formatting-only edits leave the hash unchanged.
    """
    logic, _ = parse_snapshot(snapshot)
    digest = hashlib.sha256()
    for path in sorted(logic):
        outcome = logic[path]
        if not outcome.ok:
            return None
        digest.update(path.encode("utf-8"))
        digest.update(b"\x00")
        digest.update(print_tree(outcome.tree).encode("utf-8"))
        digest.update(b"\x00")
    return digest.hexdigest()
