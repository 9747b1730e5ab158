"""Call counting over syntax trees for configured API prefixes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..jsparse.nodes import CALL, IDENTIFIER, MEMBER, Node


@dataclass(frozen=True)
class ApiStats:
    calls: dict[str, int] = field(default_factory=dict)

    @property
    def total_calls(self) -> int:
        return sum(self.calls.values())


def _callee_chain(callee: Node) -> Optional[str]:
    """Dotted name for a Member/Identifier callee chain, else None."""
    parts = []
    node = callee
    while node.kind == MEMBER:
        parts.append(node.children[1].value)
        node = node.children[0]
    if node.kind != IDENTIFIER:
        return None
    parts.append(node.value)
    return ".".join(reversed(parts))


def api_stats(trees: list[Node], prefixes: list[str]) -> ApiStats:
    """Count every call whose callee chain is rooted at a prefix.

    The name recorded is the full dotted chain; nested calls each count.
    """
    if not prefixes:
        raise ValueError("prefixes must be non-empty")
    wanted = set(prefixes)
    calls: dict[str, int] = {}
    for tree in trees:
        for node in tree.walk():
            if node.kind != CALL:
                continue
            chain = _callee_chain(node.children[0])
            if chain is None:
                continue
            if chain.split(".", 1)[0] in wanted:
                calls[chain] = calls.get(chain, 0) + 1
    return ApiStats(calls=calls)
