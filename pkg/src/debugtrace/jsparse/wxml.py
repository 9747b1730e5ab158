"""View-layer tag tree parsing.

Markup is a strict subset: elements with attributes, self-closing tags,
text nodes, and <!-- --> comments (skipped). Tags must nest properly and
attribute names must be unique per element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import TagError

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.:")


@dataclass
class TagText:
    text: str


@dataclass
class TagElement:
    tag: str
    attributes: list[tuple[str, str]] = field(default_factory=list)
    children: list[Union["TagElement", TagText]] = field(default_factory=list)


@dataclass(frozen=True)
class TagErrorInfo:
    line: int
    col: int
    message: str


@dataclass(frozen=True)
class TagOutcome:
    root: Optional[TagElement] = None
    error: Optional[TagErrorInfo] = None

    @property
    def ok(self) -> bool:
        return self.root is not None


class _TagParser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> TagError:
        return TagError(message, self.line, self.col)

    def peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        ch = self.src[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def at_end(self) -> bool:
        return self.pos >= len(self.src)

    def parse_document(self) -> TagElement:
        children = self.parse_nodes(stop_tag=None)
        elements = [c for c in children if isinstance(c, TagElement)]
        if len(elements) == 1 and all(
            isinstance(c, TagElement) or not c.text.strip() for c in children
        ):
            return elements[0]
        # Multiple top-level nodes get an implicit root so the tree stays a tree.
        return TagElement(tag="#document", children=children)

    def parse_nodes(self, stop_tag: Optional[str]) -> list:
        children: list = []
        text_start = self.pos
        while True:
            if self.at_end():
                if stop_tag is not None:
                    raise self.error(f"missing closing tag </{stop_tag}>")
                self._flush_text(children, text_start)
                return children
            if self.peek() == "<":
                if self.peek(1) == "!" and self.src.startswith("<!--", self.pos):
                    self._flush_text(children, text_start)
                    self._skip_comment()
                    text_start = self.pos
                elif self.peek(1) == "/":
                    self._flush_text(children, text_start)
                    line, col = self.line, self.col
                    name = self._close_tag()
                    if name != stop_tag:
                        raise TagError(f"mismatched closing tag </{name}>", line, col)
                    return children
                else:
                    self._flush_text(children, text_start)
                    children.append(self.parse_element())
                    text_start = self.pos
            else:
                self.advance()

    def _flush_text(self, children: list, text_start: int) -> None:
        raw = self.src[text_start : self.pos]
        if raw.strip():
            children.append(TagText(raw.strip()))

    def _skip_comment(self) -> None:
        line, col = self.line, self.col
        for _ in "<!--":
            self.advance()
        while not self.src.startswith("-->", self.pos):
            if self.at_end():
                raise TagError("unterminated comment", line, col)
            self.advance()
        for _ in "-->":
            self.advance()

    def _close_tag(self) -> str:
        self.advance()  # <
        self.advance()  # /
        name = self._name()
        self._skip_ws()
        if self.peek() != ">":
            raise self.error("expected '>'")
        self.advance()
        return name

    def _name(self) -> str:
        start = self.pos
        while not self.at_end() and self.peek() in _NAME_CHARS:
            self.advance()
        if self.pos == start:
            raise self.error("expected name")
        return self.src[start : self.pos]

    def _skip_ws(self) -> None:
        while not self.at_end() and self.peek() in " \t\r\n":
            self.advance()

    def parse_element(self) -> TagElement:
        self.advance()  # <
        tag = self._name()
        attributes: list[tuple[str, str]] = []
        seen = set()
        while True:
            self._skip_ws()
            ch = self.peek()
            if ch == ">":
                self.advance()
                children = self.parse_nodes(stop_tag=tag)
                return TagElement(tag=tag, attributes=attributes, children=children)
            if ch == "/" and self.peek(1) == ">":
                self.advance()
                self.advance()
                return TagElement(tag=tag, attributes=attributes)
            if self.at_end():
                raise self.error(f"unterminated tag <{tag}>")
            line, col = self.line, self.col
            name = self._name()
            if name in seen:
                raise TagError(f"duplicate attribute {name!r}", line, col)
            seen.add(name)
            value = ""
            self._skip_ws()
            if self.peek() == "=":
                self.advance()
                self._skip_ws()
                quote = self.peek()
                if quote not in ("\"", "'"):
                    raise self.error("expected quoted attribute value")
                self.advance()
                start = self.pos
                while self.peek() != quote:
                    if self.at_end() or self.peek() == "\n":
                        raise self.error("unterminated attribute value")
                    self.advance()
                value = self.src[start : self.pos]
                self.advance()
            attributes.append((name, value))


def parse_tags(source: str) -> TagElement:
    """Parse view-layer markup; raises TagError on malformed input."""
    return _TagParser(source).parse_document()


def try_parse_tags(source: str) -> TagOutcome:
    try:
        return TagOutcome(root=parse_tags(source))
    except TagError as e:
        return TagOutcome(error=TagErrorInfo(e.line, e.col, e.message))
