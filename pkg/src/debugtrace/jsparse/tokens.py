"""Token and span definitions for the logic-layer language."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    IDENTIFIER = "Identifier"
    NUMBER = "Number"
    STRING = "String"
    PUNCT = "Punct"
    KEYWORD = "Keyword"
    EOF = "EOF"


KEYWORDS = frozenset(
    ["var", "let", "const", "function", "if", "else", "while", "for", "return", "true", "false", "null"]
)

# Longest match first.
PUNCTUATORS = [
    "===", "!==",
    "==", "!=", "<=", ">=", "&&", "||", "=>", "+=", "-=", "*=", "/=", "%=",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", ":", "=", "<", ">", "+", "-", "*", "/", "%", "!",
]


@dataclass(frozen=True)
class Span:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def contains(self, other: "Span") -> bool:
        if (other.start_line, other.start_col) < (self.start_line, self.start_col):
            return False
        if (other.end_line, other.end_col) > (self.end_line, self.end_col):
            return False
        return True

    @staticmethod
    def cover(a: "Span", b: "Span") -> "Span":
        start = min((a.start_line, a.start_col), (b.start_line, b.start_col))
        end = max((a.end_line, a.end_col), (b.end_line, b.end_col))
        return Span(start[0], start[1], end[0], end[1])


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span
    # Character offsets into the source; used by trivia-coverage checks
    # and grammar-mutation tooling.
    start: int
    end: int

    def __repr__(self):
        return f"Token({self.kind.value}, {self.lexeme!r}@{self.span.start_line}:{self.span.start_col})"
