"""Hand-written lexer.

Skips whitespace and both comment forms; every token records its span and
character offsets so the original source can be reconstructed from tokens
plus the skipped trivia.
"""

from __future__ import annotations

from ..errors import LexError
from .tokens import KEYWORDS, PUNCTUATORS, Span, Token, TokenKind

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
_IDENT_CONT = _IDENT_START | set("0123456789")
_DIGITS = set("0123456789")


class _Cursor:
    __slots__ = ("src", "pos", "line", "col")

    def __init__(self, src: str):
        self.src = src
        self.pos = 0
        self.line = 1
        self.col = 1

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


def tokenize(source: str) -> list[Token]:
    """Lex ``source`` into a token list ending with EOF.

    Raises LexError for an unterminated string or block comment.
    """
    cur = _Cursor(source)
    tokens: list[Token] = []

    while True:
        _skip_trivia(cur)
        if cur.at_end():
            span = Span(cur.line, cur.col, cur.line, cur.col)
            tokens.append(Token(TokenKind.EOF, "", span, cur.pos, cur.pos))
            return tokens
        start_pos, start_line, start_col = cur.pos, cur.line, cur.col
        ch = cur.peek()

        if ch in _IDENT_START:
            while not cur.at_end() and cur.peek() in _IDENT_CONT:
                cur.advance()
            lexeme = source[start_pos : cur.pos]
            kind = TokenKind.KEYWORD if lexeme in KEYWORDS else TokenKind.IDENTIFIER
        elif ch in _DIGITS:
            _lex_number(cur)
            lexeme = source[start_pos : cur.pos]
            kind = TokenKind.NUMBER
        elif ch in ("\"", "'"):
            _lex_string(cur)
            lexeme = source[start_pos : cur.pos]
            kind = TokenKind.STRING
        else:
            lexeme = _match_punct(cur)
            if lexeme is None:
                raise LexError(f"unexpected character {ch!r}", cur.line, cur.col, ch)
            kind = TokenKind.PUNCT

        span = Span(start_line, start_col, cur.line, cur.col)
        tokens.append(Token(kind, lexeme, span, start_pos, cur.pos))


def _skip_trivia(cur: _Cursor) -> None:
    while not cur.at_end():
        ch = cur.peek()
        if ch in " \t\r\n":
            cur.advance()
        elif ch == "/" and cur.peek(1) == "/":
            while not cur.at_end() and cur.peek() != "\n":
                cur.advance()
        elif ch == "/" and cur.peek(1) == "*":
            line, col = cur.line, cur.col
            cur.advance()
            cur.advance()
            while True:
                if cur.at_end():
                    raise LexError("unterminated block comment", line, col, "/*")
                if cur.peek() == "*" and cur.peek(1) == "/":
                    cur.advance()
                    cur.advance()
                    break
                cur.advance()
        else:
            return


def _lex_number(cur: _Cursor) -> None:
    while not cur.at_end() and cur.peek() in _DIGITS:
        cur.advance()
    if cur.peek() == "." and cur.peek(1) in _DIGITS:
        cur.advance()
        while not cur.at_end() and cur.peek() in _DIGITS:
            cur.advance()
    if cur.peek() in ("e", "E") and (cur.peek(1) in _DIGITS or (cur.peek(1) in "+-" and cur.peek(2) in _DIGITS)):
        cur.advance()
        if cur.peek() in "+-":
            cur.advance()
        while not cur.at_end() and cur.peek() in _DIGITS:
            cur.advance()


def _lex_string(cur: _Cursor) -> None:
    line, col = cur.line, cur.col
    quote = cur.advance()
    while True:
        if cur.at_end() or cur.peek() == "\n":
            raise LexError("unterminated string", line, col, quote)
        ch = cur.advance()
        if ch == "\\":
            if cur.at_end():
                raise LexError("unterminated string", line, col, quote)
            cur.advance()
        elif ch == quote:
            return


def _match_punct(cur: _Cursor):
    rest = cur.src[cur.pos :]
    for p in PUNCTUATORS:
        if rest.startswith(p):
            for _ in p:
                cur.advance()
            return p
    return None
