"""Recursive-descent parser for the logic-layer language.

Grammar (no semicolon insertion, one declarator per declaration):

    Program  := Stmt*
    Stmt     := VarDecl | FunctionDecl | If | While | For | Return
              | Block | ExprStmt
    VarDecl  := ("var"|"let"|"const") Identifier ("=" AssignExpr)? ";"
    If       := "if" "(" Expr ")" Stmt ("else" Stmt)?
    While    := "while" "(" Expr ")" Stmt
    For      := "for" "(" (VarDeclNoSemi | Expr)? ";" Expr? ";" Expr? ")" Stmt
    Return   := "return" Expr? ";"
    ExprStmt := Expr ";"

Expressions by precedence: assignment (incl. arrow functions with
parenthesized parameter lists) < logical-or < logical-and < equality <
relational < additive < multiplicative < unary < call/member/index <
primary. The first error aborts the parse; callers treat an errored file
as skipped for AST analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import ParseError
from .lexer import tokenize
from .nodes import (
    ARRAY_LIT, ARROW_FUNCTION, ASSIGN, BINARY, BLOCK, BOOL_LIT, CALL, EXPR_STMT, FOR,
    FUNCTION_DECL, FUNCTION_EXPR, IDENTIFIER, IF, INDEX, MEMBER, NULL_LIT, NUMBER_LIT,
    OBJECT_LIT, PROGRAM, PROPERTY, RETURN, STRING_LIT, UNARY, VAR_DECL, WHILE, Node,
)
from .tokens import Span, Token, TokenKind

ASSIGN_OPS = frozenset(["=", "+=", "-=", "*=", "/=", "%="])
EQUALITY_OPS = frozenset(["==", "!=", "===", "!=="])
RELATIONAL_OPS = frozenset(["<", ">", "<=", ">="])
ADDITIVE_OPS = frozenset(["+", "-"])
MULTIPLICATIVE_OPS = frozenset(["*", "/", "%"])
UNARY_OPS = frozenset(["!", "-", "+"])
LVALUE_KINDS = frozenset([IDENTIFIER, MEMBER, INDEX])


@dataclass(frozen=True)
class ParseErrorInfo:
    line: int
    col: int
    message: str
    offending_lexeme: str


@dataclass(frozen=True)
class ParseOutcome:
    """Per-file result: exactly one of tree/error is present."""

    tree: Optional[Node] = None
    error: Optional[ParseErrorInfo] = None

    @property
    def ok(self) -> bool:
        return self.tree is not None


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str) -> ParseError:
        t = self.cur
        return ParseError(message, t.span.start_line, t.span.start_col, t.lexeme)

    def advance(self) -> Token:
        t = self.cur
        if t.kind is not TokenKind.EOF:
            self.pos += 1
        return t

    def at(self, kind: TokenKind, lexeme: Optional[str] = None) -> bool:
        t = self.cur
        return t.kind is kind and (lexeme is None or t.lexeme == lexeme)

    def at_punct(self, lexeme: str) -> bool:
        return self.at(TokenKind.PUNCT, lexeme)

    def at_keyword(self, lexeme: str) -> bool:
        return self.at(TokenKind.KEYWORD, lexeme)

    def eat_punct(self, lexeme: str) -> Token:
        if not self.at_punct(lexeme):
            raise self.error(f"expected '{lexeme}'")
        return self.advance()

    def eat_keyword(self, lexeme: str) -> Token:
        if not self.at_keyword(lexeme):
            raise self.error(f"expected '{lexeme}'")
        return self.advance()

    def eat_identifier(self) -> Token:
        if not self.at(TokenKind.IDENTIFIER):
            raise self.error("expected identifier")
        return self.advance()

    # -- statements ------------------------------------------------------

    def parse_program(self) -> Node:
        stmts = []
        while not self.at(TokenKind.EOF):
            stmts.append(self.parse_statement())
        if stmts:
            span = Span.cover(stmts[0].span, stmts[-1].span)
        else:
            span = Span(1, 1, 1, 1)
        return Node(PROGRAM, children=stmts, span=span)

    def parse_statement(self) -> Node:
        t = self.cur
        if t.kind is TokenKind.KEYWORD:
            if t.lexeme in ("var", "let", "const"):
                return self.parse_var_decl(require_semi=True)
            if t.lexeme == "function":
                return self.parse_function(FUNCTION_DECL)
            if t.lexeme == "if":
                return self.parse_if()
            if t.lexeme == "while":
                return self.parse_while()
            if t.lexeme == "for":
                return self.parse_for()
            if t.lexeme == "return":
                return self.parse_return()
        if self.at_punct("{"):
            return self.parse_block()
        return self.parse_expr_statement()

    def parse_var_decl(self, require_semi: bool) -> Node:
        kw = self.advance()
        name = self.eat_identifier()
        ident = Node(IDENTIFIER, value=name.lexeme, span=name.span)
        children = [ident]
        end_span = name.span
        if self.at_punct("="):
            self.advance()
            init = self.parse_assign()
            children.append(init)
            end_span = init.span
        if require_semi:
            semi = self.eat_punct(";")
            end_span = semi.span
        return Node(VAR_DECL, value=kw.lexeme, children=children, span=Span.cover(kw.span, end_span))

    def parse_function(self, kind: str) -> Node:
        fn_kw = self.eat_keyword("function")
        name = None
        if self.at(TokenKind.IDENTIFIER):
            name = self.advance().lexeme
        elif kind == FUNCTION_DECL:
            raise self.error("expected function name")
        params = self.parse_params()
        body = self.parse_block()
        return Node(
            kind,
            value=name if name is not None else "",
            children=params + [body],
            span=Span.cover(fn_kw.span, body.span),
        )

    def parse_params(self) -> list[Node]:
        self.eat_punct("(")
        params: list[Node] = []
        if not self.at_punct(")"):
            while True:
                t = self.eat_identifier()
                params.append(Node(IDENTIFIER, value=t.lexeme, span=t.span))
                if self.at_punct(","):
                    self.advance()
                else:
                    break
        self.eat_punct(")")
        return params

    def parse_block(self) -> Node:
        lb = self.eat_punct("{")
        stmts = []
        while not self.at_punct("}"):
            if self.at(TokenKind.EOF):
                raise self.error("expected '}'")
            stmts.append(self.parse_statement())
        rb = self.advance()
        return Node(BLOCK, children=stmts, span=Span.cover(lb.span, rb.span))

    def parse_if(self) -> Node:
        kw = self.eat_keyword("if")
        self.eat_punct("(")
        cond = self.parse_expression()
        self.eat_punct(")")
        then = self.parse_statement()
        children = [cond, then]
        end = then.span
        if self.at_keyword("else"):
            self.advance()
            otherwise = self.parse_statement()
            children.append(otherwise)
            end = otherwise.span
        return Node(IF, children=children, span=Span.cover(kw.span, end))

    def parse_while(self) -> Node:
        kw = self.eat_keyword("while")
        self.eat_punct("(")
        cond = self.parse_expression()
        self.eat_punct(")")
        body = self.parse_statement()
        return Node(WHILE, children=[cond, body], span=Span.cover(kw.span, body.span))

    def parse_for(self) -> Node:
        kw = self.eat_keyword("for")
        self.eat_punct("(")
        mask = ""
        children: list[Node] = []
        if not self.at_punct(";"):
            mask += "i"
            if self.cur.kind is TokenKind.KEYWORD and self.cur.lexeme in ("var", "let", "const"):
                children.append(self.parse_var_decl(require_semi=False))
            else:
                children.append(self.parse_expression())
        self.eat_punct(";")
        if not self.at_punct(";"):
            mask += "c"
            children.append(self.parse_expression())
        self.eat_punct(";")
        if not self.at_punct(")"):
            mask += "u"
            children.append(self.parse_expression())
        self.eat_punct(")")
        body = self.parse_statement()
        children.append(body)
        return Node(FOR, value=mask, children=children, span=Span.cover(kw.span, body.span))

    def parse_return(self) -> Node:
        kw = self.eat_keyword("return")
        children = []
        if not self.at_punct(";"):
            children.append(self.parse_expression())
        semi = self.eat_punct(";")
        return Node(RETURN, children=children, span=Span.cover(kw.span, semi.span))

    def parse_expr_statement(self) -> Node:
        expr = self.parse_expression()
        semi = self.eat_punct(";")
        return Node(EXPR_STMT, children=[expr], span=Span.cover(expr.span, semi.span))

    # -- expressions -----------------------------------------------------

    def parse_expression(self) -> Node:
        return self.parse_assign()

    def parse_assign(self) -> Node:
        if self.at_punct("(") and self._arrow_ahead():
            return self.parse_arrow()
        left = self.parse_or()
        if self.cur.kind is TokenKind.PUNCT and self.cur.lexeme in ASSIGN_OPS:
            if left.kind not in LVALUE_KINDS:
                raise self.error("invalid assignment target")
            op = self.advance()
            right = self.parse_assign()
            return Node(ASSIGN, value=op.lexeme, children=[left, right], span=Span.cover(left.span, right.span))
        return left

    def _arrow_ahead(self) -> bool:
        # Look past a balanced parameter list for '=>'.
        i = self.pos
        assert self.tokens[i].lexeme == "("
        depth = 0
        while i < len(self.tokens):
            t = self.tokens[i]
            if t.kind is TokenKind.EOF:
                return False
            if t.kind is TokenKind.PUNCT and t.lexeme == "(":
                depth += 1
            elif t.kind is TokenKind.PUNCT and t.lexeme == ")":
                depth -= 1
                if depth == 0:
                    nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
                    return nxt is not None and nxt.kind is TokenKind.PUNCT and nxt.lexeme == "=>"
            i += 1
        return False

    def parse_arrow(self) -> Node:
        start = self.cur.span
        params = self.parse_params()
        self.eat_punct("=>")
        if self.at_punct("{"):
            body = self.parse_block()
        else:
            body = self.parse_assign()
        return Node(ARROW_FUNCTION, value="", children=params + [body], span=Span.cover(start, body.span))

    def _binary_level(self, ops: frozenset, next_level) -> Node:
        left = next_level()
        while self.cur.kind is TokenKind.PUNCT and self.cur.lexeme in ops:
            op = self.advance()
            right = next_level()
            left = Node(BINARY, value=op.lexeme, children=[left, right], span=Span.cover(left.span, right.span))
        return left

    def parse_or(self) -> Node:
        return self._binary_level(frozenset(["||"]), self.parse_and)

    def parse_and(self) -> Node:
        return self._binary_level(frozenset(["&&"]), self.parse_equality)

    def parse_equality(self) -> Node:
        return self._binary_level(EQUALITY_OPS, self.parse_relational)

    def parse_relational(self) -> Node:
        return self._binary_level(RELATIONAL_OPS, self.parse_additive)

    def parse_additive(self) -> Node:
        return self._binary_level(ADDITIVE_OPS, self.parse_multiplicative)

    def parse_multiplicative(self) -> Node:
        return self._binary_level(MULTIPLICATIVE_OPS, self.parse_unary)

    def parse_unary(self) -> Node:
        if self.cur.kind is TokenKind.PUNCT and self.cur.lexeme in UNARY_OPS:
            op = self.advance()
            operand = self.parse_unary()
            return Node(UNARY, value=op.lexeme, children=[operand], span=Span.cover(op.span, operand.span))
        return self.parse_postfix()

    def parse_postfix(self) -> Node:
        node = self.parse_primary()
        while True:
            if self.at_punct("."):
                self.advance()
                prop = self.eat_identifier()
                ident = Node(IDENTIFIER, value=prop.lexeme, span=prop.span)
                node = Node(MEMBER, children=[node, ident], span=Span.cover(node.span, prop.span))
            elif self.at_punct("["):
                self.advance()
                index = self.parse_expression()
                rb = self.eat_punct("]")
                node = Node(INDEX, children=[node, index], span=Span.cover(node.span, rb.span))
            elif self.at_punct("("):
                self.advance()
                args = []
                if not self.at_punct(")"):
                    while True:
                        args.append(self.parse_assign())
                        if self.at_punct(","):
                            self.advance()
                        else:
                            break
                rp = self.eat_punct(")")
                node = Node(CALL, children=[node] + args, span=Span.cover(node.span, rp.span))
            else:
                return node

    def parse_primary(self) -> Node:
        t = self.cur
        if t.kind is TokenKind.NUMBER:
            self.advance()
            return Node(NUMBER_LIT, value=t.lexeme, span=t.span)
        if t.kind is TokenKind.STRING:
            self.advance()
            return Node(STRING_LIT, value=t.lexeme, span=t.span)
        if t.kind is TokenKind.IDENTIFIER:
            self.advance()
            return Node(IDENTIFIER, value=t.lexeme, span=t.span)
        if t.kind is TokenKind.KEYWORD:
            if t.lexeme in ("true", "false"):
                self.advance()
                return Node(BOOL_LIT, value=t.lexeme, span=t.span)
            if t.lexeme == "null":
                self.advance()
                return Node(NULL_LIT, value="null", span=t.span)
            if t.lexeme == "function":
                return self.parse_function(FUNCTION_EXPR)
            raise self.error(f"unexpected keyword '{t.lexeme}'")
        if t.kind is TokenKind.PUNCT:
            if t.lexeme == "(":
                self.advance()
                inner = self.parse_expression()
                self.eat_punct(")")
                return inner
            if t.lexeme == "[":
                return self.parse_array()
            if t.lexeme == "{":
                return self.parse_object()
        raise self.error(f"unexpected {'end of input' if t.kind is TokenKind.EOF else repr(t.lexeme)}")

    def parse_array(self) -> Node:
        lb = self.eat_punct("[")
        elements = []
        if not self.at_punct("]"):
            while True:
                elements.append(self.parse_assign())
                if self.at_punct(","):
                    self.advance()
                else:
                    break
        rb = self.eat_punct("]")
        return Node(ARRAY_LIT, children=elements, span=Span.cover(lb.span, rb.span))

    def parse_object(self) -> Node:
        lb = self.eat_punct("{")
        props = []
        if not self.at_punct("}"):
            while True:
                props.append(self.parse_property())
                if self.at_punct(","):
                    self.advance()
                else:
                    break
        rb = self.eat_punct("}")
        return Node(OBJECT_LIT, children=props, span=Span.cover(lb.span, rb.span))

    def parse_property(self) -> Node:
        t = self.cur
        if t.kind is TokenKind.IDENTIFIER:
            key = Node(IDENTIFIER, value=t.lexeme, span=t.span)
        elif t.kind is TokenKind.STRING:
            key = Node(STRING_LIT, value=t.lexeme, span=t.span)
        elif t.kind is TokenKind.NUMBER:
            key = Node(NUMBER_LIT, value=t.lexeme, span=t.span)
        else:
            raise self.error("expected property key")
        self.advance()
        if self.at_punct(":"):
            self.advance()
            value = self.parse_assign()
        else:
            # Shorthand {x} normalizes to x: x.
            if key.kind != IDENTIFIER:
                raise self.error("expected ':'")
            value = Node(IDENTIFIER, value=key.value, span=key.span)
        return Node(PROPERTY, children=[key, value], span=Span.cover(key.span, value.span))


def parse(source: str) -> Node:
    """Parse to a Program node; raises ParseError on the first error."""
    return _Parser(tokenize(source)).parse_program()


def try_parse(source: str) -> ParseOutcome:
    """Parse catching syntax errors into data, one outcome per file."""
    try:
        return ParseOutcome(tree=parse(source))
    except ParseError as e:
        return ParseOutcome(error=ParseErrorInfo(e.line, e.col, e.message, e.offending_lexeme))
