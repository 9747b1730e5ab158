import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debugtrace.errors import BenchError, LexError, ParseError, TagError
from debugtrace.jsparse import (
    bench_all, bench_parse, mean_ms, parse, parse_snapshot, parse_tags, print_tree,
    snapshot_structural_hash, structural_hash, structurally_equal, tokenize, try_parse,
    try_parse_tags,
)
from debugtrace.jsparse.tokens import TokenKind
from debugtrace.model import Snapshot


class TestTokenize:
    def test_empty_input(self):
        tokens = tokenize("")
        assert [t.kind for t in tokens] == [TokenKind.EOF]

    def test_var_decl_tokens(self):
        kinds = [(t.kind, t.lexeme) for t in tokenize("var x = 1;")]
        assert kinds == [
            (TokenKind.KEYWORD, "var"),
            (TokenKind.IDENTIFIER, "x"),
            (TokenKind.PUNCT, "="),
            (TokenKind.NUMBER, "1"),
            (TokenKind.PUNCT, ";"),
            (TokenKind.EOF, ""),
        ]

    def test_unterminated_string(self):
        with pytest.raises(LexError) as exc:
            tokenize('"abc')
        assert exc.value.line == 1

    def test_unterminated_block_comment(self):
        with pytest.raises(LexError):
            tokenize("var x; /* never closed")

    def test_comments_and_whitespace_skipped(self):
        tokens = tokenize("var a; // c1\n/* c2 */ var b;")
        lexemes = [t.lexeme for t in tokens if t.kind is not TokenKind.EOF]
        assert lexemes == ["var", "a", ";", "var", "b", ";"]

    def test_multichar_puncts_longest_match(self):
        lexemes = [t.lexeme for t in tokenize("a === b !== c => d <= e") if t.lexeme]
        assert "===" in lexemes and "!==" in lexemes and "=>" in lexemes and "<=" in lexemes

    def test_span_coverage_reconstructs_source(self, corpus_sources):
        for source in corpus_sources:
            tokens = tokenize(source)
            rebuilt = []
            pos = 0
            for token in tokens:
                assert token.start >= pos
                trivia = source[pos : token.start]
                assert trivia.strip(" \t\r\n") == "" or "//" in trivia or "/*" in trivia
                rebuilt.append(trivia)
                assert source[token.start : token.end] == token.lexeme
                rebuilt.append(token.lexeme)
                pos = token.end
            rebuilt.append(source[pos:])
            assert "".join(rebuilt) == source

    @given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), max_size=40))
    @settings(max_examples=200, deadline=None)
    def test_tokenizer_never_hangs_and_positions_valid(self, text):
        try:
            tokens = tokenize(text)
        except LexError as e:
            assert e.line >= 1 and e.col >= 1
            return
        assert tokens[-1].kind is TokenKind.EOF


class TestParse:
    def test_var_decl(self):
        tree = parse("var x = 1;")
        assert tree.kind == "Program"
        decl = tree.children[0]
        assert decl.kind == "VarDecl" and decl.value == "var"
        assert decl.children[0].kind == "Identifier" and decl.children[0].value == "x"
        assert decl.children[1].kind == "NumberLit" and decl.children[1].value == "1"

    def test_function_decl(self):
        tree = parse("function f(a){return a+1;}")
        fn = tree.children[0]
        assert fn.kind == "FunctionDecl" and fn.value == "f"
        params, body = fn.children[:-1], fn.children[-1]
        assert [p.value for p in params] == ["a"]
        assert body.kind == "Block"
        ret = body.children[0]
        assert ret.kind == "Return"
        add = ret.children[0]
        assert add.kind == "Binary" and add.value == "+"
        assert add.children[0].value == "a" and add.children[1].value == "1"

    def test_unclosed_paren_error_at_eof(self):
        outcome = try_parse("if (x")
        assert outcome.error is not None
        assert outcome.error.line == 1 and outcome.error.col == 6
        assert "')'" in outcome.error.message

    def test_first_error_wins(self):
        with pytest.raises(ParseError) as exc:
            parse("var = 1;\nvar also broken")
        assert exc.value.line == 1

    def test_spans_nest(self, corpus_sources):
        def check(node):
            for child in node.children:
                assert child.span is not None
                assert node.span.contains(child.span), (node.kind, child.kind)
                check(child)

        for source in corpus_sources:
            check(parse(source))

    def test_program_children_are_statements(self, corpus_sources):
        from debugtrace.jsparse.nodes import STATEMENT_KINDS

        for source in corpus_sources:
            for child in parse(source).children:
                assert child.kind in STATEMENT_KINDS

    def test_parse_determinism(self, corpus_sources):
        for source in corpus_sources:
            assert structural_hash(parse(source)) == structural_hash(parse(source))

    def test_unsupported_constructs_error(self):
        for source in ["class A {}", "var f = async () => 1;", "x++;", "var s = `tpl`;"]:
            assert try_parse(source).error is not None

    def test_error_locality_under_token_deletion(self, corpus_sources):
        """When deleting a structural token breaks the parse, the error sits
        at or after the deletion site. (A deletion can legally still parse,
        e.g. removing the ';' before a parenthesized expression merges two
        statements into one call; such tokens were not required.)"""
        rng = random.Random(99)
        structural = {"(", ")", "{", "}", "[", "]", ";", ","}
        errored = attempted = 0
        for source in corpus_sources[:30]:
            tokens = tokenize(source)
            victims = [t for t in tokens if t.lexeme in structural]
            for victim in rng.sample(victims, min(4, len(victims))):
                mutated = source[: victim.start] + source[victim.end :]
                attempted += 1
                try:
                    parse(mutated)
                except ParseError as exc:
                    assert (exc.line, exc.col) >= (victim.span.start_line, 1)
                    errored += 1
        assert errored > attempted * 0.8


class TestPrint:
    def test_canonical_var_decl(self):
        assert print_tree(parse("var   x=1 ;")) == "var x = 1;\n"

    def test_empty_program(self):
        assert print_tree(parse("")) == ""

    def test_roundtrip_corpus(self, corpus_sources):
        for source in corpus_sources:
            first = parse(source)
            printed = print_tree(first)
            again = parse(printed)
            assert structurally_equal(first, again)
            # printing is a fixed point after one pass
            assert print_tree(again) == printed

    def test_no_trailing_whitespace(self, corpus_sources):
        for source in corpus_sources:
            for line in print_tree(parse(source)).splitlines():
                assert line == line.rstrip()

    def test_statement_level_object_parenthesized(self):
        source = "({ a: 1 });"
        tree = parse(source)
        assert structurally_equal(tree, parse(print_tree(tree)))

    def test_operator_precedence_preserved(self):
        for source in [
            "x = 1 - (2 - 3);",
            "x = (1 + 2) * 3;",
            "x = -(a + b);",
            "x = a - -b;",
            "x = (a = 1) + 2;",
            "f((x) => x, 2);",
        ]:
            tree = parse(source)
            assert structurally_equal(tree, parse(print_tree(tree))), source


class TestParseSnapshot:
    def test_mixed_snapshot(self):
        snap = Snapshot.create(
            {
                "good.js": b"var x = 1;",
                "also_good.js": b"f();",
                "broken.js": b"var = ;",
                "view.wxml": b"<view><text>hi</text></view>",
                "style.wxss": b"page { color: red; }",
            }
        )
        logic, view = parse_snapshot(snap)
        assert logic["good.js"].ok and logic["also_good.js"].ok
        assert not logic["broken.js"].ok and logic["broken.js"].error is not None
        assert view["view.wxml"].ok
        root = view["view.wxml"].root
        assert root.tag == "view" and root.children[0].tag == "text"
        assert root.children[0].children[0].text == "hi"

    def test_no_logic_files(self):
        snap = Snapshot.create({"style.wxss": b"x"})
        logic, view = parse_snapshot(snap)
        assert logic == {} and view == {}

    def test_structural_hash_ignores_formatting(self):
        a = Snapshot.create({"a.js": b"var x = 1;"})
        b = Snapshot.create({"a.js": b"var    x   =\n1;"})
        c = Snapshot.create({"a.js": b"var x = 2;"})
        assert snapshot_structural_hash(a) == snapshot_structural_hash(b)
        assert snapshot_structural_hash(a) != snapshot_structural_hash(c)

    def test_structural_hash_none_when_broken(self):
        snap = Snapshot.create({"a.js": b"var = broken"})
        assert snapshot_structural_hash(snap) is None


class TestTagTree:
    def test_attributes_and_self_closing(self):
        root = parse_tags('<view class="row" hidden><input disabled/></view>')
        assert root.attributes == [("class", "row"), ("hidden", "")]
        assert root.children[0].tag == "input"

    def test_mismatched_close(self):
        assert try_parse_tags("<view></text>").error is not None

    def test_duplicate_attribute(self):
        with pytest.raises(TagError):
            parse_tags('<view a="1" a="2"/>')

    def test_comment_skipped(self):
        root = parse_tags("<view><!-- note --><text>t</text></view>")
        assert len(root.children) == 1


class TestBench:
    def test_mean_of_single_frame(self, corpus_sources):
        row = bench_parse(corpus_sources[:3], frames=1)
        assert row.average_ms == row.frame_ms[0]

    def test_mean_matches_recomputation(self, corpus_sources):
        row = bench_parse(corpus_sources[:5], frames=5)
        assert len(row.frame_ms) == 5
        recomputed = sum(row.frame_ms) / 5
        assert abs(row.average_ms - recomputed) < 0.1

    def test_published_row_arithmetic(self):
        # Averaging routine over an externally published row of frame values.
        assert round(mean_ms([182.1, 228.5, 221.7, 186.2, 239.8]), 2) == 211.66

    def test_dirty_corpus_rejected(self):
        with pytest.raises(BenchError):
            bench_parse(["var x = 1;", "var broken = ;"], frames=1)

    def test_empty_corpus_rejected(self):
        with pytest.raises(BenchError):
            bench_parse([], frames=1)

    def test_all_configurations_report(self, corpus_sources):
        rows = bench_all(corpus_sources[:3], frames=2)
        assert [r.name for r in rows] == ["tokenize", "parse", "parse-print"]
        for row in rows:
            assert len(row.frame_ms) == 2
