import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debugtrace.astdiff import (
    EditClass, EditScript, Insert, Relabel, apply_script, classify_edit,
    detect_revert, diff_file_maps, line_diff, tree_edit_distance,
)
from debugtrace.errors import InconsistentScript
from debugtrace.jsparse import parse, print_tree, snapshot_structural_hash
from debugtrace.jsparse.nodes import Node, structurally_equal
from debugtrace.model import LineDelta, Snapshot
from treegen import mutated_pair, random_tree, shortest_script_at_least


class TestDistanceExamples:
    def test_identical_trees(self):
        t = parse("function f(a) { return a + 1; }")
        diff = tree_edit_distance(t, t)
        assert diff.distance == 0
        assert diff.script.operations == ()
        assert not diff.approximate

    def test_literal_relabel_is_minimal(self):
        a, b = parse("var x = 1;"), parse("var x = 2;")
        diff = tree_edit_distance(a, b)
        assert diff.distance == 1
        (op,) = diff.script.operations
        assert isinstance(op, Relabel)
        assert (op.old_kind, op.old_value, op.new_value) == ("NumberLit", "1", "2")
        # exhaustive search: no 0-op script exists (trees differ)
        assert shortest_script_at_least(a, b, 1)

    def test_argument_insert_is_minimal(self):
        a, b = parse("f(1);"), parse("f(1, 2);")
        diff = tree_edit_distance(a, b)
        assert diff.distance == 1
        (op,) = diff.script.operations
        assert isinstance(op, Insert)
        assert (op.kind, op.value) == ("NumberLit", "2")
        assert op.position == 2  # callee, first argument, then the new one
        assert shortest_script_at_least(a, b, 1)


class TestOracleEquivalence:
    def test_exact_matches_exhaustive_search(self):
        rng = random.Random(20240811)
        for trial in range(150):
            a, b = mutated_pair(rng, 10)
            diff = tree_edit_distance(a, b)
            assert structurally_equal(apply_script(a, diff.script), b), trial
            assert diff.script.cost == diff.distance
            assert shortest_script_at_least(a, b, diff.distance), (trial, diff.distance)

    def test_metric_axioms(self):
        rng = random.Random(7)
        trees = [random_tree(rng, 12) for _ in range(30)]
        for t in trees:
            assert tree_edit_distance(t, t).distance == 0
        for a, b in itertools.combinations(trees[:12], 2):
            assert tree_edit_distance(a, b).distance == tree_edit_distance(b, a).distance
        for a, b, c in itertools.combinations(trees[:9], 3):
            dab = tree_edit_distance(a, b).distance
            dbc = tree_edit_distance(b, c).distance
            dac = tree_edit_distance(a, c).distance
            assert dac <= dab + dbc

    def test_script_soundness_on_real_code(self):
        pairs = [
            ("var x = 1;", "var y = 2;"),
            ("f(a);", "if (a) { f(a); } else { g(); }"),
            ("function f() { return 1; }", "function f(x) { while (x) { x = x - 1; } return x; }"),
            ("wx.request({ url: u });", "wx.request({ url: u, data: d });"),
            ("var a = [1, 2, 3];", "var a = [3];"),
        ]
        for src, dst in pairs:
            a, b = parse(src), parse(dst)
            diff = tree_edit_distance(a, b)
            assert structurally_equal(apply_script(a, diff.script), b), (src, dst)


class TestApproximateMode:
    def test_greedy_bounds_exact_from_above(self):
        rng = random.Random(3)
        for _ in range(80):
            a, b = mutated_pair(rng, 10)
            exact = tree_edit_distance(a, b)
            forced_greedy = tree_edit_distance(a, b, exact_limit=0)
            assert forced_greedy.approximate
            assert not exact.approximate
            assert forced_greedy.distance >= exact.distance
            assert structurally_equal(apply_script(a, forced_greedy.script), b)

    def test_large_trees_flagged_approximate(self):
        stmts = " ".join(f"var v{i} = {i};" for i in range(600))
        a = parse(stmts)
        b = parse(stmts + " var extra = 1;")
        diff = tree_edit_distance(a, b)
        assert diff.approximate
        assert diff.distance >= 1
        assert structurally_equal(apply_script(a, diff.script), b)


class TestClassify:
    def test_literal_only(self):
        a, b = parse("var x = 1;"), parse("var x = 2;")
        diff = tree_edit_distance(a, b)
        c = classify_edit(diff.script, a, b)
        assert c.counts == {EditClass.LITERAL_CHANGE: 1}

    def test_whole_if_insert(self):
        # A one-op If insertion adopting the existing statement run.
        a = Node("Program", children=[Node("ExprStmt", children=[Node("Identifier", value="x")])])
        b = Node(
            "Program",
            children=[Node("If", children=[Node("ExprStmt", children=[Node("Identifier", value="x")])])],
        )
        # Wrapped source postorder: Identifier=1, ExprStmt=2, Program=3.
        script = EditScript(
            operations=(
                Insert(kind="If", value=None, parent_src=3, parent_ins=None, position=0, adopt_count=1, target_node=3),
            )
        )
        assert structurally_equal(apply_script(a, script), b)
        c = classify_edit(script, a, b)
        assert c.counts == {EditClass.STRUCTURAL_CHANGE: 1}

    def test_callee_rename(self):
        a, b = parse("x.getA();"), parse("x.getB();")
        diff = tree_edit_distance(a, b)
        c = classify_edit(diff.script, a, b)
        assert c.counts == {EditClass.API_CALLEE_CHANGE: 1}

    def test_identifier_rename_outside_callee(self):
        a, b = parse("var total = count;"), parse("var total = amount;")
        diff = tree_edit_distance(a, b)
        c = classify_edit(diff.script, a, b)
        assert c.counts == {EditClass.IDENTIFIER_RENAME: 1}

    def test_call_argument_change(self):
        a, b = parse("f(1);"), parse("f(2);")
        diff = tree_edit_distance(a, b)
        c = classify_edit(diff.script, a, b)
        assert c.counts == {EditClass.CALL_ARG_CHANGE: 1}

    def test_structural_statement_delete(self):
        a = parse("if (x) { f(); } g();")
        b = parse("g();")
        diff = tree_edit_distance(a, b)
        c = classify_edit(diff.script, a, b)
        assert c.count(EditClass.STRUCTURAL_CHANGE) >= 1

    def test_empty_iff_zero_distance(self):
        rng = random.Random(11)
        for _ in range(40):
            a, b = mutated_pair(rng, 8)
            diff = tree_edit_distance(a, b)
            c = classify_edit(diff.script, a, b)
            assert (len(c.classes) == 0) == (diff.distance == 0)

    def test_inconsistent_script_rejected(self):
        a, b = parse("var x = 1;"), parse("var x = 2;")
        wrong = EditScript(operations=())
        with pytest.raises(InconsistentScript):
            classify_edit(wrong, a, b)


class TestDetectRevert:
    def test_direct_lookup(self):
        assert detect_revert(["h1", "h2", "h3"], "h2") == 1

    def test_absent(self):
        assert detect_revert(["h1"], "h9") is None

    def test_most_recent_match_wins(self):
        assert detect_revert(["h", "x", "h"], "h") == 2

    def test_whitespace_only_edit_hashes_equal(self):
        a = Snapshot.create({"a.js": b"var x = 1;\nf(x);\n"})
        b = Snapshot.create({"a.js": b"var  x =  1;\n\n\nf( x );"})
        ha, hb = snapshot_structural_hash(a), snapshot_structural_hash(b)
        assert ha == hb
        assert detect_revert([ha], hb) == 0


def brute_force_lcs_length(a: list, b: list) -> int:
    best = 0
    for mask in range(1 << len(a)):
        sub = [a[i] for i in range(len(a)) if mask >> i & 1]
        it = iter(b)
        if all(x in it for x in sub):
            best = max(best, len(sub))
    return best


class TestLineDiff:
    def test_identity(self):
        assert line_diff(b"a\nb", b"a\nb") == LineDelta(0, 0, 0)

    def test_appended_line(self):
        assert line_diff(b"a\nb", b"a\nb\nc") == LineDelta(added=1, removed=0, changed=0)

    def test_changed_middle_line(self):
        assert line_diff(b"a\nb\nc", b"a\nx\nc") == LineDelta(added=0, removed=0, changed=1)

    def test_counts_consistent_with_brute_force_lcs(self):
        rng = random.Random(5)
        lines = [b"alpha", b"beta", b"gamma", b"delta"]
        for _ in range(120):
            a = [rng.choice(lines) for _ in range(rng.randint(0, 6))]
            b = [rng.choice(lines) for _ in range(rng.randint(0, 6))]
            delta = line_diff(b"\n".join(a), b"\n".join(b))
            lcs = brute_force_lcs_length(a, b)
            assert delta.removed + delta.changed == len(a) - lcs
            assert delta.added + delta.changed == len(b) - lcs

    @given(
        st.lists(st.sampled_from([b"a", b"b", b"c"]), max_size=7),
        st.lists(st.sampled_from([b"a", b"b", b"c"]), max_size=7),
    )
    @settings(max_examples=150, deadline=None)
    def test_total_edit_symmetry(self, a, b):
        # Hunk pairing may differ between directions, but the LCS identities
        # force the edited-line totals to mirror.
        fwd = line_diff(b"\n".join(a), b"\n".join(b))
        rev = line_diff(b"\n".join(b), b"\n".join(a))
        assert fwd.removed + fwd.changed == rev.added + rev.changed
        assert fwd.added + fwd.changed == rev.removed + rev.changed

    def test_file_map_union(self):
        deltas = diff_file_maps({"a.js": b"x", "b.js": b"1\n2"}, {"b.js": b"1\n2\n3", "c.js": b"new"})
        assert deltas["a.js"].removed == 1
        assert deltas["b.js"].added == 1
        assert deltas["c.js"].added == 1
