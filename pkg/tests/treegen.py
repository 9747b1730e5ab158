"""Random ordered trees and an exhaustive edit-search oracle for tests.

The oracle proves lower bounds by breadth-first search over edit scripts:
states are forests under a fixed virtual container, ops are the unit-cost
relabel/delete/insert moves. Relabels and inserts draw labels only from
the target tree, which loses no generality: an optimal mapping-based
script never introduces a label absent from the target, so the
restricted-move shortest path equals the true edit distance. Pruning uses
the admissible label-multiset bound (one op fixes at most one surplus and
one deficit label).
"""

from __future__ import annotations

import random
from collections import Counter

from debugtrace.jsparse.nodes import Node

ALPHABET = ["A", "B", "C", "D"]


def random_tree(rng: random.Random, max_nodes: int, alphabet=None) -> Node:
    labels = alphabet or ALPHABET
    count = rng.randint(1, max_nodes)
    root = Node(kind=rng.choice(labels))
    nodes = [root]
    for _ in range(count - 1):
        parent = rng.choice(nodes)
        child = Node(kind=rng.choice(labels))
        parent.children.insert(rng.randint(0, len(parent.children)), child)
        nodes.append(child)
    return root


def clone(node: Node) -> Node:
    return Node(kind=node.kind, value=node.value, children=[clone(c) for c in node.children])


def mutate(rng: random.Random, root: Node, alphabet=None) -> Node:
    """One random relabel/delete/insert, returned as a new tree."""
    labels = alphabet or ALPHABET
    root = clone(root)
    nodes = list(root.walk())
    op = rng.choice(["relabel", "delete", "insert"])
    if op == "relabel":
        target = rng.choice(nodes)
        choices = [l for l in labels if l != target.kind]
        target.kind = rng.choice(choices) if choices else target.kind
        return root
    if op == "delete":
        candidates = [n for n in nodes if n is not root] or (
            [root] if len(root.children) == 1 else []
        )
        if not candidates:
            return root
        victim = rng.choice(candidates)
        if victim is root:
            return root.children[0]
        parent = next(n for n in nodes if victim in n.children)
        at = parent.children.index(victim)
        parent.children[at : at + 1] = victim.children
        return root
    # insert
    new = Node(kind=rng.choice(labels))
    if rng.random() < 0.15:
        new.children = [root]
        return new
    parent = rng.choice(nodes)
    start = rng.randint(0, len(parent.children))
    count = rng.randint(0, len(parent.children) - start)
    new.children = parent.children[start : start + count]
    parent.children[start : start + count] = [new]
    return root


def mutated_pair(rng: random.Random, max_nodes: int, max_ops: int = 3) -> tuple[Node, Node]:
    a = random_tree(rng, max_nodes)
    b = clone(a)
    for _ in range(rng.randint(0, max_ops)):
        b = mutate(rng, b)
    return a, b


# -- exhaustive search oracle ----------------------------------------------

Forest = tuple  # tuple of encoded trees; encoded tree = (label, children-tuple)


def encode(node: Node) -> tuple:
    # Full label: kind and value together, matching the differ's unit.
    return ((node.kind, node.value), tuple(encode(c) for c in node.children))


def _forest_labels(forest: Forest) -> Counter:
    counts: Counter = Counter()

    def visit(tree):
        counts[tree[0]] += 1
        for c in tree[1]:
            visit(c)

    for tree in forest:
        visit(tree)
    return counts


def _multiset_lower_bound(state: Forest, goal_counts: Counter) -> int:
    counts = _forest_labels(state)
    surplus = sum((counts - goal_counts).values())
    deficit = sum((goal_counts - counts).values())
    return max(surplus, deficit)


def _neighbors(forest: Forest, labels: list[str]):
    # Positions address nodes by path; regenerate encoded forests per op.
    def replace_at(trees: tuple, index: int, new_subtrees: tuple) -> tuple:
        return trees[:index] + new_subtrees + trees[index + 1 :]

    def walk(trees: tuple, rebuild):
        """Yield (tree, rebuild_fn) for every node; rebuild(new_subtrees)
        replaces that node with zero or more subtrees."""
        for i, tree in enumerate(trees):
            yield tree, (lambda new, i=i: rebuild(replace_at(trees, i, new)))
            label, children = tree

            def rebuild_children(new_children, i=i, label=label):
                return rebuild(replace_at(trees, i, ((label, new_children),)))

            yield from walk(children, rebuild_children)

    results = []
    # relabel and delete
    for (label, children), rebuild in walk(forest, lambda t: t):
        for new_label in labels:
            if new_label != label:
                results.append(rebuild(((new_label, children),)))
        results.append(rebuild(children))  # delete: splice children up

    # insert: under the container or under any node
    def insert_under(children: tuple, make_parent):
        for start in range(len(children) + 1):
            for count in range(0, len(children) - start + 1):
                adopted = children[start : start + count]
                rest_before = children[:start]
                rest_after = children[start + count :]
                for label in labels:
                    results.append(make_parent(rest_before + ((label, adopted),) + rest_after))

    insert_under(forest, lambda new: new)
    for (label, children), rebuild in walk(forest, lambda t: t):
        insert_under(children, lambda new, label=label, rebuild=rebuild: rebuild(((label, new),)))
    return results


def shortest_script_at_least(a: Node, b: Node, claimed: int) -> bool:
    """True when no edit script of length < claimed turns a into b."""
    start: Forest = (encode(a),)
    goal: Forest = (encode(b),)
    if claimed <= 0:
        return True
    if start == goal:
        return False  # distance 0 yet claimed > 0
    goal_counts = _forest_labels(goal)
    labels = sorted(goal_counts)
    budget = claimed - 1
    frontier = {start}
    seen = {start}
    for depth in range(1, budget + 1):
        next_frontier = set()
        for state in frontier:
            for neighbor in _neighbors(state, labels):
                if neighbor == goal:
                    return False
                if neighbor in seen:
                    continue
                if depth + _multiset_lower_bound(neighbor, goal_counts) > budget:
                    continue
                seen.add(neighbor)
                next_frontier.add(neighbor)
        frontier = next_frontier
        if not frontier:
            break
    return True
