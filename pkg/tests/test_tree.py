"""Storage tree: node types, actions, invariants."""
import pytest
from hypothesis import given, strategies as st

from twsda.tree import (
    DOWN_L,
    DOWN_R,
    POP,
    ROOT_LABEL,
    STAY,
    UP,
    GammaTree,
    NodeType,
    PathAbsent,
    WellFormednessViolation,
    action_is_legal,
    apply_action,
    node_type,
    push,
)


def test_fresh_tree_is_single_root():
    tree = GammaTree()
    assert tree.size == 1
    assert tree.as_mapping() == {"": ROOT_LABEL}
    assert node_type(tree, "") == NodeType("-", "-", "-")


def test_node_type_of_fresh_left_leaf():
    tree = GammaTree()
    tree, ptr = apply_action(tree, "", push("x", "l"))
    assert ptr == "l"
    assert node_type(tree, "l") == ("l", "-", "-")
    assert node_type(tree, "") == ("-", "+", "-")


def complete_tree(level: int) -> GammaTree:
    """Build a complete binary tree of the given level by pushes only."""
    tree = GammaTree()

    def grow(path: str, remaining: int):
        if remaining == 0:
            return
        for side in ("l", "r"):
            _, child = apply_action(tree, path, push("x", side))
            grow(child, remaining - 1)
            _, back = apply_action(tree, child, UP)
            assert back == path

    grow("", level - 1)
    return tree


def test_node_type_complete_level_three():
    tree = complete_tree(3)
    assert tree.size == 7
    assert node_type(tree, "") == ("-", "+", "+")
    assert node_type(tree, "lr") == ("r", "-", "-")


def test_stay_changes_nothing():
    tree = GammaTree()
    before = tree.as_mapping()
    tree, ptr = apply_action(tree, "", STAY)
    assert ptr == "" and tree.as_mapping() == before


def test_push_appends_and_descends():
    tree = GammaTree()
    tree, ptr = apply_action(tree, "", push("x", "r"))
    assert ptr == "r"
    assert sorted(tree.as_mapping()) == ["", "r"]


def test_pop_at_root_is_a_violation():
    tree = GammaTree()
    with pytest.raises(WellFormednessViolation):
        apply_action(tree, "", POP)


def test_pop_requires_leaf():
    tree = complete_tree(2)
    with pytest.raises(WellFormednessViolation):
        apply_action(tree, "", POP)
    tree, ptr = apply_action(tree, "l", POP)
    assert ptr == "" and tree.size == 2


@pytest.mark.parametrize(
    "action", [UP, DOWN_L, DOWN_R, POP, push("x", "l"), push("x", "r")]
)
def test_action_legality_matches_apply(action):
    for builder in (GammaTree, lambda: complete_tree(2)):
        tree = builder()
        for path in tree.paths():
            node = tree.node_at(path)
            legal = action_is_legal(node, action)
            try:
                apply_action(tree.clone(), path, action)
                assert legal
            except WellFormednessViolation:
                assert not legal


def test_push_existing_side_is_a_violation():
    tree = complete_tree(2)
    with pytest.raises(WellFormednessViolation):
        apply_action(tree, "", push("x", "l"))


def test_path_absent():
    tree = GammaTree()
    with pytest.raises(PathAbsent):
        tree.node_at("lr")


def test_snapshot_round_trip():
    tree = complete_tree(3)
    text = tree.snapshot()
    again = GammaTree.from_snapshot(text)
    assert again.as_mapping() == tree.as_mapping()
    assert again.snapshot() == text


def test_snapshot_of_root():
    assert GammaTree().snapshot() == f"({ROOT_LABEL} . .)"


def test_clone_is_independent():
    tree = complete_tree(2)
    twin = tree.clone()
    apply_action(tree, "l", push("y", "l"))
    assert twin.size == 3 and tree.size == 4


@given(st.lists(st.sampled_from(["u", "s", "dl", "dr", "pop", "pl", "pr"]), max_size=60))
def test_random_walk_keeps_invariants(moves):
    """Legal actions keep the tree prefix-closed with the root in place;
    push and pop change the size by exactly one."""
    tree = GammaTree()
    path = ""
    actions = {
        "u": UP, "s": STAY, "dl": DOWN_L, "dr": DOWN_R,
        "pop": POP, "pl": push("x", "l"), "pr": push("x", "r"),
    }
    for code in moves:
        action = actions[code]
        node = tree.node_at(path)
        size = tree.size
        if not action_is_legal(node, action):
            with pytest.raises(WellFormednessViolation):
                apply_action(tree, path, action)
            continue
        tree, path = apply_action(tree, path, action)
        tree.check_invariants()
        assert tree.has(path)
        expected = size + (1 if action[0] == "push" else -1 if action[0] == "pop" else 0)
        assert tree.size == expected


@pytest.mark.parametrize(
    "bad",
    [
        "",
        ".",
        "(x . .)",  # root must carry the root label
        "(⊥ . . .)",
        "(⊥ .)",
        "(⊥ . .",
        "(⊥ . .) junk",
        "(⊥ . .) (⊥ . .)",
        "(⊥ (x . . .) .)",
    ],
)
def test_snapshot_rejects_malformed(bad):
    with pytest.raises(ValueError):
        GammaTree.from_snapshot(bad)


def test_deep_tree_clone_and_snapshot():
    # a 1500-deep spine exceeds the default recursion limit if any of the
    # tree walks recurse
    tree = GammaTree()
    path = ""
    for _ in range(1500):
        tree, path = apply_action(tree, path, push("x", "l"))
    twin = tree.clone()
    assert twin.size == tree.size == 1501
    text = tree.snapshot()
    again = GammaTree.from_snapshot(text)
    assert again.size == 1501 and again.snapshot() == text
