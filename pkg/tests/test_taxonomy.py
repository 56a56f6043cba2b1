"""Tree loading, subtree partitions and their statistics."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from taxoqa import fixtures
from taxoqa.errors import (
    CycleDetected,
    DanglingParent,
    DuplicateId,
    EmptySource,
    LevelOutOfRange,
)
from taxoqa.taxonomy import (
    find_concept,
    load_taxonomy,
    partition_stats,
    subtrees_at_level,
)

from casegen import brute_force_subtree_sizes, random_tree_entries


def test_single_entry_gets_synthetic_root() -> None:
    tree = load_taxonomy([("a", "Alpha", None)])
    assert len(tree) == 2
    assert tree.height == 2
    assert tree.root.name == "eurovoc"
    assert tree.node("a").name == "alpha"
    assert tree.node("a").level == 2


def test_chain_levels() -> None:
    tree = load_taxonomy([("a", "a", None), ("b", "b", "a"), ("c", "c", "b")])
    assert [tree.node(x).level for x in "abc"] == [2, 3, 4]
    assert tree.height == 4


def test_child_order_follows_source_order() -> None:
    entries = [("b", "b", None), ("a", "a", None), ("a1", "a1", "a"), ("a0", "a0", "a")]
    tree = load_taxonomy(entries)
    assert tree.children(tree.root_id) == ("b", "a")
    assert tree.children("a") == ("a1", "a0")
    assert list(tree.iter_preorder()) == [tree.root_id, "b", "a", "a1", "a0"]


def test_subtrees_at_level_two() -> None:
    entries = [
        ("A", "a", None),
        ("a1", "a1", "A"),
        ("a2", "a2", "A"),
        ("B", "b", None),
    ]
    tree = load_taxonomy(entries)
    subs = subtrees_at_level(tree, 2)
    assert [(s.parent_id, s.member_ids) for s in subs] == [
        ("A", ("A", "a1", "a2")),
        ("B", ("B",)),
    ]
    whole = subtrees_at_level(tree, 1)
    assert len(whole) == 1
    assert whole[0].node_count == len(tree)
    assert whole[0].member_ids[0] == tree.root_id


def test_level_out_of_range() -> None:
    tree = load_taxonomy([("a", "a", None)])
    with pytest.raises(LevelOutOfRange):
        subtrees_at_level(tree, 0)
    with pytest.raises(LevelOutOfRange):
        subtrees_at_level(tree, 3)


def test_duplicate_id_rejected() -> None:
    with pytest.raises(DuplicateId):
        load_taxonomy([("a", "a", None), ("a", "b", None)])


def test_root_collision_rejected() -> None:
    with pytest.raises(DuplicateId):
        load_taxonomy([("__eurovoc__", "x", None)])


def test_dangling_parent_rejected() -> None:
    with pytest.raises(DanglingParent):
        load_taxonomy([("a", "a", "ghost")])


def test_cycle_rejected() -> None:
    with pytest.raises(CycleDetected):
        load_taxonomy([("a", "a", "b"), ("b", "b", "a")])


def test_empty_source_rejected() -> None:
    with pytest.raises(EmptySource):
        load_taxonomy([])


def test_names_lowercased_and_find_concept() -> None:
    tree = load_taxonomy(fixtures.MINI_TAXONOMY)
    assert find_concept(tree, "White Sugar") == ["4359"]
    assert tree.node("4359").parent_id == "4358"
    assert tree.node("4358").name == "sugar"
    assert find_concept(tree, "no such thing") == []


def test_find_concept_returns_all_duplicates_in_preorder() -> None:
    entries = [("x", "same", None), ("y", "other", None), ("z", "same", "y")]
    tree = load_taxonomy(entries)
    assert find_concept(tree, "same") == ["x", "z"]


def test_round_trip_preserves_structure() -> None:
    rng = random.Random(11)
    for _ in range(25):
        entries = random_tree_entries(rng, max_nodes=60)
        tree = load_taxonomy(entries)
        again = load_taxonomy(tree.to_entries())
        assert list(tree.iter_preorder()) == list(again.iter_preorder())
        for nid in tree.iter_preorder():
            a, b = tree.node(nid), again.node(nid)
            assert (a.name, a.parent_id, a.level) == (b.name, b.parent_id, b.level)


def test_load_is_deterministic() -> None:
    entries = random_tree_entries(random.Random(3), max_nodes=100)
    one = load_taxonomy(entries)
    two = load_taxonomy(entries)
    assert list(one.iter_preorder()) == list(two.iter_preorder())


def test_partition_sizes_match_brute_force_on_random_trees() -> None:
    rng = random.Random(29)
    for _ in range(30):
        entries = random_tree_entries(rng, max_nodes=80)
        tree = load_taxonomy(entries)
        for level in range(1, tree.height + 1):
            sizes = sorted(s.node_count for s in subtrees_at_level(tree, level))
            assert sizes == brute_force_subtree_sizes(entries, level)


def test_partition_sum_covers_deeper_nodes() -> None:
    # Sizes at level L must add up to the number of nodes at level >= L.
    rng = random.Random(31)
    for _ in range(20):
        entries = random_tree_entries(rng, max_nodes=80)
        tree = load_taxonomy(entries)
        for level in range(1, tree.height + 1):
            total = sum(s.node_count for s in subtrees_at_level(tree, level))
            deeper = sum(
                1 for nid in tree.iter_preorder() if tree.node(nid).level >= level
            )
            assert total == deeper


def test_partition_stats_display_rounding() -> None:
    tree = load_taxonomy(
        [("a", "a", None), ("a1", "x", "a"), ("a2", "x", "a"), ("b", "b", None)]
    )
    stats = partition_stats(tree, 2)
    assert stats.subtree_count == 2
    assert stats.mean_nodes == Fraction(4, 2)
    assert stats.mean_nodes_display == 2
    assert (stats.max_nodes, stats.min_nodes) == (3, 1)


def test_synthetic_eurovoc_matches_real_thesaurus_shape() -> None:
    tree = load_taxonomy(fixtures.synthetic_eurovoc_entries())
    assert len(tree) == 8274
    assert tree.height == 8
    expected = {
        1: (1, 8274, 8274, 8274),
        2: (21, 394, 1597, 137),
        3: (127, 65, 532, 1),
        4: (547, 15, 80, 1),
    }
    for level, (count, mean_display, mx, mn) in expected.items():
        stats = partition_stats(tree, level)
        got = (
            stats.subtree_count,
            stats.mean_nodes_display,
            stats.max_nodes,
            stats.min_nodes,
        )
        assert got == (count, mean_display, mx, mn)
