"""Sample construction: rendering, matching, filtering, reordering."""

from __future__ import annotations

import random

import pytest

from taxoqa import fixtures
from taxoqa.builder import (
    ConceptCatalog,
    DocumentRecord,
    build_samples,
    read_catalog_file,
    read_corpus_file,
    render_categories,
    reorder_categories,
    resolve_concepts,
    segments_from_rendered,
    write_corpus_file,
)
from taxoqa.errors import DelimiterCollision, EmptyCorpus, UnknownConceptId
from taxoqa.taxonomy import load_taxonomy, subtrees_at_level


def _mini_tree():
    return load_taxonomy(fixtures.MINI_TAXONOMY)


def _mini_catalog():
    return ConceptCatalog(fixtures.MINI_CATALOG)


def test_render_offsets() -> None:
    tree = load_taxonomy([("p", "a", None), ("q", "b", "p"), ("r", "c", "p")])
    cats = render_categories(subtrees_at_level(tree, 2)[0], tree)
    assert cats.rendered == "a, b, c"
    assert [(s.name, s.start, s.end) for s in cats.segments] == [
        ("a", 0, 1),
        ("b", 3, 4),
        ("c", 6, 7),
    ]


def test_render_segment_substring_property() -> None:
    tree = _mini_tree()
    for subtree in subtrees_at_level(tree, 3):
        cats = render_categories(subtree, tree)
        for seg in cats.segments:
            assert cats.rendered[seg.start : seg.end] == seg.name
        assert len(cats.segments) == subtree.node_count


def test_segments_from_rendered_is_inverse() -> None:
    tree = _mini_tree()
    for level in (2, 3, 4):
        for subtree in subtrees_at_level(tree, level):
            cats = render_categories(subtree, tree)
            assert segments_from_rendered(cats.rendered) == cats.segments


def test_delimiter_collision_raises_or_sanitizes() -> None:
    tree = load_taxonomy([("p", "top", None), ("q", "a, b", "p")])
    subtree = subtrees_at_level(tree, 2)[0]
    with pytest.raises(DelimiterCollision):
        render_categories(subtree, tree)
    cats = render_categories(subtree, tree, sanitize=True)
    assert cats.rendered == "top, a; b"
    assert segments_from_rendered(cats.rendered) == cats.segments


def test_resolve_concepts_lowercases_in_record_order() -> None:
    record = DocumentRecord("r", "t", "x", ("4359", "2022"))
    assert resolve_concepts(record, _mini_catalog()) == ["white sugar", "export refund"]


def test_resolve_unknown_concept() -> None:
    record = DocumentRecord("r", "t", "x", ("0000",))
    with pytest.raises(UnknownConceptId):
        resolve_concepts(record, _mini_catalog())


def test_build_mini_corpus() -> None:
    samples = build_samples(fixtures.MINI_RECORDS, _mini_catalog(), _mini_tree(), 3)
    by_id = {s.sample_id: s for s in samples}
    assert len(samples) == 5
    worked = by_id["32007R0464::6006"]
    assert {g.name for g in worked.gold} == {"white sugar", "raw sugar"}
    for g in worked.gold:
        assert worked.sentence2[g.start : g.end] == g.name
    # The record with a concept outside the taxonomy contributes nothing.
    assert not any(s.record_id == "32001D0001" for s in samples)
    # Record order first, then subtree pre-order within each record.
    assert [s.sample_id for s in samples] == [
        "32007R0464::6006",
        "32007R0464::2006",
        "31995L0002::6006",
        "31999R1234::6011",
        "31999R1234::2006",
    ]


def test_build_gold_marks_every_occurrence() -> None:
    entries = [
        ("p", "top", None),
        ("q", "steel", "p"),
        ("r", "other", "p"),
        ("s", "steel", "r"),
    ]
    tree = load_taxonomy(entries)
    catalog = ConceptCatalog({"c1": "steel"})
    record = DocumentRecord("r1", "title", "text", ("c1",))
    samples = build_samples([record], catalog, tree, 2)
    assert len(samples) == 1
    assert [g.name for g in samples[0].gold] == ["steel", "steel"]
    starts = [g.start for g in samples[0].gold]
    assert starts == sorted(starts)


def test_build_empty_corpus() -> None:
    with pytest.raises(EmptyCorpus):
        build_samples([], _mini_catalog(), _mini_tree(), 3)


def test_build_sample_count_bounded_by_pairs() -> None:
    tree = _mini_tree()
    subtree_count = len(subtrees_at_level(tree, 3))
    samples = build_samples(fixtures.MINI_RECORDS, _mini_catalog(), tree, 3)
    assert len(samples) <= len(fixtures.MINI_RECORDS) * subtree_count


def test_reorder_preserves_names_and_gold() -> None:
    tree = _mini_tree()
    samples = build_samples(fixtures.MINI_RECORDS, _mini_catalog(), tree, 3)
    rng = random.Random(17)
    for sample in samples:
        cats_segments = segments_from_rendered(sample.sentence2)
        from taxoqa.builder import CategoriesList

        cats = CategoriesList(sample.subtree_id, sample.sentence2, cats_segments)
        seed = rng.randrange(10**6)
        shuffled, new_cats = reorder_categories(sample, cats, seed)
        assert sorted(s.name for s in new_cats.segments) == sorted(
            s.name for s in cats.segments
        )
        assert sorted(g.name for g in shuffled.gold) == sorted(g.name for g in sample.gold)
        for g in shuffled.gold:
            assert shuffled.sentence2[g.start : g.end] == g.name
        again, _ = reorder_categories(sample, cats, seed)
        assert again == shuffled


def test_reorder_actually_moves_something() -> None:
    tree = _mini_tree()
    sample = build_samples(fixtures.MINI_RECORDS, _mini_catalog(), tree, 3)[0]
    cats_segments = segments_from_rendered(sample.sentence2)
    from taxoqa.builder import CategoriesList

    cats = CategoriesList(sample.subtree_id, sample.sentence2, cats_segments)
    changed = 0
    for seed in range(10):
        shuffled, _ = reorder_categories(sample, cats, seed)
        if shuffled.sentence2 != sample.sentence2:
            changed += 1
    assert changed >= 8


def test_corpus_file_round_trip(tmp_path) -> None:
    path = tmp_path / "corpus.jsonl"
    write_corpus_file(fixtures.MINI_RECORDS, path)
    assert read_corpus_file(path) == list(fixtures.MINI_RECORDS)


def test_catalog_file_round_trip(tmp_path) -> None:
    path = tmp_path / "catalog.jsonl"
    fixtures._write_catalog(fixtures.MINI_CATALOG, path)
    catalog = read_catalog_file(path)
    assert len(catalog) == len(fixtures.MINI_CATALOG)
    assert catalog.name("4359") == "White sugar"
