"""Build extractive QA samples from a labeled corpus and a taxonomy partition.

Each document record is paired with every subtree of the chosen partition
level.  The pair becomes a sample when at least one of the record's concept
names appears verbatim in the subtree's rendered categories list; pairs with
no match are dropped (the answer would be empty).  sentence1 is the document
title, sentence2 the delimiter-joined member names, and gold the character
segments a reader should extract.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DelimiterCollision, EmptyCorpus, InvalidEntry, UnknownConceptId
from .taxonomy import Subtree, TaxonomyTree, subtrees_at_level

DEFAULT_DELIMITER = ", "
SANITIZE_REPLACEMENT = ";"


@dataclass(frozen=True)
class DocumentRecord:
    """One labeled document: id, title, body text and concept ids."""

    record_id: str
    title: str
    text: str
    concept_ids: tuple[str, ...]


@dataclass(frozen=True)
class Segment:
    """One category occurrence inside a rendered list: [start, end) chars."""

    name: str
    start: int
    end: int


@dataclass(frozen=True)
class CategoriesList:
    """A subtree's member names joined by the delimiter, with offsets."""

    subtree_id: str
    rendered: str
    segments: tuple[Segment, ...]


@dataclass(frozen=True)
class BuiltSample:
    """One (record, subtree) QA sample.  gold spans index into sentence2."""

    sample_id: str
    record_id: str
    subtree_id: str
    sentence1: str
    sentence2: str
    gold: tuple[Segment, ...]


class ConceptCatalog:
    """Maps concept ids to display names."""

    def __init__(self, names: Mapping[str, str]) -> None:
        self._names = dict(names)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, concept_id: str) -> bool:
        return concept_id in self._names

    def name(self, concept_id: str) -> str:
        try:
            return self._names[concept_id]
        except KeyError:
            raise UnknownConceptId(f"concept id {concept_id!r} not in catalog") from None


def resolve_concepts(record: DocumentRecord, catalog: ConceptCatalog) -> list[str]:
    """Names for the record's concept ids, record order, lowercased."""
    return [catalog.name(cid).strip().lower() for cid in record.concept_ids]


def render_categories(
    subtree: Subtree,
    tree: TaxonomyTree,
    delimiter: str = DEFAULT_DELIMITER,
    sanitize: bool = False,
) -> CategoriesList:
    """Join the subtree's member names (pre-order) into one string.

    A name containing the delimiter core would make segment boundaries
    ambiguous, so it either gets the core replaced (sanitize=True) or raises
    DelimiterCollision.  The core is the delimiter without surrounding
    whitespace ("," for ", ") since names never carry edge whitespace.
    """
    core = delimiter.strip() or delimiter
    names = []
    for member_id in subtree.member_ids:
        name = tree.node(member_id).name
        if core in name:
            if not sanitize:
                raise DelimiterCollision(
                    f"name {name!r} contains delimiter {core!r} (use sanitize)"
                )
            name = name.replace(core, SANITIZE_REPLACEMENT)
        names.append(name)
    segments = []
    rendered_parts = []
    cursor = 0
    for i, name in enumerate(names):
        if i:
            rendered_parts.append(delimiter)
            cursor += len(delimiter)
        segments.append(Segment(name=name, start=cursor, end=cursor + len(name)))
        rendered_parts.append(name)
        cursor += len(name)
    return CategoriesList(
        subtree_id=subtree.parent_id,
        rendered="".join(rendered_parts),
        segments=tuple(segments),
    )


def segments_from_rendered(
    rendered: str, delimiter: str = DEFAULT_DELIMITER
) -> tuple[Segment, ...]:
    """Recover segments from a rendered list (inverse of render_categories)."""
    if not rendered:
        return ()
    segments = []
    cursor = 0
    for part in rendered.split(delimiter):
        segments.append(Segment(name=part, start=cursor, end=cursor + len(part)))
        cursor += len(part) + len(delimiter)
    return tuple(segments)


def build_samples(
    records: Sequence[DocumentRecord],
    catalog: ConceptCatalog,
    tree: TaxonomyTree,
    level: int,
    delimiter: str = DEFAULT_DELIMITER,
    sanitize: bool = False,
) -> list[BuiltSample]:
    """Cross records with partition subtrees, keeping pairs with answers.

    Output order is record order, then subtree pre-order within a record.
    Gold lists every segment whose name matches a resolved concept name,
    including repeat occurrences, in segment order.
    """
    if not records:
        raise EmptyCorpus("no records to build from")
    rendered = [
        render_categories(subtree, tree, delimiter=delimiter, sanitize=sanitize)
        for subtree in subtrees_at_level(tree, level)
    ]
    # Per subtree: name -> segment indices, so record lookup is one dict hit.
    by_name: list[dict[str, list[int]]] = []
    for cats in rendered:
        index: dict[str, list[int]] = {}
        for i, seg in enumerate(cats.segments):
            index.setdefault(seg.name, []).append(i)
        by_name.append(index)

    samples = []
    for record in records:
        names = set(resolve_concepts(record, catalog))
        for cats, index in zip(rendered, by_name):
            hits = sorted(i for name in names for i in index.get(name, ()))
            if not hits:
                continue
            samples.append(
                BuiltSample(
                    sample_id=f"{record.record_id}::{cats.subtree_id}",
                    record_id=record.record_id,
                    subtree_id=cats.subtree_id,
                    sentence1=record.title,
                    sentence2=cats.rendered,
                    gold=tuple(cats.segments[i] for i in hits),
                )
            )
    return samples


def reorder_categories(
    sample: BuiltSample,
    categories: CategoriesList,
    seed: int,
    delimiter: str = DEFAULT_DELIMITER,
) -> tuple[BuiltSample, CategoriesList]:
    """Shuffle the categories list of one sample, recomputing offsets.

    Deterministic for a given seed.  Gold follows the segments it names, so
    the gold name multiset is preserved while positions move.
    """
    order = list(range(len(categories.segments)))
    random.Random(seed).shuffle(order)
    gold_positions = {(g.start, g.end) for g in sample.gold}
    names = [categories.segments[i].name for i in order]
    was_gold = [
        (categories.segments[i].start, categories.segments[i].end) in gold_positions
        for i in order
    ]
    segments = []
    cursor = 0
    for i, name in enumerate(names):
        if i:
            cursor += len(delimiter)
        segments.append(Segment(name=name, start=cursor, end=cursor + len(name)))
        cursor += len(name)
    rendered = delimiter.join(names)
    new_cats = CategoriesList(
        subtree_id=categories.subtree_id, rendered=rendered, segments=tuple(segments)
    )
    new_gold = tuple(seg for seg, keep in zip(segments, was_gold) if keep)
    new_sample = BuiltSample(
        sample_id=sample.sample_id,
        record_id=sample.record_id,
        subtree_id=sample.subtree_id,
        sentence1=sample.sentence1,
        sentence2=rendered,
        gold=new_gold,
    )
    return new_sample, new_cats


def _require(obj: dict, key: str, where: str):
    try:
        return obj[key]
    except KeyError:
        raise InvalidEntry(f"{where}: missing key {key!r}") from None


def read_corpus_file(path: str | Path) -> list[DocumentRecord]:
    """Read document records from JSONL rows of
    {"celex_id", "title", "text", "eurovoc_concepts"}."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InvalidEntry(f"{where}: {exc}") from None
            records.append(
                DocumentRecord(
                    record_id=str(_require(obj, "celex_id", where)),
                    title=str(_require(obj, "title", where)),
                    text=str(_require(obj, "text", where)),
                    concept_ids=tuple(str(c) for c in _require(obj, "eurovoc_concepts", where)),
                )
            )
    return records


def record_to_dict(record: DocumentRecord) -> dict:
    return {
        "celex_id": record.record_id,
        "title": record.title,
        "text": record.text,
        "eurovoc_concepts": list(record.concept_ids),
    }


def write_corpus_file(records: Iterable[DocumentRecord], path: str | Path) -> None:
    lines = [json.dumps(record_to_dict(r), ensure_ascii=False) for r in records]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_catalog_file(path: str | Path) -> ConceptCatalog:
    """Read a concept catalog from JSONL rows of {"id", "title"}."""
    names = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InvalidEntry(f"{where}: {exc}") from None
            names[str(_require(obj, "id", where))] = str(_require(obj, "title", where))
    return ConceptCatalog(names)


def sample_to_dict(sample: BuiltSample) -> dict:
    return {
        "sample_id": sample.sample_id,
        "record_id": sample.record_id,
        "subtree_id": sample.subtree_id,
        "sentence1": sample.sentence1,
        "sentence2": sample.sentence2,
        "gold": [{"name": g.name, "start": g.start, "end": g.end} for g in sample.gold],
    }


def sample_from_dict(obj: dict, where: str = "sample") -> BuiltSample:
    gold = tuple(
        Segment(name=g["name"], start=int(g["start"]), end=int(g["end"]))
        for g in _require(obj, "gold", where)
    )
    return BuiltSample(
        sample_id=str(_require(obj, "sample_id", where)),
        record_id=str(_require(obj, "record_id", where)),
        subtree_id=str(_require(obj, "subtree_id", where)),
        sentence1=str(_require(obj, "sentence1", where)),
        sentence2=str(_require(obj, "sentence2", where)),
        gold=gold,
    )
