"""Word tokenization, IO tag assignment and subtoken alignment.

Tags use the IO scheme over words: -100 marks positions excluded from loss
and scoring (the whole title, specials, subword continuations under the
first-subtoken rule), 0 is outside, 1 is inside an answer span.  Offsets for
both sentences live in one coordinate space, the joint string
"sentence1 + ' ' + sentence2", so downstream subword tokenizers that encode
the pair can align by character overlap alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .builder import BuiltSample, Segment
from .errors import InvalidEntry, Overflow, SegmentMismatch

IGNORE = -100
OUTSIDE = 0
CONCEPT = 1

ALL_SUBTOKENS = "all-subtokens"
FIRST_SUBTOKEN_ONLY = "first-subtoken-only"
TRUNCATE_AND_FLAG = "truncate-and-flag"
REJECT = "reject"

_WORD_RE = re.compile(r"\w+|[^\w\s]")


def word_tokenize(text: str) -> list[tuple[str, int, int]]:
    """Split into words and single punctuation marks with char offsets.

    A token is either a maximal \\w+ run or one non-space non-word char, so
    commas always come out as their own tokens and offsets are exact.
    """
    return [(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


@dataclass(frozen=True)
class TagSequence:
    """Word-level tokens and tags for one sample.

    spans are [start, end) char offsets into the joint string; the first
    sentence1_len tokens belong to the title and always carry IGNORE.
    sentence2_offset is where sentence2 starts in the joint string.
    """

    tokens: tuple[str, ...]
    tags: tuple[int, ...]
    sentence1_len: int
    spans: tuple[tuple[int, int], ...]
    sentence2_offset: int


@dataclass(frozen=True)
class AlignmentRule:
    """How word tags project onto subword tokens."""

    strategy: str = ALL_SUBTOKENS
    max_len: int = 512
    overflow_policy: str = TRUNCATE_AND_FLAG


def tag_sample(sample: BuiltSample) -> TagSequence:
    """Tokenize both sentences and tag sentence2 words by gold membership.

    Title words get IGNORE; a sentence2 word gets 1 when its span falls
    inside some gold segment, else 0.  Changing the title never changes the
    sentence2 portion of the tags.
    """
    offset = len(sample.sentence1) + 1
    words1 = word_tokenize(sample.sentence1)
    words2 = word_tokenize(sample.sentence2)
    tokens = [w for w, _, _ in words1] + [w for w, _, _ in words2]
    spans = [(s, e) for _, s, e in words1] + [(s + offset, e + offset) for _, s, e in words2]
    tags = [IGNORE] * len(words1)
    for _, start, end in words2:
        inside = any(g.start <= start and end <= g.end for g in sample.gold)
        tags.append(CONCEPT if inside else OUTSIDE)
    return TagSequence(
        tokens=tuple(tokens),
        tags=tuple(tags),
        sentence1_len=len(words1),
        spans=tuple(spans),
        sentence2_offset=offset,
    )


def segment_token_ranges(
    seq: TagSequence, segments: Sequence[Segment]
) -> list[tuple[int, int]]:
    """Token-index ranges [start, end) covering each sentence2 segment.

    Segments must be ascending and non-overlapping (as rendered lists are).
    Every segment holds at least one token because names are non-empty.
    """
    ranges = []
    i = seq.sentence1_len
    n = len(seq.spans)
    for seg in segments:
        lo = seg.start + seq.sentence2_offset
        hi = seg.end + seq.sentence2_offset
        while i < n and seq.spans[i][0] < lo:
            i += 1
        first = i
        while i < n and seq.spans[i][1] <= hi:
            i += 1
        if i == first:
            raise SegmentMismatch(f"segment {seg.name!r} at {seg.start} covers no tokens")
        ranges.append((first, i))
    return ranges


def align_to_subtokens(
    seq: TagSequence,
    subtokens: Sequence[tuple[int, int, bool]],
    rule: AlignmentRule = AlignmentRule(),
) -> list[int]:
    """Project word tags onto subword tokens.

    subtokens are (start, end, is_special) with offsets in the joint
    coordinate space.  Specials and anything overlapping sentence1 get
    IGNORE; other subtokens inherit their word's tag, continuations demoted
    to IGNORE under the first-subtoken-only strategy.  Sequences longer than
    max_len are truncated (default) or rejected.
    """
    if rule.strategy not in (ALL_SUBTOKENS, FIRST_SUBTOKEN_ONLY):
        raise InvalidEntry(f"unknown alignment strategy {rule.strategy!r}")
    if len(subtokens) > rule.max_len:
        if rule.overflow_policy == REJECT:
            raise Overflow(f"{len(subtokens)} subtokens exceed max_len {rule.max_len}")
        if rule.overflow_policy != TRUNCATE_AND_FLAG:
            raise InvalidEntry(f"unknown overflow policy {rule.overflow_policy!r}")
    sentence1_end = seq.sentence2_offset - 1
    out = []
    seen_words: set[int] = set()
    word = seq.sentence1_len
    n_words = len(seq.spans)
    for start, end, is_special in subtokens[: rule.max_len]:
        if is_special or start >= end:
            out.append(IGNORE)
            continue
        if start < sentence1_end:
            out.append(IGNORE)
            continue
        while word < n_words and seq.spans[word][1] <= start:
            word += 1
        if word >= n_words or end <= seq.spans[word][0]:
            out.append(IGNORE)
            continue
        if rule.strategy == FIRST_SUBTOKEN_ONLY and word in seen_words:
            out.append(IGNORE)
            continue
        seen_words.add(word)
        out.append(seq.tags[word])
    return out


def tagged_record(sample: BuiltSample, seq: TagSequence) -> dict:
    """One JSONL row: the built sample plus its word-level tag sequence."""
    return {
        "sample_id": sample.sample_id,
        "record_id": sample.record_id,
        "subtree_id": sample.subtree_id,
        "sentence1": sample.sentence1,
        "sentence2": sample.sentence2,
        "gold": [{"name": g.name, "start": g.start, "end": g.end} for g in sample.gold],
        "tokens": list(seq.tokens),
        "tags": list(seq.tags),
        "sentence1_len": seq.sentence1_len,
        "spans": [list(s) for s in seq.spans],
        "sentence2_offset": seq.sentence2_offset,
    }


def parse_tagged_record(obj: dict, where: str = "tagged row") -> tuple[BuiltSample, TagSequence]:
    from .builder import sample_from_dict

    sample = sample_from_dict(obj, where)
    try:
        seq = TagSequence(
            tokens=tuple(obj["tokens"]),
            tags=tuple(int(t) for t in obj["tags"]),
            sentence1_len=int(obj["sentence1_len"]),
            spans=tuple((int(s), int(e)) for s, e in obj["spans"]),
            sentence2_offset=int(obj["sentence2_offset"]),
        )
    except KeyError as exc:
        raise InvalidEntry(f"{where}: missing key {exc}") from None
    if len(seq.tokens) != len(seq.tags) or len(seq.tokens) != len(seq.spans):
        raise InvalidEntry(f"{where}: tokens/tags/spans lengths differ")
    return sample, seq
