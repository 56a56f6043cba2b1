"""Chunk-level scoring of IO tag sequences, strict and classification modes.

Strict mode matches maximal runs of 1 exactly, the convention seqeval
applies to IO-tagged data: a predicted chunk counts only when its start and
end both coincide with a gold chunk.  Classification mode first expands the
prediction to whole category segments (any segment touched by a predicted 1
becomes fully predicted), then applies the same strict matching, which turns
the task into per-segment classification.  All ratios are exact Fractions;
a zero denominator yields 0 for precision/recall/f1 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import LengthMismatch, SegmentMismatch

IGNORE = -100
OUTSIDE = 0
CONCEPT = 1

STRICT = "strict"
CLASSIFICATION = "classification"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Chunk:
    """Maximal run of tag 1: [start, end) over raw sequence indices."""

    label: str
    start: int
    end: int


@dataclass(frozen=True)
class EvalReport:
    """Counts plus exact ratios for one evaluation mode."""

    mode: str
    precision: Fraction
    recall: Fraction
    f1: Fraction
    accuracy: Fraction
    tp: int
    pred_count: int
    gold_count: int
    correct_positions: int
    scored_positions: int

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "precision": float(self.precision),
            "recall": float(self.recall),
            "f1": float(self.f1),
            "accuracy": float(self.accuracy),
            "tp": self.tp,
            "pred_count": self.pred_count,
            "gold_count": self.gold_count,
            "correct_positions": self.correct_positions,
            "scored_positions": self.scored_positions,
        }


def extract_chunks(tags: Sequence[int], label: str = "CONCEPT") -> list[Chunk]:
    """Maximal runs of 1; both 0 and IGNORE break a run."""
    chunks = []
    start = None
    for i, tag in enumerate(tags):
        if tag == CONCEPT:
            if start is None:
                start = i
        elif start is not None:
            chunks.append(Chunk(label, start, i))
            start = None
    if start is not None:
        chunks.append(Chunk(label, start, len(tags)))
    return chunks


def _masked(pred: Sequence[int], gold: Sequence[int]) -> list[int]:
    """Copy pred with IGNORE wherever gold is IGNORE."""
    if len(pred) != len(gold):
        raise LengthMismatch(f"pred has {len(pred)} tags, gold has {len(gold)}")
    return [IGNORE if g == IGNORE else p for p, g in zip(pred, gold)]


def _ratio(num: int, den: int) -> Fraction:
    return Fraction(num, den) if den else _ZERO


def _report(
    mode: str, tp: int, pred_count: int, gold_count: int, correct: int, scored: int
) -> EvalReport:
    precision = _ratio(tp, pred_count)
    recall = _ratio(tp, gold_count)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else _ZERO
    accuracy = _ratio(correct, scored) if scored else _ONE
    return EvalReport(
        mode=mode,
        precision=precision,
        recall=recall,
        f1=f1,
        accuracy=accuracy,
        tp=tp,
        pred_count=pred_count,
        gold_count=gold_count,
        correct_positions=correct,
        scored_positions=scored,
    )


def _strict_counts(pred: Sequence[int], gold: Sequence[int]) -> tuple[int, int, int, int, int]:
    masked = _masked(pred, gold)
    pred_chunks = set(extract_chunks(masked))
    gold_chunks = set(extract_chunks(gold))
    tp = len(pred_chunks & gold_chunks)
    correct = sum(1 for p, g in zip(masked, gold) if g != IGNORE and p == g)
    scored = sum(1 for g in gold if g != IGNORE)
    return tp, len(pred_chunks), len(gold_chunks), correct, scored


def evaluate_strict(pred: Sequence[int], gold: Sequence[int]) -> EvalReport:
    """Exact chunk matching on one sequence pair."""
    return _report(STRICT, *_strict_counts(pred, gold))


def evaluate_strict_corpus(
    pairs: Iterable[tuple[Sequence[int], Sequence[int]]]
) -> EvalReport:
    """Micro-average over samples: sum counts, then take ratios once."""
    totals = [0, 0, 0, 0, 0]
    for pred, gold in pairs:
        for i, v in enumerate(_strict_counts(pred, gold)):
            totals[i] += v
    return _report(STRICT, *totals)


def _validate_segments(gold: Sequence[int], segments: Sequence[tuple[int, int]]) -> None:
    """Segments must be ordered, gap-separated, in range, IGNORE-free, and
    gold chunks must coincide with whole segments."""
    prev_end = None
    for start, end in segments:
        if not (0 <= start < end <= len(gold)):
            raise SegmentMismatch(f"segment ({start}, {end}) out of range")
        if prev_end is not None and start <= prev_end:
            raise SegmentMismatch(
                f"segment ({start}, {end}) not past previous end {prev_end}; "
                "segments need at least one delimiter position between them"
            )
        if any(gold[i] == IGNORE for i in range(start, end)):
            raise SegmentMismatch(f"segment ({start}, {end}) covers IGNORE gold positions")
        prev_end = end
    ranges = {(s, e) for s, e in segments}
    for chunk in extract_chunks(gold):
        if (chunk.start, chunk.end) not in ranges:
            raise SegmentMismatch(
                f"gold chunk ({chunk.start}, {chunk.end}) is not a whole segment"
            )


def expand_predictions(
    pred: Sequence[int], gold: Sequence[int], segments: Sequence[tuple[int, int]]
) -> list[int]:
    """Rewrite pred so every touched segment is fully 1, the rest 0.

    A segment counts as touched when any of its positions carries a
    predicted 1 after masking.  Positions outside all segments become 0, so
    chunks of the result are exactly the touched segments.
    """
    _validate_segments(gold, segments)
    masked = _masked(pred, gold)
    expanded = [IGNORE if g == IGNORE else OUTSIDE for g in gold]
    for start, end in segments:
        if any(masked[i] == CONCEPT for i in range(start, end)):
            for i in range(start, end):
                expanded[i] = CONCEPT
    return expanded


def evaluate_classification(
    pred: Sequence[int], gold: Sequence[int], segments: Sequence[tuple[int, int]]
) -> EvalReport:
    """Segment-expansion scoring: expand pred, then strict-match."""
    expanded = expand_predictions(pred, gold, segments)
    return _report(CLASSIFICATION, *_strict_counts(expanded, gold))


def evaluate_classification_corpus(
    triples: Iterable[tuple[Sequence[int], Sequence[int], Sequence[tuple[int, int]]]]
) -> EvalReport:
    """Micro-average of classification mode over samples."""
    totals = [0, 0, 0, 0, 0]
    for pred, gold, segments in triples:
        expanded = expand_predictions(pred, gold, segments)
        for i, v in enumerate(_strict_counts(expanded, gold)):
            totals[i] += v
    return _report(CLASSIFICATION, *totals)
