"""Brute-force reference scorer for differential testing.

Recomputes both evaluation modes from first principles: strict chunks by
exhaustive span enumeration, classification by set arithmetic over segment
indices.  Deliberately shares no logic with metrics.py beyond the report
record, so agreement between the two is evidence, not tautology.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import LengthMismatch
from .metrics import CLASSIFICATION, STRICT, EvalReport

_IGN = -100


def _mask(pred: Sequence[int], gold: Sequence[int]) -> list[int]:
    if len(pred) != len(gold):
        raise LengthMismatch(f"pred has {len(pred)} tags, gold has {len(gold)}")
    return [_IGN if g == _IGN else p for p, g in zip(pred, gold)]


def _spans_by_enumeration(tags: Sequence[int]) -> set[tuple[int, int]]:
    """Every (i, j) that is a maximal all-ones span, tried one by one."""
    n = len(tags)
    found = set()
    for i in range(n):
        for j in range(i + 1, n + 1):
            interior_ok = all(tags[k] == 1 for k in range(i, j))
            left_ok = i == 0 or tags[i - 1] != 1
            right_ok = j == n or tags[j] != 1
            if interior_ok and left_ok and right_ok:
                found.add((i, j))
    return found


def _wrap(
    mode: str, tp: int, pred_n: int, gold_n: int, correct: int, scored: int
) -> EvalReport:
    p = Fraction(tp, pred_n) if pred_n > 0 else Fraction(0)
    r = Fraction(tp, gold_n) if gold_n > 0 else Fraction(0)
    f = Fraction(2) * p * r / (p + r) if (p + r) > 0 else Fraction(0)
    a = Fraction(correct, scored) if scored > 0 else Fraction(1)
    return EvalReport(
        mode=mode,
        precision=p,
        recall=r,
        f1=f,
        accuracy=a,
        tp=tp,
        pred_count=pred_n,
        gold_count=gold_n,
        correct_positions=correct,
        scored_positions=scored,
    )


def oracle_evaluate(
    pred: Sequence[int],
    gold: Sequence[int],
    segments: Sequence[tuple[int, int]] | None = None,
    mode: str = STRICT,
) -> EvalReport:
    """Reference result for one sequence pair under the chosen mode."""
    masked = _mask(pred, gold)
    if mode == STRICT:
        pred_spans = _spans_by_enumeration(masked)
        gold_spans = _spans_by_enumeration(gold)
        tp = len(pred_spans & gold_spans)
        correct = sum(
            1 for k in range(len(gold)) if gold[k] != _IGN and masked[k] == gold[k]
        )
        scored = sum(1 for g in gold if g != _IGN)
        return _wrap(STRICT, tp, len(pred_spans), len(gold_spans), correct, scored)
    if mode == CLASSIFICATION:
        if segments is None:
            raise ValueError("classification mode needs segments")
        touched = set()
        fully_gold = set()
        for idx, (start, end) in enumerate(segments):
            if any(masked[k] == 1 for k in range(start, end)):
                touched.add(idx)
            if all(gold[k] == 1 for k in range(start, end)):
                fully_gold.add(idx)
        tp = len(touched & fully_gold)
        rewritten = []
        for k, g in enumerate(gold):
            if g == _IGN:
                rewritten.append(_IGN)
            else:
                inside_touched = any(
                    segments[idx][0] <= k < segments[idx][1] for idx in touched
                )
                rewritten.append(1 if inside_touched else 0)
        correct = sum(
            1 for k in range(len(gold)) if gold[k] != _IGN and rewritten[k] == gold[k]
        )
        scored = sum(1 for g in gold if g != _IGN)
        return _wrap(CLASSIFICATION, tp, len(touched), len(fully_gold), correct, scored)
    raise ValueError(f"unknown mode {mode!r}")
