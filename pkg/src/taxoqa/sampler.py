"""Statistically grounded corpus subsampling.

Sample sizes follow Cochran's formula for proportions with the finite
population correction, at worst-case proportion 0.5.  The arithmetic runs on
exact rationals so the final ceiling never flips on float noise.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TypeVar

from .errors import InvalidConfidence, InvalidMargin, SampleTooLarge

T = TypeVar("T")

# Two-sided z-scores for the supported confidence levels.
Z_SCORES = {
    0.90: Fraction("1.645"),
    0.95: Fraction("1.96"),
    0.99: Fraction("2.576"),
}

PROPORTION = Fraction(1, 2)


@dataclass(frozen=True)
class SamplePlan:
    """Inputs and result of one sample-size computation."""

    population: int
    confidence: float
    margin: float
    proportion: float
    z: float
    size: int

    def as_dict(self) -> dict:
        return {
            "population": self.population,
            "confidence": self.confidence,
            "margin": self.margin,
            "proportion": self.proportion,
            "z": self.z,
            "size": self.size,
        }


def sample_size(population: int, confidence: float = 0.95, margin: float = 0.05) -> int:
    """Cochran sample size with finite population correction.

    n0 = z^2 * p * (1 - p) / e^2, then n = n0 / (1 + n0 / N), rounded up and
    clamped to [1, N].  With p = 0.5 the result never exceeds
    ceil(z^2 / (4 e^2)) regardless of N.
    """
    if population < 1:
        raise ValueError(f"population must be >= 1, got {population}")
    try:
        z = Z_SCORES[confidence]
    except KeyError:
        raise InvalidConfidence(
            f"confidence {confidence} not in {sorted(Z_SCORES)}"
        ) from None
    if not 0 < margin < 1:
        raise InvalidMargin(f"margin must be in (0, 1), got {margin}")
    e = Fraction(str(margin))
    n0 = z * z * PROPORTION * (1 - PROPORTION) / (e * e)
    n = n0 / (1 + n0 / population)
    return min(population, max(1, math.ceil(n)))


def make_plan(population: int, confidence: float = 0.95, margin: float = 0.05) -> SamplePlan:
    size = sample_size(population, confidence=confidence, margin=margin)
    return SamplePlan(
        population=population,
        confidence=confidence,
        margin=margin,
        proportion=float(PROPORTION),
        z=float(Z_SCORES[confidence]),
        size=size,
    )


def draw_sample(records: Sequence[T], n: int, seed: int) -> list[T]:
    """Uniform sample without replacement, original order kept.

    Deterministic for a given seed; sampling indices rather than items keeps
    the output a subsequence of the input.
    """
    if n > len(records):
        raise SampleTooLarge(f"cannot draw {n} from population {len(records)}")
    indices = sorted(random.Random(seed).sample(range(len(records)), n))
    return [records[i] for i in indices]
