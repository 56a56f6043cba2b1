"""Cochran sample sizing and deterministic drawing."""

from __future__ import annotations

import random

import pytest

from taxoqa.errors import InvalidConfidence, InvalidMargin, SampleTooLarge
from taxoqa.sampler import draw_sample, make_plan, sample_size


def test_known_sizes() -> None:
    assert sample_size(45000, confidence=0.95, margin=0.05) == 381
    assert sample_size(6000, confidence=0.95, margin=0.05) == 362


def test_infinite_population_bound() -> None:
    # with p = 0.5 the size caps at ceil(z^2 / (4 e^2)) = 385 for 95%/5%
    assert sample_size(10**9) == 385
    rng = random.Random(2)
    for _ in range(200):
        population = rng.randrange(1, 10**7)
        size = sample_size(population)
        assert 1 <= size <= min(population, 385)


def test_monotone_in_population() -> None:
    previous = 0
    for population in range(1, 3000):
        size = sample_size(population)
        assert size >= previous
        previous = size


def test_tiny_populations_sample_everything() -> None:
    for population in range(1, 12):
        assert sample_size(population) == population


def test_confidence_levels_change_size() -> None:
    assert sample_size(45000, confidence=0.90) < 381 < sample_size(45000, confidence=0.99)


def test_invalid_inputs() -> None:
    with pytest.raises(InvalidConfidence):
        sample_size(1000, confidence=0.8)
    with pytest.raises(InvalidMargin):
        sample_size(1000, margin=0.0)
    with pytest.raises(InvalidMargin):
        sample_size(1000, margin=1.0)
    with pytest.raises(ValueError):
        sample_size(0)


def test_make_plan_fields() -> None:
    plan = make_plan(6000)
    assert plan.size == 362
    assert plan.z == 1.96
    assert plan.proportion == 0.5
    assert plan.as_dict()["population"] == 6000


def test_draw_sample_is_deterministic_subsequence() -> None:
    records = [f"r{i}" for i in range(500)]
    a = draw_sample(records, 40, seed=9)
    b = draw_sample(records, 40, seed=9)
    assert a == b
    assert len(a) == 40
    assert len(set(a)) == 40
    positions = [records.index(x) for x in a]
    assert positions == sorted(positions)
    c = draw_sample(records, 40, seed=10)
    assert c != a


def test_draw_sample_too_large() -> None:
    with pytest.raises(SampleTooLarge):
        draw_sample([1, 2, 3], 4, seed=0)
