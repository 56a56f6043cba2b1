"""Exception types shared across the toolkit.

Every failure the library raises on purpose derives from TaxoqaError so the
CLI can map any of them to a non-zero exit code with one handler.
"""

from __future__ import annotations


class TaxoqaError(Exception):
    """Base class for all toolkit errors."""


class InvalidEntry(TaxoqaError):
    """A source line or entry is malformed (bad JSON, missing key, empty field)."""


class DuplicateId(TaxoqaError):
    """Two taxonomy entries share an id, or an entry collides with the root id."""


class DanglingParent(TaxoqaError):
    """An entry references a parent_id that no entry defines."""


class CycleDetected(TaxoqaError):
    """Parent links form a cycle instead of a tree."""


class EmptySource(TaxoqaError):
    """The taxonomy source contains no entries."""


class LevelOutOfRange(TaxoqaError):
    """Requested tree level is outside [1, height]."""


class UnknownConceptId(TaxoqaError):
    """A record references a concept id missing from the catalog."""


class DelimiterCollision(TaxoqaError):
    """A concept name contains the segment delimiter and sanitizing is off."""


class EmptyCorpus(TaxoqaError):
    """No document records to work with."""


class Overflow(TaxoqaError):
    """Subtoken sequence exceeds max_len under the reject policy."""


class LengthMismatch(TaxoqaError):
    """Predicted and gold tag sequences differ in length."""


class SegmentMismatch(TaxoqaError):
    """Segment ranges are inconsistent with the gold tags or with each other."""


class InvalidConfidence(TaxoqaError):
    """Confidence level has no tabulated z-score."""


class InvalidMargin(TaxoqaError):
    """Margin of error is outside (0, 1)."""


class SampleTooLarge(TaxoqaError):
    """Requested sample size exceeds the population."""
