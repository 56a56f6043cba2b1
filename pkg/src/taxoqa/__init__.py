"""Turn multi-label document corpora into extractive QA samples via a
label-taxonomy partition, and score IO tag predictions two ways: strict
chunk matching and segment-boundary expansion."""

__version__ = "0.1.0"
