"""Fine-tune a BERT token classifier on taxoqa tagged-sample files.

The harness talks to the sample toolkit only through its files: it reads
tagged-samples JSONL, writes predictions JSONL in the format `taxoqa eval`
scores, and never imports the toolkit package.
"""

__version__ = "0.1.0"
