"""Shared fixtures: toy training data built through the toolkit CLI.

The trainer only consumes tagged-sample files, so the fixtures shell out to
the taxoqa command line instead of importing it.  Everything is session
scoped because initializing a tokenizer+model directory is the slow part.
"""

from __future__ import annotations

import os
import subprocess
import sys
from types import SimpleNamespace

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")

import pytest

from taxoqa_trainer.cli import main as trainer_main


def run_toolkit(*argv) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "taxoqa.cli"] + [str(a) for a in argv]
    return subprocess.run(cmd, check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def toy_data(tmp_path_factory):
    root = tmp_path_factory.mktemp("toy")
    demo = root / "demo"
    built = root / "built"
    subprocess.run(
        [sys.executable, "-m", "taxoqa.fixtures", str(demo)],
        check=True,
        capture_output=True,
        text=True,
    )
    run_toolkit(
        "build",
        "--taxonomy", demo / "mini_taxonomy.jsonl",
        "--catalog", demo / "mini_catalog.jsonl",
        "--corpus", demo / "toy_corpus.jsonl",
        "--level", "2",
        "--output-dir", built,
    )
    return SimpleNamespace(
        root=root,
        demo=demo,
        tagged=built / "tagged_samples.jsonl",
    )


@pytest.fixture(scope="session")
def base_model(tmp_path_factory, toy_data):
    model_dir = tmp_path_factory.mktemp("model") / "base"
    rc = trainer_main(
        ["init-model", "--tagged", str(toy_data.tagged), "--output-dir", str(model_dir), "--seed", "0"]
    )
    assert rc == 0
    return model_dir
