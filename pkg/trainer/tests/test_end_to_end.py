"""End-to-end: train on toy data, predict, score with the toolkit CLI.

The scoring step runs `taxoqa eval` as a subprocess so the boundary stays
file-shaped: tagged samples in, prediction files out, one JSON report back.
"""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from taxoqa_trainer.cli import main as trainer_main
from taxoqa_trainer.data import load_tagged


@pytest.fixture(scope="module")
def scored(tmp_path_factory, toy_data, base_model):
    work = tmp_path_factory.mktemp("e2e")
    rc = trainer_main(
        [
            "train",
            "--model", str(base_model),
            "--train", str(toy_data.tagged),
            "--output-dir", str(work / "run"),
            "--epochs", "30",
            "--lr", "0.01",
            "--seed", "1",
        ]
    )
    assert rc == 0
    rc = trainer_main(
        [
            "predict",
            "--model", str(work / "run" / "checkpoint"),
            "--tagged", str(toy_data.tagged),
            "--output", str(work / "trained.jsonl"),
        ]
    )
    assert rc == 0

    # baseline: predict outside everywhere the gold sequence is scoreable
    rows = load_tagged(toy_data.tagged)
    with open(work / "all_outside.jsonl", "w", encoding="utf-8") as fh:
        for row in rows:
            tags = [-100 if t == -100 else 0 for t in row["tags"]]
            fh.write(json.dumps({"sample_id": row["sample_id"], "pred_tags": tags}) + "\n")

    subprocess.run(
        [
            sys.executable, "-m", "taxoqa.cli", "eval",
            "--tagged", str(toy_data.tagged),
            "--predictions", str(work / "trained.jsonl"), str(work / "all_outside.jsonl"),
            "--output-dir", str(work),
        ],
        check=True,
        capture_output=True,
        text=True,
    )
    report = json.loads((work / "eval_report.json").read_text(encoding="utf-8"))
    trained, baseline = report["epochs"]
    return trained, baseline


def test_every_sample_scored(scored, toy_data):
    trained, baseline = scored
    total = len(load_tagged(toy_data.tagged))
    assert trained["samples_scored"] == total
    assert trained["samples_skipped"] == 0
    assert baseline["samples_scored"] == total


def test_trained_model_beats_all_outside_baseline(scored):
    trained, baseline = scored
    assert baseline["strict"]["tp"] == 0
    assert baseline["strict"]["f1"] == 0.0
    assert trained["strict"]["tp"] > 0
    assert trained["strict"]["f1"] > baseline["strict"]["f1"]


def test_classification_f1_not_below_strict_f1(scored):
    trained, _ = scored
    assert trained["classification"]["f1"] >= trained["strict"]["f1"]
    assert trained["classification"]["tp"] >= trained["strict"]["tp"]
