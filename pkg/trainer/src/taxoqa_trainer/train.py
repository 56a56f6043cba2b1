"""Training loop: frozen-encoder fine-tuning with per-epoch loss logging."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

import torch
from transformers import BertForTokenClassification, BertTokenizerFast

from .data import ALL_SUBTOKENS, collate, encode_row, load_tagged
from .model import freeze_pretrained_layers, parameter_hash


@dataclass(frozen=True)
class TrainSpec:
    model_dir: Path
    train_path: Path
    output_dir: Path
    val_path: Path | None = None
    epochs: int = 6
    lr: float = 5e-3
    batch_size: int = 8
    max_len: int = 512
    strategy: str = ALL_SUBTOKENS
    seed: int = 0
    freeze: bool = True


def _batches(encoded: list[dict], order: list[int], size: int):
    for i in range(0, len(order), size):
        yield [encoded[j] for j in order[i : i + size]]


def _mean_loss(model, encoded, pad_id, size) -> float:
    model.eval()
    losses = []
    with torch.no_grad():
        for batch in _batches(encoded, list(range(len(encoded))), size):
            out = model(**collate(batch, pad_id))
            losses.append(out.loss.item())
    return sum(losses) / len(losses) if losses else 0.0


def run_training(spec: TrainSpec) -> dict:
    """Train and save a checkpoint; returns the loss log that was written.

    The log records the frozen-parameter fingerprint before and after
    training so callers can verify the freeze policy held.
    """
    torch.manual_seed(spec.seed)
    tokenizer = BertTokenizerFast.from_pretrained(spec.model_dir)
    model = BertForTokenClassification.from_pretrained(spec.model_dir)
    frozen = freeze_pretrained_layers(model) if spec.freeze else []
    hash_before = parameter_hash(model, frozen) if frozen else None

    train_rows = load_tagged(spec.train_path)
    encoded = [encode_row(r, tokenizer, spec.max_len, spec.strategy) for r in train_rows]
    val_encoded = None
    if spec.val_path is not None:
        val_rows = load_tagged(spec.val_path)
        val_encoded = [
            encode_row(r, tokenizer, spec.max_len, spec.strategy) for r in val_rows
        ]

    pad_id = tokenizer.pad_token_id
    trainable = [p for p in model.parameters() if p.requires_grad]
    optimizer = torch.optim.AdamW(trainable, lr=spec.lr)
    epochs = []
    for epoch in range(1, spec.epochs + 1):
        model.train()
        order = list(range(len(encoded)))
        random.Random(spec.seed + epoch).shuffle(order)
        losses = []
        for batch in _batches(encoded, order, spec.batch_size):
            optimizer.zero_grad()
            out = model(**collate(batch, pad_id))
            out.loss.backward()
            optimizer.step()
            losses.append(out.loss.item())
        entry = {
            "epoch": epoch,
            "train_loss": sum(losses) / len(losses) if losses else 0.0,
            "val_loss": (
                _mean_loss(model, val_encoded, pad_id, spec.batch_size)
                if val_encoded is not None
                else None
            ),
        }
        epochs.append(entry)

    hash_after = parameter_hash(model, frozen) if frozen else None
    out_dir = Path(spec.output_dir)
    checkpoint = out_dir / "checkpoint"
    checkpoint.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(checkpoint)
    tokenizer.save_pretrained(checkpoint)
    log = {
        "model_dir": str(spec.model_dir),
        "train_path": str(spec.train_path),
        "epochs_run": spec.epochs,
        "lr": spec.lr,
        "batch_size": spec.batch_size,
        "strategy": spec.strategy,
        "seed": spec.seed,
        "frozen_parameters": len(frozen),
        "frozen_hash_before": hash_before,
        "frozen_hash_after": hash_after,
        "frozen_hash_unchanged": hash_before == hash_after,
        "epochs": epochs,
    }
    (out_dir / "loss_log.json").write_text(
        json.dumps(log, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    return log
