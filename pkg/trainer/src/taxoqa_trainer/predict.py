"""Word-level prediction export in the format `taxoqa eval` scores."""

from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path

import torch
from transformers import BertForTokenClassification, BertTokenizerFast

from .data import ALL_SUBTOKENS, IGNORE, collate, encode_row, load_tagged


def predict_rows(
    model_dir: str | Path,
    rows: list[dict],
    batch_size: int = 16,
    max_len: int = 512,
    strategy: str = ALL_SUBTOKENS,
) -> list[dict]:
    tokenizer = BertTokenizerFast.from_pretrained(model_dir)
    model = BertForTokenClassification.from_pretrained(model_dir)
    model.eval()
    encoded = [encode_row(r, tokenizer, max_len, strategy) for r in rows]
    out_rows = []
    with torch.no_grad():
        for start in range(0, len(rows), batch_size):
            chunk_rows = rows[start : start + batch_size]
            chunk_enc = encoded[start : start + batch_size]
            logits = model(
                **collate(chunk_enc, tokenizer.pad_token_id)
            ).logits.argmax(dim=-1)
            for row, enc, piece_preds in zip(chunk_rows, chunk_enc, logits):
                votes: dict[int, list[int]] = defaultdict(list)
                for k, word in enumerate(enc["word_ids"]):
                    if word is not None:
                        votes[word].append(int(piece_preds[k]))
                pred_tags = []
                for i, tag in enumerate(row["tags"]):
                    if tag == IGNORE:
                        pred_tags.append(IGNORE)
                    elif i in votes:
                        ones = sum(votes[i])
                        zeros = len(votes[i]) - ones
                        # majority over the word's subtokens, ties go to 1
                        pred_tags.append(1 if ones >= zeros else 0)
                    else:
                        # word lost to truncation: no evidence, call it outside
                        pred_tags.append(0)
                out_rows.append({"sample_id": row["sample_id"], "pred_tags": pred_tags})
    return out_rows


def run_prediction(
    model_dir: str | Path,
    tagged_path: str | Path,
    output_path: str | Path,
    batch_size: int = 16,
    max_len: int = 512,
    strategy: str = ALL_SUBTOKENS,
) -> int:
    rows = load_tagged(tagged_path)
    out_rows = predict_rows(model_dir, rows, batch_size, max_len, strategy)
    lines = [json.dumps(r, ensure_ascii=False) for r in out_rows]
    Path(output_path).write_text(
        "\n".join(lines) + ("\n" if lines else ""), encoding="utf-8"
    )
    return len(out_rows)
