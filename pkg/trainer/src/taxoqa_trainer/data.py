"""Tagged-sample file reading and subword encoding.

Tagged rows carry word-level tags plus char spans in the joint
"sentence1 + ' ' + sentence2" coordinate space and the sentence2 offset.
Subword labels come from char overlap against those spans: specials and
title subtokens get -100, sentence2 subtokens inherit their word's tag
(continuations demoted to -100 under the first-subtoken-only strategy).
"""

from __future__ import annotations

import json
from pathlib import Path

import torch

IGNORE = -100
ALL_SUBTOKENS = "all-subtokens"
FIRST_SUBTOKEN_ONLY = "first-subtoken-only"


def load_tagged(path: str | Path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rows.append(json.loads(line))
    return rows


def encode_row(
    row: dict,
    tokenizer,
    max_len: int = 512,
    strategy: str = ALL_SUBTOKENS,
) -> dict:
    """Encode one row; returns plain lists, batching tensorizes later.

    word_ids maps each subtoken to its word index in row["tokens"] (None
    for specials, title subtokens and anything outside the word spans).
    """
    if strategy not in (ALL_SUBTOKENS, FIRST_SUBTOKEN_ONLY):
        raise ValueError(f"unknown alignment strategy {strategy!r}")
    enc = tokenizer(
        row["sentence1"],
        row["sentence2"],
        truncation=True,
        max_length=max_len,
        return_offsets_mapping=True,
    )
    spans = row["spans"]
    tags = row["tags"]
    offset = row["sentence2_offset"]
    labels: list[int] = []
    word_ids: list[int | None] = []
    word = row["sentence1_len"]
    seen: set[int] = set()
    for seq_id, (start, end) in zip(enc.sequence_ids(), enc["offset_mapping"]):
        if seq_id != 1 or start == end:
            labels.append(IGNORE)
            word_ids.append(None)
            continue
        joint_start, joint_end = start + offset, end + offset
        while word < len(spans) and spans[word][1] <= joint_start:
            word += 1
        if word >= len(spans) or joint_end <= spans[word][0]:
            labels.append(IGNORE)
            word_ids.append(None)
            continue
        word_ids.append(word)
        if strategy == FIRST_SUBTOKEN_ONLY and word in seen:
            labels.append(IGNORE)
        else:
            seen.add(word)
            labels.append(int(tags[word]))
    return {
        "input_ids": enc["input_ids"],
        "token_type_ids": enc["token_type_ids"],
        "attention_mask": enc["attention_mask"],
        "labels": labels,
        "word_ids": word_ids,
    }


def collate(encoded: list[dict], pad_token_id: int) -> dict[str, torch.Tensor]:
    width = max(len(e["input_ids"]) for e in encoded)

    def padded(key: str, fill: int) -> torch.Tensor:
        return torch.tensor(
            [e[key] + [fill] * (width - len(e[key])) for e in encoded],
            dtype=torch.long,
        )

    return {
        "input_ids": padded("input_ids", pad_token_id),
        "token_type_ids": padded("token_type_ids", 0),
        "attention_mask": padded("attention_mask", 0),
        "labels": padded("labels", IGNORE),
    }
