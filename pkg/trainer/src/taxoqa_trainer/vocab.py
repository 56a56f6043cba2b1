"""WordPiece vocabulary construction from tagged-sample files.

The corpus words become whole vocabulary entries, so most words encode as a
single piece.  Words listed in split_words are stored as two pieces instead
(head + ##tail), which is how tests exercise multi-subtoken alignment
without a real pretrained vocabulary.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

SPECIAL_TOKENS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]


def build_vocab(rows: Iterable[dict], split_words: frozenset[str] = frozenset()) -> list[str]:
    words = sorted({token.lower() for row in rows for token in row["tokens"]})
    vocab = list(SPECIAL_TOKENS)
    seen = set(vocab)
    for word in words:
        if word in split_words and len(word) >= 2:
            mid = len(word) // 2
            pieces = [word[:mid], "##" + word[mid:]]
        else:
            pieces = [word]
        for piece in pieces:
            if piece not in seen:
                seen.add(piece)
                vocab.append(piece)
    return vocab


def write_vocab(vocab: list[str], path: str | Path) -> None:
    Path(path).write_text("\n".join(vocab) + "\n", encoding="utf-8")
