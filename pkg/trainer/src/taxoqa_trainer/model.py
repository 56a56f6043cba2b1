"""Model construction, the freezing policy and parameter fingerprints."""

from __future__ import annotations

import hashlib
from pathlib import Path

import torch
from tokenizers import Tokenizer, normalizers, pre_tokenizers, processors
from tokenizers.models import WordPiece
from transformers import BertConfig, BertForTokenClassification, BertTokenizerFast

from .vocab import build_vocab, write_vocab

# Fine-tuning freezes the embedding block and the first 11 encoder layers;
# everything above (the last encoder layer, dropout, classifier) trains.
FROZEN_ENCODER_LAYERS = 11

ID2LABEL = {0: "O", 1: "I-CONCEPT"}


def create_model(
    vocab_size: int,
    hidden_size: int = 32,
    num_layers: int = 12,
    num_heads: int = 2,
    intermediate_size: int = 64,
    max_position: int = 512,
    seed: int = 0,
) -> BertForTokenClassification:
    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=vocab_size,
        hidden_size=hidden_size,
        num_hidden_layers=num_layers,
        num_attention_heads=num_heads,
        intermediate_size=intermediate_size,
        max_position_embeddings=max_position,
        num_labels=len(ID2LABEL),
        id2label=ID2LABEL,
        label2id={v: k for k, v in ID2LABEL.items()},
    )
    return BertForTokenClassification(config)


def build_tokenizer(vocab: list[str]) -> BertTokenizerFast:
    # constructing from vocab_file alone leaves the fast backend with only
    # the special tokens (seen with transformers 5.x), so wire it up manually
    backend = Tokenizer(
        WordPiece({piece: i for i, piece in enumerate(vocab)}, unk_token="[UNK]")
    )
    backend.normalizer = normalizers.BertNormalizer(lowercase=True)
    backend.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    backend.post_processor = processors.BertProcessing(
        sep=("[SEP]", vocab.index("[SEP]")),
        cls=("[CLS]", vocab.index("[CLS]")),
    )
    return BertTokenizerFast(
        tokenizer_object=backend,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
        do_lower_case=True,
    )


def init_model_dir(
    rows: list[dict],
    outdir: str | Path,
    split_words: frozenset[str] = frozenset(),
    **model_kwargs,
) -> Path:
    """Create a ready-to-train checkpoint: vocab, tokenizer, random weights."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    vocab = build_vocab(rows, split_words=split_words)
    write_vocab(vocab, out / "vocab.txt")
    tokenizer = build_tokenizer(vocab)
    tokenizer.save_pretrained(out)
    model = create_model(len(vocab), **model_kwargs)
    model.save_pretrained(out)
    return out


def frozen_parameter_names(model: BertForTokenClassification) -> list[str]:
    total_layers = model.config.num_hidden_layers
    # never freeze the top layer, whatever the depth
    layer_count = min(FROZEN_ENCODER_LAYERS, max(total_layers - 1, 0))
    prefixes = ["bert.embeddings."] + [
        f"bert.encoder.layer.{i}." for i in range(layer_count)
    ]
    return [
        name
        for name, _ in model.named_parameters()
        if any(name.startswith(prefix) for prefix in prefixes)
    ]


def freeze_pretrained_layers(model: BertForTokenClassification) -> list[str]:
    """Disable gradients on embeddings and the first 11 encoder layers."""
    names = frozen_parameter_names(model)
    wanted = set(names)
    for name, param in model.named_parameters():
        if name in wanted:
            param.requires_grad_(False)
    return names


def parameter_hash(model: torch.nn.Module, names: list[str] | None = None) -> str:
    """SHA-256 over the named parameters' bytes, order-independent input."""
    state = dict(model.named_parameters())
    chosen = sorted(state) if names is None else sorted(names)
    digest = hashlib.sha256()
    for name in chosen:
        tensor = state[name].detach().cpu().contiguous()
        digest.update(name.encode("utf-8"))
        digest.update(tensor.numpy().tobytes())
    return digest.hexdigest()
