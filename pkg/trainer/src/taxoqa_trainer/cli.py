"""Command line front end: init-model, train, predict."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .data import ALL_SUBTOKENS, FIRST_SUBTOKEN_ONLY, load_tagged
from .model import init_model_dir
from .predict import run_prediction
from .train import TrainSpec, run_training


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taxoqa-trainer",
        description="Fine-tune a BERT token classifier on tagged-sample files",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init-model", help="create a tiny randomly initialized checkpoint")
    p.add_argument("--tagged", type=Path, required=True, help="tagged samples JSONL (vocabulary source)")
    p.add_argument("--output-dir", type=Path, required=True)
    p.add_argument("--hidden-size", type=int, default=32)
    p.add_argument("--layers", type=int, default=12)
    p.add_argument("--heads", type=int, default=2)
    p.add_argument("--intermediate-size", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--split-words",
        default="",
        help="comma-separated words stored as two vocabulary pieces",
    )

    p = sub.add_parser("train", help="fine-tune with frozen lower layers")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--train", type=Path, required=True, dest="train_path")
    p.add_argument("--val", type=Path, default=None, dest="val_path")
    p.add_argument("--output-dir", type=Path, required=True)
    p.add_argument("--epochs", type=int, default=6)
    p.add_argument("--lr", type=float, default=5e-3)
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--max-len", type=int, default=512)
    p.add_argument(
        "--strategy",
        choices=(ALL_SUBTOKENS, FIRST_SUBTOKEN_ONLY),
        default=ALL_SUBTOKENS,
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-freeze", action="store_true")

    p = sub.add_parser("predict", help="write word-level predictions JSONL")
    p.add_argument("--model", type=Path, required=True, help="checkpoint directory")
    p.add_argument("--tagged", type=Path, required=True)
    p.add_argument("--output", type=Path, required=True)
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--max-len", type=int, default=512)
    p.add_argument(
        "--strategy",
        choices=(ALL_SUBTOKENS, FIRST_SUBTOKEN_ONLY),
        default=ALL_SUBTOKENS,
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "init-model":
            split = frozenset(w.strip() for w in args.split_words.split(",") if w.strip())
            rows = load_tagged(args.tagged)
            out = init_model_dir(
                rows,
                args.output_dir,
                split_words=split,
                hidden_size=args.hidden_size,
                num_layers=args.layers,
                num_heads=args.heads,
                intermediate_size=args.intermediate_size,
                seed=args.seed,
            )
            print(f"initialized model at {out}")
        elif args.command == "train":
            spec = TrainSpec(
                model_dir=args.model,
                train_path=args.train_path,
                val_path=args.val_path,
                output_dir=args.output_dir,
                epochs=args.epochs,
                lr=args.lr,
                batch_size=args.batch_size,
                max_len=args.max_len,
                strategy=args.strategy,
                seed=args.seed,
                freeze=not args.no_freeze,
            )
            log = run_training(spec)
            for entry in log["epochs"]:
                val = entry["val_loss"]
                val_text = f"  val {val:.4f}" if val is not None else ""
                print(f"epoch {entry['epoch']}  train {entry['train_loss']:.4f}{val_text}")
            print(
                f"frozen params {log['frozen_parameters']}  "
                f"unchanged {log['frozen_hash_unchanged']}"
            )
        else:
            count = run_prediction(
                args.model,
                args.tagged,
                args.output,
                batch_size=args.batch_size,
                max_len=args.max_len,
                strategy=args.strategy,
            )
            print(f"wrote {count} predictions to {args.output}")
        return 0
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
