"""Command line front end.

Subcommands: tree-stats, sample, build, reorder, eval.  All file output is
JSON/JSONL written atomically (temp file then rename), with fixed key order,
so reruns on identical inputs produce byte-identical files.  The only
environment variable consulted is TAXOQA_OUTPUT_DIR, the default for
--output-dir.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import zlib
from dataclasses import dataclass
from pathlib import Path

from . import builder, metrics, sampler, tagging, taxonomy
from .errors import EmptyCorpus, InvalidEntry, LengthMismatch, LevelOutOfRange, TaxoqaError

DEFAULT_OUTPUT_DIR_VAR = "TAXOQA_OUTPUT_DIR"

TAGGED_FILE = "tagged_samples.jsonl"
BUILD_REPORT_FILE = "build_report.json"
SAMPLED_FILE = "sampled_corpus.jsonl"
PLAN_FILE = "sample_plan.json"
REORDERED_FILE = "reordered_samples.jsonl"
EVAL_REPORT_FILE = "eval_report.json"


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings for one invocation."""

    output_dir: Path
    fmt: str
    taxonomy_path: Path | None = None
    catalog_path: Path | None = None
    corpus_path: Path | None = None
    input_path: Path | None = None
    predictions: tuple[Path, ...] = ()
    root_name: str = taxonomy.DEFAULT_ROOT_NAME
    level: int = 3
    allow_level_1: bool = False
    delimiter: str = builder.DEFAULT_DELIMITER
    sanitize: bool = False
    max_len: int = 512
    seed: int = 0
    confidence: float = 0.95
    margin: float = 0.05
    mode: str = "both"


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_jsonl(path: Path, rows) -> None:
    lines = [json.dumps(row, ensure_ascii=False) for row in rows]
    _atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def _write_json(path: Path, obj) -> None:
    _atomic_write_text(path, json.dumps(obj, ensure_ascii=False, indent=2) + "\n")


def _emit(obj: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(obj, ensure_ascii=False, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_tree_stats(config: RunConfig) -> int:
    tree = taxonomy.read_taxonomy_file(config.taxonomy_path, root_name=config.root_name)
    stats = [taxonomy.partition_stats(tree, lvl) for lvl in range(1, tree.height + 1)]
    obj = {
        "node_count": len(tree),
        "height": tree.height,
        "levels": [s.as_dict() for s in stats],
    }
    lines = [
        f"nodes {len(tree)}  height {tree.height}",
        f"{'level':>5}  {'subtrees':>8}  {'mean':>6}  {'max':>6}  {'min':>6}",
    ]
    for s in stats:
        lines.append(
            f"{s.parent_level:>5}  {s.subtree_count:>8}  "
            f"{s.mean_nodes_display:>6}  {s.max_nodes:>6}  {s.min_nodes:>6}"
        )
    _emit(obj, config.fmt, lines)
    return 0


def cmd_sample(config: RunConfig) -> int:
    records = builder.read_corpus_file(config.corpus_path)
    if not records:
        raise EmptyCorpus(f"{config.corpus_path} holds no records")
    plan = sampler.make_plan(
        len(records), confidence=config.confidence, margin=config.margin
    )
    drawn = sampler.draw_sample(records, plan.size, config.seed)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    plan_obj = dict(plan.as_dict(), seed=config.seed)
    _write_json(config.output_dir / PLAN_FILE, plan_obj)
    _write_jsonl(config.output_dir / SAMPLED_FILE, (builder.record_to_dict(r) for r in drawn))
    _emit(
        plan_obj,
        config.fmt,
        [
            f"population {plan.population}  confidence {plan.confidence}  "
            f"margin {plan.margin}  size {plan.size}  seed {config.seed}"
        ],
    )
    return 0


def cmd_build(config: RunConfig) -> int:
    tree = taxonomy.read_taxonomy_file(config.taxonomy_path, root_name=config.root_name)
    catalog = builder.read_catalog_file(config.catalog_path)
    records = builder.read_corpus_file(config.corpus_path)
    if not records:
        raise EmptyCorpus(f"{config.corpus_path} holds no records")
    if config.level == 1 and not config.allow_level_1:
        raise LevelOutOfRange(
            "level 1 pairs every record with the whole tree; pass --allow-level-1 "
            "if that is really wanted"
        )
    subtree_count = len(taxonomy.subtrees_at_level(tree, config.level))
    samples = builder.build_samples(
        records,
        catalog,
        tree,
        config.level,
        delimiter=config.delimiter,
        sanitize=config.sanitize,
    )
    rows = []
    overflow = 0
    for sample in samples:
        seq = tagging.tag_sample(sample)
        if len(seq.tokens) > config.max_len:
            overflow += 1
        rows.append(tagging.tagged_record(sample, seq))
    considered = len(records) * subtree_count
    report = {
        "records": len(records),
        "subtrees": subtree_count,
        "level": config.level,
        "delimiter": config.delimiter,
        "max_len": config.max_len,
        "pairs_considered": considered,
        "pairs_emitted": len(samples),
        "pairs_filtered": considered - len(samples),
        "overflow": overflow,
    }
    config.output_dir.mkdir(parents=True, exist_ok=True)
    _write_jsonl(config.output_dir / TAGGED_FILE, rows)
    _write_json(config.output_dir / BUILD_REPORT_FILE, report)
    _emit(
        report,
        config.fmt,
        [
            f"built {len(samples)} samples from {len(records)} records x "
            f"{subtree_count} subtrees (filtered {report['pairs_filtered']}, "
            f"overflow {overflow})"
        ],
    )
    return 0


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise InvalidEntry(f"{path}:{lineno}: {exc}") from None
    return rows


def cmd_reorder(config: RunConfig) -> int:
    rows = _read_jsonl(config.input_path)
    out_rows = []
    for row in rows:
        sample, _ = tagging.parse_tagged_record(row, where=str(config.input_path))
        categories = builder.CategoriesList(
            subtree_id=sample.subtree_id,
            rendered=sample.sentence2,
            segments=builder.segments_from_rendered(sample.sentence2, config.delimiter),
        )
        # Independent per-sample seed so one global seed cannot leak the
        # original order from sample to sample.
        sample_seed = zlib.crc32(f"{config.seed}:{sample.sample_id}".encode("utf-8"))
        shuffled, _ = builder.reorder_categories(
            sample, categories, sample_seed, delimiter=config.delimiter
        )
        out_rows.append(tagging.tagged_record(shuffled, tagging.tag_sample(shuffled)))
    config.output_dir.mkdir(parents=True, exist_ok=True)
    _write_jsonl(config.output_dir / REORDERED_FILE, out_rows)
    _emit(
        {"samples": len(out_rows), "seed": config.seed},
        config.fmt,
        [f"reordered {len(out_rows)} samples with seed {config.seed}"],
    )
    return 0


def _score_predictions(
    tagged_rows: list[dict], preds: dict[str, list[int]], config: RunConfig
) -> dict:
    known = {row["sample_id"] for row in tagged_rows}
    for sample_id in preds:
        if sample_id not in known:
            raise InvalidEntry(f"prediction for unknown sample_id {sample_id!r}")
    strict_pairs = []
    class_triples = []
    skipped = 0
    for row in tagged_rows:
        sample, seq = tagging.parse_tagged_record(row)
        pred = preds.get(sample.sample_id)
        if pred is None:
            skipped += 1
            continue
        if len(pred) != len(seq.tags):
            raise LengthMismatch(
                f"sample {sample.sample_id}: {len(pred)} predicted tags for "
                f"{len(seq.tags)} gold tags"
            )
        strict_pairs.append((pred, list(seq.tags)))
        if config.mode in ("both", "classification"):
            segments = builder.segments_from_rendered(sample.sentence2, config.delimiter)
            ranges = tagging.segment_token_ranges(seq, segments)
            class_triples.append((pred, list(seq.tags), ranges))
    entry: dict = {
        "samples_scored": len(strict_pairs),
        "samples_skipped": skipped,
    }
    if config.mode in ("both", "strict"):
        entry["strict"] = metrics.evaluate_strict_corpus(strict_pairs).as_dict()
    if config.mode in ("both", "classification"):
        entry["classification"] = metrics.evaluate_classification_corpus(
            class_triples
        ).as_dict()
    return entry


def _entry_lines(label: str, entry: dict) -> list[str]:
    lines = [
        f"{label}: scored {entry['samples_scored']}  skipped {entry['samples_skipped']}"
    ]
    for mode in ("strict", "classification"):
        if mode in entry:
            r = entry[mode]
            lines.append(
                f"  {mode:<14} P {r['precision']:.4f}  R {r['recall']:.4f}  "
                f"F1 {r['f1']:.4f}  acc {r['accuracy']:.4f}  "
                f"(tp {r['tp']}, pred {r['pred_count']}, gold {r['gold_count']})"
            )
    return lines


def cmd_eval(config: RunConfig) -> int:
    tagged_rows = _read_jsonl(config.input_path)
    entries = []
    lines = []
    for pred_path in config.predictions:
        preds: dict[str, list[int]] = {}
        for row in _read_jsonl(pred_path):
            sid = row.get("sample_id")
            tags = row.get("pred_tags")
            if not isinstance(sid, str) or not isinstance(tags, list):
                raise InvalidEntry(f"{pred_path}: rows need sample_id and pred_tags")
            preds[sid] = [int(t) for t in tags]
        entry = dict(
            {"predictions": str(pred_path)},
            **_score_predictions(tagged_rows, preds, config),
        )
        entries.append(entry)
        lines.extend(_entry_lines(str(pred_path), entry))
    report = entries[0] if len(entries) == 1 else {"epochs": entries}
    config.output_dir.mkdir(parents=True, exist_ok=True)
    _write_json(config.output_dir / EVAL_REPORT_FILE, report)
    _emit(report, config.fmt, lines)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--output-dir",
        type=Path,
        default=None,
        help=f"where files go (default: ${DEFAULT_OUTPUT_DIR_VAR} or '.')",
    )
    p.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taxoqa",
        description=(
            "Build extractive QA samples from a labeled corpus via a "
            "label-taxonomy partition, and score tag predictions"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree-stats", help="subtree partition statistics per level")
    p.add_argument("--taxonomy", type=Path, required=True)
    p.add_argument("--root-name", default=taxonomy.DEFAULT_ROOT_NAME)
    _add_common(p)

    p = sub.add_parser("sample", help="draw a statistically sized corpus subsample")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("build", help="build and tag QA samples")
    p.add_argument("--taxonomy", type=Path, required=True)
    p.add_argument("--catalog", type=Path, required=True)
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--root-name", default=taxonomy.DEFAULT_ROOT_NAME)
    p.add_argument("--level", type=int, default=3)
    p.add_argument("--allow-level-1", action="store_true")
    p.add_argument("--delimiter", default=builder.DEFAULT_DELIMITER)
    p.add_argument("--sanitize", action="store_true")
    p.add_argument("--max-len", type=int, default=512)
    _add_common(p)

    p = sub.add_parser("reorder", help="shuffle categories lists of tagged samples")
    p.add_argument("--input", type=Path, required=True, help="tagged samples JSONL")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delimiter", default=builder.DEFAULT_DELIMITER)
    _add_common(p)

    p = sub.add_parser("eval", help="score prediction files against tagged samples")
    p.add_argument("--tagged", type=Path, required=True, dest="input")
    p.add_argument("--predictions", type=Path, required=True, nargs="+")
    p.add_argument("--mode", choices=("both", "strict", "classification"), default="both")
    p.add_argument("--delimiter", default=builder.DEFAULT_DELIMITER)
    _add_common(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    output_dir = args.output_dir
    if output_dir is None:
        output_dir = Path(os.environ.get(DEFAULT_OUTPUT_DIR_VAR, "."))
    return RunConfig(
        output_dir=output_dir,
        fmt=args.fmt,
        taxonomy_path=getattr(args, "taxonomy", None),
        catalog_path=getattr(args, "catalog", None),
        corpus_path=getattr(args, "corpus", None),
        input_path=getattr(args, "input", None),
        predictions=tuple(getattr(args, "predictions", ()) or ()),
        root_name=getattr(args, "root_name", taxonomy.DEFAULT_ROOT_NAME),
        level=getattr(args, "level", 3),
        allow_level_1=getattr(args, "allow_level_1", False),
        delimiter=getattr(args, "delimiter", builder.DEFAULT_DELIMITER),
        sanitize=getattr(args, "sanitize", False),
        max_len=getattr(args, "max_len", 512),
        seed=getattr(args, "seed", 0),
        confidence=getattr(args, "confidence", 0.95),
        margin=getattr(args, "margin", 0.05),
        mode=getattr(args, "mode", "both"),
    )


_COMMANDS = {
    "tree-stats": cmd_tree_stats,
    "sample": cmd_sample,
    "build": cmd_build,
    "reorder": cmd_reorder,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _config_from_args(args)
    try:
        return _COMMANDS[args.command](config)
    except (TaxoqaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
