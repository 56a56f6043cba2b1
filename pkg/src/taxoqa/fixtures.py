"""Bundled demo and test data generators.

Everything here is deterministic: generators take no input or a fixed seed,
so files written twice are byte-identical.  Three data sets ship:

- mini: a two-domain thesaurus slice plus a handful of document records,
  small enough to trace by hand.
- toy: synthetic records over the mini taxonomy, titles mention the concept
  names verbatim, sized for quick model fine-tuning runs.
- wide: one large flat subdomain and single-concept records, giving tag
  sequences where about 1% of scored positions are 1.
- a full-size synthetic taxonomy shaped like the 2022 EUROVOC thesaurus
  export: height 8, 21 domains, 127 subdomains, 8274 nodes including the
  root, with the same per-level subtree size spread (means 394/65/15,
  maxima 1597/532/80, minima 137/1/1).

Run `python -m taxoqa.fixtures OUTDIR` to write all of them as JSONL.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

from .builder import DocumentRecord, write_corpus_file

MINI_TAXONOMY = [
    ("0400", "agri-foodstuffs", None),
    ("6006", "beverages and sugar", "0400"),
    ("4355", "beverage", "6006"),
    ("4356", "alcoholic beverage", "4355"),
    ("4357", "soft drink", "4355"),
    ("4358", "sugar", "6006"),
    ("4359", "white sugar", "4358"),
    ("4360", "raw sugar", "4358"),
    ("4361", "sugar product", "4358"),
    ("6011", "plant product", "0400"),
    ("6021", "cereals", "6011"),
    ("6022", "rice", "6011"),
    ("2000", "trade", None),
    ("2006", "trade policy", "2000"),
    ("2021", "export policy", "2006"),
    ("2022", "export refund", "2021"),
    ("2023", "export licence", "2021"),
    ("2031", "import policy", "2006"),
    ("6600", "energy", None),
    ("6606", "energy policy", "6600"),
    ("6616", "energy supply", "6606"),
]

# Catalog titles are what records reference; case varies on purpose, the
# resolver lowercases.
MINI_CATALOG = {
    "4356": "alcoholic beverage",
    "4357": "soft drink",
    "4359": "White sugar",
    "4360": "raw sugar",
    "4361": "sugar product",
    "6021": "cereals",
    "6022": "rice",
    "2022": "Export refund",
    "2023": "export licence",
    "2031": "import policy",
    "6616": "energy supply",
    "9999": "fisheries",
}

MINI_RECORDS = [
    DocumentRecord(
        record_id="32007R0464",
        title=(
            "Commission Regulation (EC) No 464/2007 of 25 April 2007 fixing the "
            "export refunds on white and raw sugar exported without further processing"
        ),
        text=(
            "Export refunds on the products listed in Article 1(1)(b) of Regulation "
            "(EC) No 318/2006 are fixed in the Annex to this Regulation."
        ),
        concept_ids=("4359", "4360", "2022"),
    ),
    DocumentRecord(
        record_id="31995L0002",
        title=(
            "European Parliament and Council Directive 95/2/EC on food additives "
            "other than colours and sweeteners in soft drink production"
        ),
        text="This Directive concerns additives used in drink production.",
        concept_ids=("4357",),
    ),
    DocumentRecord(
        record_id="31999R1234",
        title=(
            "Commission Regulation laying down detailed rules for the system of "
            "import and export licences for cereals and rice"
        ),
        text="Special detailed rules apply to licences for cereals and for rice.",
        concept_ids=("2023", "2031", "6021"),
    ),
    DocumentRecord(
        record_id="32001D0001",
        title="Council Decision on the conclusion of a fisheries partnership agreement",
        text="The fisheries agreement is approved on behalf of the Community.",
        concept_ids=("9999",),
    ),
]

# Leaf concepts with short title connectors, used to synthesize toy records.
_TOY_POOL = [
    ("4356", "alcoholic beverage"),
    ("4357", "soft drink"),
    ("4359", "white sugar"),
    ("4360", "raw sugar"),
    ("4361", "sugar product"),
    ("6021", "cereals"),
    ("6022", "rice"),
    ("2022", "export refund"),
    ("2023", "export licence"),
    ("2031", "import policy"),
    ("6616", "energy supply"),
]

_TOY_TEMPLATES = [
    "commission regulation fixing the {} for the current marketing year",
    "council directive on common rules concerning {}",
    "commission decision amending the arrangements applicable to {}",
    "regulation laying down detailed rules for {} in the member states",
    "council regulation establishing measures on {}",
]


def toy_corpus_records(count: int = 80, seed: int = 7) -> list[DocumentRecord]:
    """Records whose titles literally mention their concept names.

    Mentioning the names makes the extraction task learnable from the title
    alone, which is what a small fine-tuning smoke run needs.
    """
    rng = random.Random(seed)
    records = []
    for i in range(count):
        picked = rng.sample(_TOY_POOL, rng.randint(1, 3))
        names = [name for _, name in picked]
        mention = names[0] if len(names) == 1 else ", ".join(names[:-1]) + " and " + names[-1]
        title = _TOY_TEMPLATES[rng.randrange(len(_TOY_TEMPLATES))].format(mention)
        records.append(
            DocumentRecord(
                record_id=f"3200{5 + i % 3}R{1000 + i}",
                title=title,
                text=f"Synthetic record {i} referencing {mention}.",
                concept_ids=tuple(cid for cid, _ in picked),
            )
        )
    return records


_WIDE_ADJECTIVES = [
    "coated", "rolled", "cast", "drawn", "forged",
    "woven", "sintered", "molded", "brushed", "anodized",
]
_WIDE_NOUNS = ["steel", "copper", "nickel", "polymer", "ceramic", "glass"]


def wide_taxonomy_entries() -> list[tuple[str, str, str | None]]:
    """One flat 60-leaf subdomain under a single domain.

    With two-word names throughout, a rendered level-3 categories list has
    182 word tokens (61 names, 60 commas) and a single-concept record tags
    just 2 of them, so gold 1s sit near 1% of scored positions.
    """
    entries: list[tuple[str, str, str | None]] = [
        ("m000", "materials", None),
        ("m001", "materials catalog", "m000"),
    ]
    i = 0
    for adj in _WIDE_ADJECTIVES:
        for noun in _WIDE_NOUNS:
            entries.append((f"m{100 + i}", f"{adj} {noun}", "m001"))
            i += 1
    return entries


def wide_catalog_entries() -> dict[str, str]:
    return {nid: name for nid, name, parent in wide_taxonomy_entries() if parent == "m001"}


def wide_corpus_records(count: int = 50) -> list[DocumentRecord]:
    leaves = [nid for nid, _, parent in wide_taxonomy_entries() if parent == "m001"]
    records = []
    for i in range(count):
        cid = leaves[(i * 7 + 3) % len(leaves)]
        records.append(
            DocumentRecord(
                record_id=f"39{i:06d}",
                title=f"commission notice {i} on conformity assessment of listed materials",
                text=f"Synthetic sparse record {i}.",
                concept_ids=(cid,),
            )
        )
    return records


def synthetic_eurovoc_entries() -> list[tuple[str, str, str | None]]:
    """A tree matching the real EUROVOC thesaurus's shape statistics.

    Construction is exact, not sampled.  Per-domain subdomain subtree sizes
    and per-subdomain branch sizes are fixed lists whose totals hit every
    target: 21 domain subtrees (sizes sum 8273, max 1597, min 137), 127
    subdomain subtrees (sum 8252, max 532, min 1), 547 level-4 subtrees
    (sum 8125, max 80, min 1), height 8.
    """
    entries: list[tuple[str, str, str | None]] = []
    serial = [0]

    def add(name: str, parent: str | None) -> str:
        serial[0] += 1
        nid = f"n{serial[0]:05d}"
        entries.append((nid, name, parent))
        return nid

    def add_branch(size: int, parent: str, label: str) -> None:
        # One level-4 node owning `size - 1` descendants: a spine going as
        # deep as level 8, remaining nodes as level-5 leaves.
        top = add(f"branch {label}", parent)
        rest = size - 1
        spine = min(rest, 4)
        holder = top
        for depth in range(spine):
            holder = add(f"{label} spine {depth}", holder)
        for extra in range(rest - spine):
            add(f"{label} leaf {extra}", top)

    # Branch-size lists keyed by subdomain subtree size.
    branch_plans = {
        532: [80] + [64] * 7 + [1] * 3,
        89: [22] * 4,
        88: [29] * 3,
        69: [14, 14, 14, 13, 13],
        68: [23, 22, 22],
        67: [22, 22, 22],
        58: [15, 14, 14, 14],
        1: [],
    }
    # Size-57 subdomains alternate between two plans; exactly 33 of the 80
    # take the five-branch variant so the level-4 subtree count lands on 547.
    plan_57_five = [12, 11, 11, 11, 11]
    plan_57_four = [14] * 4
    seen_57 = [0]

    def add_subdomain(size: int, parent: str, label: str) -> None:
        sub = add(f"subdomain {label}", parent)
        if size == 57:
            plan = plan_57_five if seen_57[0] < 33 else plan_57_four
            seen_57[0] += 1
        else:
            plan = branch_plans[size]
        assert 1 + sum(plan) == size
        for k, branch_size in enumerate(plan):
            add_branch(branch_size, sub, f"{label} {k:02d}")

    # Domain 0: 1 + 532 + 8 * 89 + 4 * 88 = 1597 nodes.
    dom = add("domain 00", None)
    add_subdomain(532, dom, "00 00")
    for s in range(8):
        add_subdomain(89, dom, f"00 {s + 1:02d}")
    for s in range(4):
        add_subdomain(88, dom, f"00 {s + 9:02d}")
    # Domains 1..16: 1 + 5 * 57 + 58 = 344 nodes each.
    for d in range(1, 17):
        dom = add(f"domain {d:02d}", None)
        for s in range(5):
            add_subdomain(57, dom, f"{d:02d} {s:02d}")
        add_subdomain(58, dom, f"{d:02d} 05")
    # Domains 17..19: 1 + 4 * 69 + 68 = 345 nodes each.
    for d in range(17, 20):
        dom = add(f"domain {d:02d}", None)
        for s in range(4):
            add_subdomain(69, dom, f"{d:02d} {s:02d}")
        add_subdomain(68, dom, f"{d:02d} 04")
    # Domain 20: 1 + 1 + 67 + 68 = 137 nodes.
    dom = add("domain 20", None)
    add_subdomain(1, dom, "20 00")
    add_subdomain(67, dom, "20 01")
    add_subdomain(68, dom, "20 02")

    assert len(entries) == 8273
    return entries


def _write_taxonomy_entries(entries, path: Path) -> None:
    lines = [
        json.dumps({"id": nid, "name": name, "parent_id": parent}, ensure_ascii=False)
        for nid, name, parent in entries
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_catalog(names: dict[str, str], path: Path) -> None:
    lines = [
        json.dumps({"id": cid, "title": title}, ensure_ascii=False)
        for cid, title in names.items()
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_demo_files(outdir: str | Path) -> list[Path]:
    """Write every bundled data set under outdir; returns the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    def emit(name: str, writer, *args) -> None:
        path = out / name
        writer(*args, path)
        paths.append(path)

    emit("mini_taxonomy.jsonl", _write_taxonomy_entries, MINI_TAXONOMY)
    emit("mini_catalog.jsonl", _write_catalog, MINI_CATALOG)
    emit("mini_corpus.jsonl", write_corpus_file, MINI_RECORDS)
    emit("toy_corpus.jsonl", write_corpus_file, toy_corpus_records())
    emit("wide_taxonomy.jsonl", _write_taxonomy_entries, wide_taxonomy_entries())
    emit("wide_catalog.jsonl", _write_catalog, wide_catalog_entries())
    emit("wide_corpus.jsonl", write_corpus_file, wide_corpus_records())
    emit("eurovoc_shaped_taxonomy.jsonl", _write_taxonomy_entries, synthetic_eurovoc_entries())
    return paths


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "demo_data"
    for written in write_demo_files(target):
        print(written)
