"""Randomized case builders shared by the metric and taxonomy test suites.

Cases mirror the layout of real tagged samples: an IGNORE title prefix,
then category segments separated by single delimiter positions.  Gold marks
whole segments or nothing, which is the precondition the classification
metric checks.  Two prediction variants come back: a free one (any tag
anywhere, exercises masking and bridging chunks) and a segmented one (1s
only inside segments, the domain on which the dominance property holds).
"""

from __future__ import annotations

import random

IGN = -100


def random_case(rng: random.Random) -> tuple[list[int], list[int], list[int], list[tuple[int, int]]]:
    """Return (pred_free, pred_segmented, gold, segments), length <= 30."""
    title = rng.randrange(0, 6)
    gold = [IGN] * title
    segments: list[tuple[int, int]] = []
    pos = title
    for k in range(rng.randrange(0, 5)):
        if k:
            gold.append(0)
            pos += 1
        width = rng.randrange(1, 5)
        segments.append((pos, pos + width))
        value = 1 if rng.random() < 0.5 else 0
        gold.extend([value] * width)
        pos += width
    pred_free = [rng.choice((IGN, 0, 1)) for _ in gold]
    pred_seg = []
    for i in range(len(gold)):
        inside = any(s <= i < e for s, e in segments)
        pred_seg.append(rng.randrange(2) if inside else 0)
    return pred_free, pred_seg, gold, segments


def random_tree_entries(rng: random.Random, max_nodes: int = 200) -> list[tuple[str, str, str | None]]:
    """Flat entries for a random tree; parents always precede children."""
    n = rng.randrange(1, max_nodes + 1)
    entries: list[tuple[str, str, str | None]] = []
    for i in range(n):
        parent = None if i == 0 or rng.random() < 0.15 else f"t{rng.randrange(i)}"
        entries.append((f"t{i}", f"name {rng.randrange(40)}", parent))
    return entries


def brute_force_subtree_sizes(
    entries: list[tuple[str, str, str | None]], level: int
) -> list[int]:
    """Subtree sizes at a level, by walking parent chains only.

    No traversal or recursion shared with the library: each node's level is
    the length of its parent chain, and a subtree's size is the number of
    nodes whose chain passes through its parent node.
    """
    root = "__root__"
    parent = {root: None}
    for nid, _, pid in entries:
        parent[nid] = pid if pid is not None else root

    def chain(nid: str) -> list[str]:
        out = [nid]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    level_of = {nid: len(chain(nid)) for nid in parent}
    anchors = [nid for nid in parent if level_of[nid] == level]
    sizes = []
    for anchor in anchors:
        sizes.append(sum(1 for nid in parent if anchor in chain(nid)))
    return sorted(sizes)
