"""Label-hierarchy loading, subtree enumeration and partition statistics.

The taxonomy arrives as a flat list of (id, name, parent_id) entries.  A
synthetic root is always inserted above the top-level entries so the result
is a single tree; with the default root name "eurovoc" the root sits at
level 1 and the thesaurus domains at level 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    CycleDetected,
    DanglingParent,
    DuplicateId,
    EmptySource,
    InvalidEntry,
    LevelOutOfRange,
)

DEFAULT_ROOT_NAME = "eurovoc"


@dataclass(frozen=True)
class TaxonomyNode:
    """One concept in the hierarchy.  Root has parent_id None and level 1."""

    id: str
    name: str
    parent_id: str | None
    level: int


@dataclass(frozen=True)
class Subtree:
    """A parent node plus every descendant, in pre-order.

    member_ids[0] is the parent itself, so node_count includes it.
    """

    parent_id: str
    member_ids: tuple[str, ...]
    node_count: int


@dataclass(frozen=True)
class PartitionStats:
    """Size statistics for the subtree partition rooted at one level.

    mean_nodes stays exact (a Fraction); mean_nodes_display rounds it
    half-up to an integer for table output.
    """

    parent_level: int
    subtree_count: int
    mean_nodes: Fraction
    max_nodes: int
    min_nodes: int

    @property
    def mean_nodes_display(self) -> int:
        return int(self.mean_nodes + Fraction(1, 2))

    def as_dict(self) -> dict:
        return {
            "parent_level": self.parent_level,
            "subtree_count": self.subtree_count,
            "mean_nodes": float(self.mean_nodes),
            "mean_nodes_display": self.mean_nodes_display,
            "max_nodes": self.max_nodes,
            "min_nodes": self.min_nodes,
        }


class TaxonomyTree:
    """Immutable tree with deterministic child order (source order)."""

    def __init__(
        self,
        nodes: Mapping[str, TaxonomyNode],
        children: Mapping[str, tuple[str, ...]],
        root_id: str,
    ) -> None:
        self._nodes = dict(nodes)
        self._children = dict(children)
        self.root_id = root_id
        self.height = max(n.level for n in self._nodes.values())

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    @property
    def root(self) -> TaxonomyNode:
        return self._nodes[self.root_id]

    def node(self, node_id: str) -> TaxonomyNode:
        return self._nodes[node_id]

    def children(self, node_id: str) -> tuple[str, ...]:
        return self._children.get(node_id, ())

    def iter_preorder(self, start_id: str | None = None) -> Iterator[str]:
        """Yield node ids depth-first, children in source order."""
        stack = [self.root_id if start_id is None else start_id]
        while stack:
            nid = stack.pop()
            yield nid
            stack.extend(reversed(self._children.get(nid, ())))

    def nodes_at_level(self, level: int) -> list[str]:
        """Ids of all nodes at the given level, in pre-order."""
        return [nid for nid in self.iter_preorder() if self._nodes[nid].level == level]

    def to_entries(self) -> list[dict]:
        """Flat entries in pre-order, synthetic root omitted.

        Children of the root come out with parent_id None, so feeding the
        result back to load_taxonomy reconstructs an identical tree.
        """
        out = []
        for nid in self.iter_preorder():
            if nid == self.root_id:
                continue
            node = self._nodes[nid]
            parent = None if node.parent_id == self.root_id else node.parent_id
            out.append({"id": node.id, "name": node.name, "parent_id": parent})
        return out


def _entry_fields(entry, index: int) -> tuple[str, str, str | None]:
    if isinstance(entry, Mapping):
        try:
            raw = (entry["id"], entry["name"], entry.get("parent_id"))
        except KeyError as exc:
            raise InvalidEntry(f"entry {index}: missing key {exc}") from None
    else:
        raw = tuple(entry)
        if len(raw) != 3:
            raise InvalidEntry(f"entry {index}: expected (id, name, parent_id)")
    node_id, name, parent_id = raw
    if not isinstance(node_id, str) or not node_id:
        raise InvalidEntry(f"entry {index}: id must be a non-empty string")
    if not isinstance(name, str) or not name.strip():
        raise InvalidEntry(f"entry {index}: name must be a non-empty string")
    if parent_id is not None and (not isinstance(parent_id, str) or not parent_id):
        raise InvalidEntry(f"entry {index}: parent_id must be null or a non-empty string")
    return node_id, name, parent_id


def load_taxonomy(entries: Iterable, root_name: str = DEFAULT_ROOT_NAME) -> TaxonomyTree:
    """Build a TaxonomyTree from flat entries.

    Entries are (id, name, parent_id) tuples or dicts with those keys;
    parent_id None means top level.  A synthetic root (id "__<root_name>__",
    level 1) is inserted above the top-level entries.  Names are lowercased.
    Source order defines child order everywhere.
    """
    root_id = f"__{root_name}__"
    order: list[str] = []
    names: dict[str, str] = {}
    parents: dict[str, str] = {}
    for index, entry in enumerate(entries):
        node_id, name, parent_id = _entry_fields(entry, index)
        if node_id in names:
            raise DuplicateId(f"duplicate id {node_id!r}")
        if node_id == root_id:
            raise DuplicateId(f"id {node_id!r} collides with the synthetic root")
        order.append(node_id)
        names[node_id] = name.strip().lower()
        parents[node_id] = root_id if parent_id is None else parent_id
    if not order:
        raise EmptySource("taxonomy source has no entries")

    children: dict[str, list[str]] = {root_id: []}
    for nid in order:
        pid = parents[nid]
        if pid != root_id and pid not in names:
            raise DanglingParent(f"node {nid!r} references unknown parent {pid!r}")
        children.setdefault(pid, [])
        children.setdefault(nid, [])
        children[pid].append(nid)

    levels = {root_id: 1}
    queue = [root_id]
    while queue:
        nid = queue.pop(0)
        for child in children[nid]:
            levels[child] = levels[nid] + 1
            queue.append(child)
    unreachable = [nid for nid in order if nid not in levels]
    if unreachable:
        # Walk parent links from one stranded node to show the loop.
        path, seen = [unreachable[0]], {unreachable[0]}
        while True:
            nxt = parents[path[-1]]
            path.append(nxt)
            if nxt in seen:
                break
            seen.add(nxt)
        raise CycleDetected(" -> ".join(path))

    nodes = {
        root_id: TaxonomyNode(root_id, root_name.strip().lower(), None, 1),
    }
    for nid in order:
        nodes[nid] = TaxonomyNode(nid, names[nid], parents[nid], levels[nid])
    return TaxonomyTree(nodes, {k: tuple(v) for k, v in children.items()}, root_id)


def subtrees_at_level(tree: TaxonomyTree, level: int) -> list[Subtree]:
    """Partition the tree into the subtrees rooted at the given level.

    Returned in pre-order of their parents.  Each subtree counts its parent
    among its members, so level 1 yields one subtree covering the whole tree.
    """
    if not 1 <= level <= tree.height:
        raise LevelOutOfRange(f"level {level} outside [1, {tree.height}]")
    out = []
    for parent_id in tree.nodes_at_level(level):
        members = tuple(tree.iter_preorder(parent_id))
        out.append(Subtree(parent_id=parent_id, member_ids=members, node_count=len(members)))
    return out


def partition_stats(tree: TaxonomyTree, level: int) -> PartitionStats:
    """Count/mean/max/min subtree sizes for one partition level."""
    subtrees = subtrees_at_level(tree, level)
    counts = [s.node_count for s in subtrees]
    return PartitionStats(
        parent_level=level,
        subtree_count=len(counts),
        mean_nodes=Fraction(sum(counts), len(counts)),
        max_nodes=max(counts),
        min_nodes=min(counts),
    )


def find_concept(tree: TaxonomyTree, name: str) -> list[str]:
    """Ids of every node whose name equals the query (lowercased), pre-order."""
    needle = name.strip().lower()
    return [nid for nid in tree.iter_preorder() if tree.node(nid).name == needle]


def read_taxonomy_file(path: str | Path, root_name: str = DEFAULT_ROOT_NAME) -> TaxonomyTree:
    """Load a taxonomy from a JSONL file of {"id", "name", "parent_id"} rows."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                entries.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise InvalidEntry(f"{path}:{lineno}: {exc}") from None
    return load_taxonomy(entries, root_name=root_name)


def write_taxonomy_file(tree: TaxonomyTree, path: str | Path) -> None:
    lines = [json.dumps(e, ensure_ascii=False) for e in tree.to_entries()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
