"""Partition chains, leveled trees, rooted trees and nests.

A chain is a strictly increasing sequence of partitions of [n] (coarse to
fine) that never contains the all-singletons partition. Chains correspond
bijectively to leveled trees: the internal vertices are the essential blocks
occurring in the chain, and a block sits on the last level at which it is
still a block.

Levels live on internal vertices only; leaves carry no level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from polydiag.errors import ValidationError
from polydiag.partitions import (
    IntegerPartition,
    SetPartition,
    _block_str,
    enumerate_partitions,
    from_blocks,
    interval_shape,
    lt,
    refinements,
    top,
)
from polydiag import partitions as _partitions

Label = frozenset  # frozenset[int]


def _label_key(label) -> tuple:
    return (-len(label), tuple(sorted(label)))


def label_str(label, n: int) -> str:
    return _block_str(sorted(label), n)


# --------------------------------------------------------------------- chains


@dataclass(frozen=True)
class Chain:
    n: int
    partitions: tuple[SetPartition, ...] = ()

    def __post_init__(self):
        parts = tuple(self.partitions)
        object.__setattr__(self, "partitions", parts)
        for p in parts:
            if p.n != self.n:
                raise ValidationError(f"chain on [{self.n}] contains a partition of [{p.n}]", "partitions")
            if p.is_top():
                raise ValidationError("a chain may not contain the all-singletons partition", "partitions")
        for a, b in zip(parts, parts[1:]):
            if not lt(a, b):
                raise ValidationError(f"chain is not strictly increasing at {a} -> {b}", "partitions")

    def __len__(self):
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)

    @property
    def length(self) -> int:
        return len(self.partitions)

    @property
    def base_size(self) -> int:
        """Number of blocks of the coarsest member (``n`` for the empty chain)."""
        return self.partitions[0].rank if self.partitions else self.n

    def __str__(self):
        return "[" + ", ".join(str(p) for p in self.partitions) + "]"

    def to_json(self) -> dict:
        return {"n": self.n, "partitions": [p.to_json() for p in self.partitions]}


def chain_from_json(obj) -> Chain:
    """Parse ``{"n": .., "partitions": [...]}``; entries may be partition objects or bare block lists."""
    obj = _load(obj, "chain")
    if not isinstance(obj, dict) or "n" not in obj or "partitions" not in obj:
        raise ValidationError("chain JSON needs fields 'n' and 'partitions'", "chain")
    n = obj["n"]
    parts = []
    for entry in obj["partitions"]:
        if isinstance(entry, dict):
            p = _partitions.from_json(entry)
        elif isinstance(entry, list):
            p = from_blocks(n, entry)
        else:
            raise ValidationError("chain entries must be partition objects or block lists", "partitions")
        parts.append(p)
    return Chain(n, tuple(parts))


def _load(obj, what):
    if isinstance(obj, str):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed {what} JSON: {exc}", what) from None
    return obj


# ---------------------------------------------------------------------- nests


@dataclass(frozen=True)
class Nest:
    n: int
    members: frozenset = frozenset()

    def __post_init__(self):
        members = frozenset(frozenset(s) for s in self.members)
        object.__setattr__(self, "members", members)
        for s in members:
            if len(s) < 2:
                raise ValidationError(f"nest member {sorted(s)} has fewer than 2 elements", "nest")
            if not all(isinstance(e, int) and 1 <= e <= self.n for e in s):
                raise ValidationError(f"nest member {sorted(s)} is not a subset of [{self.n}]", "nest")
        for a, b in combinations(members, 2):
            if a & b and not (a <= b or b <= a):
                raise ValidationError(f"nest members {sorted(a)} and {sorted(b)} overlap without nesting", "nest")

    def __len__(self):
        return len(self.members)

    def sorted_members(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(s)) for s in sorted(self.members, key=_label_key)]

    def __str__(self):
        return "{" + ",".join(label_str(s, self.n) for s in sorted(self.members, key=_label_key)) + "}"

    def to_json(self) -> dict:
        return {"n": self.n, "members": [list(s) for s in self.sorted_members()]}


def nest_from_json(obj) -> Nest:
    obj = _load(obj, "nest")
    if not isinstance(obj, dict) or "n" not in obj or "members" not in obj:
        raise ValidationError("nest JSON needs fields 'n' and 'members'", "nest")
    members = obj["members"]
    if not isinstance(members, list) or not all(isinstance(s, list) for s in members):
        raise ValidationError("'members' must be a list of lists", "members")
    if len({frozenset(s) for s in members}) != len(members):
        raise ValidationError("repeated nest members", "members")
    return Nest(obj["n"], frozenset(frozenset(s) for s in members))


def _parent_map(labels: Iterable[frozenset]) -> dict:
    """Smallest strictly containing label for each label (``None`` for the root)."""
    ordered = sorted(labels, key=len)
    parent = {}
    for i, s in enumerate(ordered):
        parent[s] = None
        for t in ordered[i + 1:]:
            if len(t) > len(s) and s < t:
                parent[s] = t
                break
    return parent


def _children(n: int, labels, parent) -> dict:
    """Children of every vertex; ``None`` is the root, integers are leaves."""
    kids: dict = {None: []}
    for s in labels:
        kids.setdefault(s, [])
    for s in labels:
        kids[parent[s]].append(s)
    for leaf in range(1, n + 1):
        holder = None
        for s in labels:
            if leaf in s and (holder is None or len(s) < len(holder)):
                holder = s
        kids[holder].append(leaf)
    return kids


@dataclass(frozen=True)
class RootedTree:
    """Rooted tree with leaves 1..n; stored through the labels of its non-root internal vertices."""

    n: int
    labels: frozenset = frozenset()

    def __post_init__(self):
        nest = Nest(self.n, self.labels)
        object.__setattr__(self, "labels", nest.members)

    @property
    def nest(self) -> Nest:
        return Nest(self.n, self.labels)

    def parents(self) -> dict:
        return _parent_map(self.labels)

    def to_json(self) -> dict:
        return {"n": self.n, "vertices": _vertex_list(self.n, self.labels, None)}


# ------------------------------------------------------------- leveled trees


@dataclass(frozen=True)
class LeveledTree:
    """Rooted tree with a level on each internal vertex; the root has level 0.

    ``nodes`` holds ``(label, level)`` pairs for the non-root internal
    vertices, sorted by level then label.
    """

    n: int
    nodes: tuple = ()

    def __post_init__(self):
        for s, lvl in self.nodes:
            if isinstance(lvl, bool) or not isinstance(lvl, int) or lvl < 1:
                raise ValidationError(f"vertex {sorted(s)} has level {lvl!r}; levels must be positive integers", "level")
        nodes = tuple(sorted(((frozenset(s), lvl) for s, lvl in self.nodes),
                             key=lambda v: (v[1],) + _label_key(v[0])))
        object.__setattr__(self, "nodes", nodes)
        labels = [s for s, _ in nodes]
        if len(set(labels)) != len(labels):
            raise ValidationError("leveled tree has repeated vertex labels", "vertices")
        Nest(self.n, labels)  # laminarity and size checks
        level = dict(nodes)
        parent = _parent_map(labels)
        for s, lvl in nodes:
            up = 0 if parent[s] is None else level[parent[s]]
            if lvl <= up:
                raise ValidationError(
                    f"vertex {sorted(s)} at level {lvl} is not below its parent (level {up})", "level"
                )
        used = set(level.values())
        if used != set(range(1, len(used) + 1)):
            raise ValidationError(f"levels {sorted(used)} do not cover 1..{max(used)}", "level")

    @property
    def depth(self) -> int:
        return max((lvl for _, lvl in self.nodes), default=0)

    @property
    def labels(self) -> list[frozenset]:
        return [s for s, _ in self.nodes]

    def level_of(self, label) -> int:
        return dict(self.nodes)[frozenset(label)]

    def parents(self) -> dict:
        return _parent_map(self.labels)

    def children(self) -> dict:
        return _children(self.n, self.labels, self.parents())

    def __str__(self):
        return "{" + ",".join(f"{label_str(s, self.n)}@{lvl}" for s, lvl in self.nodes) + "}"

    def to_json(self) -> dict:
        return {"n": self.n, "vertices": _vertex_list(self.n, self.labels, dict(self.nodes))}

    def to_dot(self, name: str = "leveled_tree") -> str:
        return _dot(self.n, self.labels, dict(self.nodes), name)


def _vertex_list(n, labels, level) -> list[dict]:
    if level is None:
        order = sorted(labels, key=_label_key)
    else:
        order = sorted(labels, key=lambda s: (level[s],) + _label_key(s))
    index = {s: i + 1 for i, s in enumerate(order)}
    parent = _parent_map(labels)
    root = {"label": list(range(1, n + 1)), "parent": None}
    if level is not None:
        root["level"] = 0
    out = [root]
    for s in order:
        v = {"label": sorted(s), "parent": 0 if parent[s] is None else index[parent[s]]}
        if level is not None:
            v["level"] = level[s]
        out.append(v)
    return out


def _parse_vertices(obj, need_levels: bool):
    obj = _load(obj, "tree")
    if not isinstance(obj, dict) or "n" not in obj or "vertices" not in obj:
        raise ValidationError("tree JSON needs fields 'n' and 'vertices'", "tree")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}", "n")
    verts = obj["vertices"]
    if not isinstance(verts, list) or not verts:
        raise ValidationError("'vertices' must be a nonempty list with the root first", "vertices")
    if not all(isinstance(v, dict) for v in verts):
        raise ValidationError("every vertex must be a JSON object", "vertices")
    root = verts[0]
    if root.get("parent") is not None or root.get("level", 0) != 0:
        raise ValidationError("vertex 0 must be the root (parent null, level 0)", "vertices")
    labels, levels = [], {}
    for i, v in enumerate(verts[1:], start=1):
        if "label" not in v or "parent" not in v:
            raise ValidationError(f"vertex {i} needs 'label' and 'parent'", "vertices")
        if not isinstance(v["label"], list) or not all(isinstance(e, int) for e in v["label"]):
            raise ValidationError(f"vertex {i} label must be a list of integers", "label")
        s = frozenset(v["label"])
        labels.append(s)
        if need_levels:
            if "level" not in v:
                raise ValidationError(f"vertex {i} has no 'level'", "level")
            levels[s] = v["level"]
    if len(set(labels)) != len(labels):
        raise ValidationError("repeated vertex labels", "vertices")
    Nest(n, labels)
    parent = _parent_map(labels)
    for i, v in enumerate(verts[1:], start=1):
        p = v["parent"]
        if not isinstance(p, int) or not 0 <= p < len(verts) or p == i:
            raise ValidationError(f"vertex {i} has invalid parent reference {p!r}", "parent")
        expected = parent[labels[i - 1]]
        got = None if p == 0 else labels[p - 1]
        if got != expected:
            raise ValidationError(
                f"vertex {i} ({sorted(labels[i - 1])}) has parent {p}, whose label is not its smallest superset",
                "parent",
            )
    return n, labels, levels


def leveled_tree_from_json(obj) -> LeveledTree:
    n, labels, levels = _parse_vertices(obj, need_levels=True)
    return LeveledTree(n, tuple((s, levels[s]) for s in labels))


def rooted_tree_from_json(obj) -> RootedTree:
    """Parse a tree; levels, if present, are ignored."""
    n, labels, _ = _parse_vertices(obj, need_levels=False)
    return RootedTree(n, frozenset(labels))


def _dot(n, labels, level, name) -> str:
    order = sorted(labels, key=lambda s: ((level or {}).get(s, 0),) + _label_key(s))
    vid = {s: f"v{i + 1}" for i, s in enumerate(order)}
    parent = _parent_map(labels)
    kids = _children(n, labels, parent)
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    lines.append('  v0 [label="root@0"];' if level is not None else '  v0 [label="root"];')
    for s in order:
        tag = f"{label_str(s, n)}@{level[s]}" if level is not None else label_str(s, n)
        lines.append(f'  {vid[s]} [label="{tag}"];')
    for leaf in range(1, n + 1):
        lines.append(f'  l{leaf} [label="{leaf}", shape=plaintext];')
    if level is not None:
        depth = max(level.values(), default=0)
        lines.append("  { rank=min; v0; }")
        for lvl in range(1, depth + 1):
            ids = " ".join(f"{vid[s]};" for s in order if level[s] == lvl)
            lines.append(f"  {{ rank=same; {ids} }}")
    lines.append("  { rank=max; " + " ".join(f"l{leaf};" for leaf in range(1, n + 1)) + " }")
    for s in [None] + order:
        src = "v0" if s is None else vid[s]
        for c in kids[s]:
            dst = f"l{c}" if isinstance(c, int) else vid[c]
            lines.append(f"  {src} -> {dst};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- bijections


def chain_to_tree(chain: Chain) -> LeveledTree:
    level: dict = {}
    for i, p in enumerate(chain.partitions, start=1):
        for b in p.essential_blocks:
            level[b] = i
    return LeveledTree(chain.n, tuple(level.items()))


def tree_to_chain(tree: LeveledTree) -> Chain:
    """Partition ``i`` joins two leaves iff they separate at a vertex of level >= i."""
    parts = []
    for i in range(1, tree.depth + 1):
        deep = [s for s, lvl in tree.nodes if lvl >= i]
        maximal = [s for s in deep if not any(s < t for t in deep)]
        blocks = [sorted(s) for s in maximal]
        covered = set().union(*maximal) if maximal else set()
        blocks += [[e] for e in range(1, tree.n + 1) if e not in covered]
        parts.append(from_blocks(tree.n, blocks))
    return Chain(tree.n, tuple(parts))


def forget(tree: LeveledTree) -> RootedTree:
    return RootedTree(tree.n, frozenset(tree.labels))


def nest_of(chain: Chain) -> Nest:
    members = set()
    for p in chain.partitions:
        members.update(p.essential_blocks)
    return Nest(chain.n, frozenset(members))


def lambda_sequence(chain: Chain) -> list[IntegerPartition]:
    """``[lambda_0, ..., lambda_k]``: root valency, then the interval shapes up to the top."""
    if not chain.partitions:
        raise ValidationError("the empty chain has no lambda sequence", "chain")
    ps = list(chain.partitions) + [top(chain.n)]
    seq = [IntegerPartition((ps[0].rank,))]
    seq += [interval_shape(a, b) for a, b in zip(ps, ps[1:])]
    return seq


# ---------------------------------------------------------------- enumeration


@lru_cache(maxsize=16)
def _refinement_graph(n: int):
    nodes = [p for p in enumerate_partitions(n) if not p.is_top()]
    index = {p: i for i, p in enumerate(nodes)}
    succ = tuple(tuple(sorted(index[q] for q in refinements(p))) for p in nodes)
    return tuple(nodes), succ


def enumerate_chains(n: int, length: int | None = None) -> Iterator[Chain]:
    """Every chain of partitions of [n] without the top, the empty chain first.

    Members are chosen coarse to fine, each in lexicographic RGS order.
    """
    if not isinstance(n, int) or n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {n!r}", "n")
    if length is not None and not 0 <= length <= n - 1:
        raise ValidationError(f"chain length {length} out of range 0..{n - 1}", "length")
    nodes, succ = _refinement_graph(n)
    if length in (None, 0):
        yield Chain(n, ())
    if length == 0:
        return
    path: list[int] = []

    def rec(options):
        for j in options:
            path.append(j)
            if length is None or len(path) == length:
                yield _trusted_chain(n, tuple(nodes[i] for i in path))
            if length is None or len(path) < length:
                yield from rec(succ[j])
            path.pop()

    yield from rec(range(len(nodes)))


def _trusted_chain(n, parts) -> Chain:
    # enumeration produces valid chains by construction; skip re-validation
    chain = object.__new__(Chain)
    object.__setattr__(chain, "n", n)
    object.__setattr__(chain, "partitions", parts)
    return chain


def enumerate_nests(n: int) -> Iterator[Nest]:
    """Every nest on [n], the empty nest first."""
    if not isinstance(n, int) or n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {n!r}", "n")
    candidates = []
    for size in range(n, 1, -1):
        candidates += [frozenset(c) for c in combinations(range(1, n + 1), size)]
    chosen: list[frozenset] = []

    def compatible(s):
        return all(not (s & t) or s <= t or t <= s for t in chosen)

    def rec(start):
        yield Nest(n, frozenset(chosen))
        for i in range(start, len(candidates)):
            s = candidates[i]
            if compatible(s):
                chosen.append(s)
                yield from rec(i + 1)
                chosen.pop()

    yield from rec(0)


# ---------------------------------------------------------------- eta fibers


def _fiber_setup(tree: RootedTree):
    labels = sorted(tree.labels, key=_label_key)
    parent = _parent_map(labels)
    idx = {s: i for i, s in enumerate(labels)}
    par = [None if parent[s] is None else idx[parent[s]] for s in labels]
    return labels, par


def eta_fiber_count(tree: RootedTree) -> int:
    """Number of level assignments turning ``tree`` into a leveled tree."""
    labels, par = _fiber_setup(tree)
    full = frozenset(range(len(labels)))

    @lru_cache(maxsize=None)
    def count(done: frozenset) -> int:
        if done == full:
            return 1
        avail = [i for i in full - done if par[i] is None or par[i] in done]
        total = 0
        for r in range(1, len(avail) + 1):
            for pick in combinations(avail, r):
                total += count(done | frozenset(pick))
        return total

    return count(frozenset())


def iter_eta_fiber(tree: RootedTree) -> Iterator[LeveledTree]:
    labels, par = _fiber_setup(tree)
    n_int = len(labels)
    level = [0] * n_int

    def rec(done: frozenset, depth: int):
        if len(done) == n_int:
            yield LeveledTree(tree.n, tuple(zip(labels, level)))
            return
        avail = [i for i in range(n_int) if i not in done and (par[i] is None or par[i] in done)]
        for r in range(1, len(avail) + 1):
            for pick in combinations(avail, r):
                for i in pick:
                    level[i] = depth + 1
                yield from rec(done | frozenset(pick), depth + 1)

    yield from rec(frozenset(), 0)


def eta_fiber(tree: RootedTree, with_trees: bool = False):
    """Return ``(count, trees)``; ``trees`` is ``None`` unless requested."""
    if with_trees:
        trees = list(iter_eta_fiber(tree))
        return len(trees), trees
    return eta_fiber_count(tree), None
