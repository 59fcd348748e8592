"""Set partitions of [n], the refinement lattice, and Stirling/Bell numbers.

Order convention used throughout the package: ``a <= b`` means every block
of ``b`` sits inside a block of ``a``, i.e. ``b`` is finer. So the bottom
element is the one-block partition and the top is the partition into
singletons.

A partition is stored as its restricted-growth string (RGS): position ``i``
holds the index of the block containing ``i + 1``, with blocks numbered by
first occurrence.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from polydiag.errors import ValidationError


@dataclass(frozen=True, order=True)
class IntegerPartition:
    """Weakly decreasing tuple of positive integers (the empty one allowed)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for p in parts:
            if not isinstance(p, int) or p <= 0:
                raise ValidationError(f"integer partition parts must be positive integers, got {p!r}", "parts")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def multiplicities(self) -> Counter:
        return Counter(self.parts)


def integer_partitions(total: int, largest: int | None = None) -> Iterator[IntegerPartition]:
    """All partitions of ``total`` in reverse lexicographic order."""
    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(total, total if largest is None else largest):
        yield IntegerPartition(parts)


@dataclass(frozen=True)
class SetPartition:
    n: int
    rgs: tuple[int, ...]

    def __post_init__(self):
        rgs = tuple(self.rgs)
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"ground set size must be a positive integer, got {self.n!r}", "n")
        if len(rgs) != self.n:
            raise ValidationError(f"assignment has length {len(rgs)}, expected {self.n}", "assignment")
        top = -1
        for i, b in enumerate(rgs):
            if not isinstance(b, int) or b < 0 or b > top + 1:
                raise ValidationError(
                    f"assignment is not a restricted-growth string at element {i + 1}", "assignment"
                )
            top = max(top, b)
        object.__setattr__(self, "rgs", rgs)

    def __lt__(self, other):
        # total order used only for deterministic sorting, not the lattice order
        return (self.n, self.rgs) < (other.n, other.rgs)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as ascending tuples, ordered by minimum element."""
        out: list[list[int]] = [[] for _ in range(self.rank)]
        for i, b in enumerate(self.rgs):
            out[b].append(i + 1)
        return tuple(tuple(b) for b in out)

    @property
    def rank(self) -> int:
        return max(self.rgs) + 1

    @property
    def essential_count(self) -> int:
        return sum(1 for b in self.blocks if len(b) >= 2)

    @property
    def shape(self) -> IntegerPartition:
        return IntegerPartition(tuple(len(b) - 1 for b in self.blocks if len(b) >= 2))

    @property
    def essential_blocks(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(b) for b in self.blocks if len(b) >= 2)

    @property
    def block_sizes(self) -> IntegerPartition:
        return IntegerPartition(tuple(len(b) for b in self.blocks))

    def is_top(self) -> bool:
        return self.rank == self.n

    def is_bottom(self) -> bool:
        return self.rank == 1

    def __str__(self):
        return "{" + "|".join(_block_str(b, self.n) for b in self.blocks) + "}"

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}


def _block_str(block: Sequence[int], n: int) -> str:
    if n < 10:
        return "".join(map(str, block))
    return ",".join(map(str, block))


def from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
    """Build the canonical partition with the given blocks."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}", "n")
    owner: dict[int, int] = {}
    for bi, block in enumerate(blocks):
        block = list(block)
        if not block:
            raise ValidationError("blocks must be nonempty", "blocks")
        for e in block:
            if not isinstance(e, int) or not 1 <= e <= n:
                raise ValidationError(f"element {e!r} is out of range 1..{n}", "blocks")
            if e in owner:
                raise ValidationError(f"element {e} occurs in more than one block", "blocks")
            owner[e] = bi
    for e in range(1, n + 1):
        if e not in owner:
            raise ValidationError(f"element {e} is not covered by any block", "blocks")
    return _canonical(n, [owner[e] for e in range(1, n + 1)])


def _canonical(n: int, labels: Sequence) -> SetPartition:
    relabel: dict = {}
    rgs = []
    for lab in labels:
        if lab not in relabel:
            relabel[lab] = len(relabel)
        rgs.append(relabel[lab])
    return SetPartition(n, tuple(rgs))


def bottom(n: int) -> SetPartition:
    return SetPartition(n, (0,) * n)


def top(n: int) -> SetPartition:
    return SetPartition(n, tuple(range(n)))


def stats(p: SetPartition) -> tuple[int, int, IntegerPartition]:
    """Return (block count, essential block count, essential shape)."""
    return p.rank, p.essential_count, p.shape


def _same_n(a: SetPartition, b: SetPartition):
    if a.n != b.n:
        raise ValidationError(f"partitions of different ground sets ({a.n} vs {b.n})", "n")


def leq(a: SetPartition, b: SetPartition) -> bool:
    """True when ``a`` is coarser than or equal to ``b``."""
    _same_n(a, b)
    image: dict[int, int] = {}
    for x, y in zip(b.rgs, a.rgs):
        if image.setdefault(x, y) != y:
            return False
    return True


def lt(a: SetPartition, b: SetPartition) -> bool:
    return a != b and leq(a, b)


def meet(a: SetPartition, b: SetPartition) -> SetPartition:
    """Greatest lower bound: the finest partition coarser than both."""
    _same_n(a, b)
    parent = list(range(a.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for rgs in (a.rgs, b.rgs):
        first: dict[int, int] = {}
        for i, blk in enumerate(rgs):
            j = first.setdefault(blk, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return _canonical(a.n, [find(i) for i in range(a.n)])


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    """Least upper bound: the coarsest common refinement."""
    _same_n(a, b)
    return _canonical(a.n, list(zip(a.rgs, b.rgs)))


def enumerate_partitions(n: int, k: int | None = None) -> Iterator[SetPartition]:
    """Partitions of [n] (into exactly ``k`` blocks if given) in lexicographic RGS order."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}", "n")
    if k is not None and not 1 <= k <= n:
        raise ValidationError(f"block count k={k} out of range 1..{n}", "k")
    rgs = [0] * n

    def rec(i, used):
        if i == n:
            if k is None or used == k:
                yield SetPartition(n, tuple(rgs))
            return
        if k is not None and used + (n - i) < k:
            return
        for b in range(used + 1):
            if k is not None and b == used and used == k:
                break
            rgs[i] = b
            yield from rec(i + 1, used + (b == used))

    yield from rec(1, 1)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n < 0 or k < 0:
        raise ValidationError(f"stirling2 needs nonnegative arguments, got ({n}, {k})", "n")
    if k > n:
        return 0
    if n == k:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Bell number from the Bell triangle."""
    if n < 0:
        raise ValidationError(f"bell needs a nonnegative argument, got {n}", "n")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def interval_shape(a: SetPartition, b: SetPartition) -> IntegerPartition:
    """Shape ``mu`` with ``[a, b]`` isomorphic to ``L_mu``.

    One part ``s - 1`` for each block of ``a`` that splits into ``s >= 2``
    blocks of ``b``.
    """
    if not leq(a, b):
        raise ValidationError(f"{a} and {b} are not comparable in refinement order", "interval")
    pieces: dict[int, set[int]] = {}
    for x, y in zip(a.rgs, b.rgs):
        pieces.setdefault(x, set()).add(y)
    return IntegerPartition(tuple(len(s) - 1 for s in pieces.values() if len(s) >= 2))


def refinements(p: SetPartition, include_top: bool = False) -> Iterator[SetPartition]:
    """Strict refinements of ``p`` (partitions ``q`` with ``p < q``)."""
    blocks = p.blocks
    per_block = [list(enumerate_partitions(len(b))) for b in blocks]
    labels = [0] * p.n

    def rec(i):
        if i == len(blocks):
            yield _canonical(p.n, labels)
            return
        for sub in per_block[i]:
            for e, s in zip(blocks[i], sub.rgs):
                labels[e - 1] = (i, s)
            yield from rec(i + 1)

    for q in rec(0):
        if q == p or (q.is_top() and not include_top):
            continue
        yield q


def to_json(p: SetPartition) -> str:
    return json.dumps(p.to_json())


def from_json(obj) -> SetPartition:
    """Parse ``{"n": ..., "blocks": [...]}`` (dict or JSON text); any block order is accepted."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON: {exc}", "partition") from None
    if not isinstance(obj, dict) or "n" not in obj or "blocks" not in obj:
        raise ValidationError("partition JSON needs fields 'n' and 'blocks'", "partition")
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise ValidationError("'blocks' must be a list of lists", "blocks")
    return from_blocks(obj["n"], blocks)
