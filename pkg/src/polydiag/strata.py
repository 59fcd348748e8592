"""Strata of the polydiagonal compactification and the bricks in their fibers.

Geometry only enters through numbers: a base space is a token such as
``X<3>`` or ``Conf(X,3)`` plus its size, and a brick is ``(m, lambda)``.

The product lattice ``L_lambda`` for ``lambda = (v_1, ..., v_r)`` is modeled as
tuples ``(p_1, ..., p_r)`` where ``p_i`` is a set partition of ``[v_i + 1]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator

from polydiag.errors import IdentityError, ValidationError
from polydiag.partitions import (
    IntegerPartition,
    SetPartition,
    bottom,
    enumerate_partitions,
    interval_shape,
    leq,
    top,
)
from polydiag.trees import Chain, lambda_sequence


def _as_shape(lam) -> IntegerPartition:
    return lam if isinstance(lam, IntegerPartition) else IntegerPartition(tuple(lam))


def _check_m(m):
    if not isinstance(m, int) or m < 1:
        raise ValidationError(f"m must be a positive integer, got {m!r}", "m")


@dataclass(frozen=True)
class Brick:
    m: int
    shape: IntegerPartition

    def __post_init__(self):
        _check_m(self.m)
        object.__setattr__(self, "shape", _as_shape(self.shape))
        if not self.shape.parts:
            raise ValidationError("a brick needs a nonempty integer partition", "lambda")

    @property
    def dim(self) -> int:
        return self.m * self.shape.weight - 1

    @property
    def simple(self) -> bool:
        return len(self.shape) == 1

    def __str__(self):
        return f"M^{self.m}_{self.shape}"

    def to_json(self) -> dict:
        return {"m": self.m, "lambda": list(self.shape.parts), "dim": self.dim, "simple": self.simple}


@dataclass(frozen=True)
class Stratum:
    n: int
    m: int
    chain: Chain
    fibers: tuple[IntegerPartition, ...] = field(init=False)
    base_size: int = field(init=False)

    def __post_init__(self):
        _check_m(self.m)
        if self.chain.n != self.n:
            raise ValidationError("stratum and chain disagree on n", "n")
        if self.chain.partitions:
            seq = lambda_sequence(self.chain)
            object.__setattr__(self, "base_size", seq[0].parts[0])
            object.__setattr__(self, "fibers", tuple(seq[1:]))
        else:
            object.__setattr__(self, "base_size", self.n)
            object.__setattr__(self, "fibers", ())
        if self.m * self.n - self.codim != self.m * self.base_size + sum(self.m * f.weight - 1 for f in self.fibers):
            raise IdentityError(f"dimension bookkeeping fails for {self.chain}")

    @property
    def codim(self) -> int:
        return self.chain.length

    @property
    def dim(self) -> int:
        return self.m * self.n - self.codim

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "chain": self.chain.to_json(),
            "codim": self.codim,
            "dim": self.dim,
            "base": f"X<{self.base_size}>",
            "fibers": [list(f.parts) for f in self.fibers],
        }


def divisor_fiber(p: SetPartition, m: int) -> tuple[int, Brick]:
    """The divisor of ``p`` fibers over ``X<rank p>`` with fiber the brick of its essential shape."""
    if p.essential_count < 1:
        raise ValidationError("the all-singletons partition has no divisor", "partition")
    return p.rank, Brick(m, p.shape)


def intersect(a: Chain, b: Chain, m: int = 1) -> Stratum | None:
    """``S_a`` meets ``S_b`` iff ``a u b`` is a chain, and then the meet is ``S_(a u b)``."""
    if a.n != b.n:
        raise ValidationError(f"chains on different ground sets ({a.n} vs {b.n})", "n")
    merged = sorted(set(a.partitions) | set(b.partitions), key=lambda p: (p.rank, p.rgs))
    for x, y in zip(merged, merged[1:]):
        if not leq(x, y) or x == y or x.rank == y.rank:
            return None
    return Stratum(a.n, m, Chain(a.n, tuple(merged)))


def contains(a: Chain, b: Chain) -> bool:
    """``S_a`` contains ``S_b`` exactly when ``a`` is a subset of ``b``."""
    return set(a.partitions) <= set(b.partitions)


@dataclass(frozen=True)
class BundleDescription:
    base: str
    base_size: int
    fibers: tuple[Brick, ...]
    dim: int

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "base_size": self.base_size,
            "fibers": [b.to_json() for b in self.fibers],
            "dim": self.dim,
        }

    def __str__(self):
        if not self.fibers:
            return self.base
        return f"{self.base} <- " + " x ".join(map(str, self.fibers))


def bundle_description(chain: Chain, m: int) -> BundleDescription:
    """Closed stratum as a bundle over ``X<lambda_0>`` with a product of bricks as fiber.

    The empty chain describes the whole space ``X<n>``.
    """
    s = Stratum(chain.n, m, chain)
    return BundleDescription(
        base=f"X<{s.base_size}>",
        base_size=s.base_size,
        fibers=tuple(Brick(m, f) for f in s.fibers),
        dim=s.dim,
    )


# --------------------------------------------------------- product lattices


Element = tuple  # tuple[SetPartition, ...]


def lattice_bottom(lam: IntegerPartition) -> Element:
    return tuple(bottom(v + 1) for v in _as_shape(lam).parts)


def lattice_top(lam: IntegerPartition) -> Element:
    return tuple(top(v + 1) for v in _as_shape(lam).parts)


def element_leq(a: Element, b: Element) -> bool:
    return all(leq(x, y) for x, y in zip(a, b))


def element_shape(a: Element, b: Element) -> IntegerPartition:
    """Shape ``mu`` with ``[a, b]`` isomorphic to ``L_mu`` in the product lattice."""
    parts: list[int] = []
    for x, y in zip(a, b):
        parts += interval_shape(x, y).parts
    return IntegerPartition(tuple(parts))


@lru_cache(maxsize=64)
def open_interval(lam: IntegerPartition) -> tuple[Element, ...]:
    """Elements of ``L_lambda`` strictly between bottom and top, in a fixed order."""
    lam = _as_shape(lam)
    bot, tp = lattice_bottom(lam), lattice_top(lam)
    factors = [list(enumerate_partitions(v + 1)) for v in lam.parts]
    elems = [e for e in product(*factors) if e != bot and e != tp]
    elems.sort(key=lambda e: (sum(p.rank for p in e), tuple(p.rgs for p in e)))
    return tuple(elems)


@lru_cache(maxsize=64)
def _successors(lam: IntegerPartition):
    elems = open_interval(lam)
    return tuple(
        tuple(j for j in range(i + 1, len(elems)) if elems[j] != elems[i] and element_leq(elems[i], elems[j]))
        for i in range(len(elems))
    )


def brick_strata(lam) -> Iterator[tuple[tuple[Element, ...], list[IntegerPartition]]]:
    """Chains in the open interval of ``L_lambda`` with their factor shapes ``lambda_0..lambda_k``.

    Each stratum of the brick ``M_lambda`` is a product of the bricks of
    these shapes.
    """
    lam = _as_shape(lam)
    if not lam.parts:
        raise ValidationError("brick strata need a nonempty integer partition", "lambda")
    elems = open_interval(lam)
    succ = _successors(lam)
    bot, tp = lattice_bottom(lam), lattice_top(lam)

    def shapes(path):
        pts = [bot] + [elems[i] for i in path] + [tp]
        return [element_shape(a, b) for a, b in zip(pts, pts[1:])]

    yield (), [lam]
    path: list[int] = []

    def rec(options):
        for j in options:
            path.append(j)
            yield tuple(elems[i] for i in path), shapes(path)
            yield from rec(succ[j])
            path.pop()

    yield from rec(range(len(elems)))


def interval_census(lam) -> Counter:
    """Count open-interval elements ``p`` by ``(shape [bottom, p], shape [p, top])``."""
    lam = _as_shape(lam)
    bot, tp = lattice_bottom(lam), lattice_top(lam)
    return Counter((element_shape(bot, e), element_shape(e, tp)) for e in open_interval(lam))


def brick_centers(lam) -> list[Counter]:
    """Blowup centers building ``M_lambda`` from projective space, stage by stage.

    Stage ``j`` blows up the proper transforms attached to the elements of
    rank ``j`` above the bottom; each is a brick of shape ``[bottom, p]``.
    """
    lam = _as_shape(lam)
    bot = lattice_bottom(lam)
    base_rank = len(lam)
    stages: list[Counter] = [Counter() for _ in range(max(lam.weight - 1, 0))]
    for e in open_interval(lam):
        j = sum(p.rank for p in e) - base_rank
        stages[j - 1][element_shape(bot, e)] += 1
    return stages


@dataclass(frozen=True)
class BrickDecomposition:
    m: int
    shape: IntegerPartition
    torus_rank: int
    open_fiber: Brick           # open M^1_{1^r}: an (r-1)-dimensional torus
    open_base: tuple[Brick, ...]  # open simple bricks M^m_{v_i}
    closed_fiber: Brick | None    # permutahedral variety, only for lambda = 1^r
    closed_base: tuple[Brick, ...] | None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "lambda": list(self.shape.parts),
            "torus_rank": self.torus_rank,
            "open": {"fiber": self.open_fiber.to_json(), "base": [b.to_json() for b in self.open_base]},
            "closed": None if self.closed_fiber is None else {
                "fiber": self.closed_fiber.to_json(),
                "base": [b.to_json() for b in self.closed_base],
            },
        }


def brick_decomposition(lam, m: int) -> BrickDecomposition:
    """Fibration of an open compound brick over the product of its simple factors.

    For ``lambda = 1^r`` the closed brick also fibers over ``(M^m_1)^r`` with
    the permutahedral variety as fiber.
    """
    lam = _as_shape(lam)
    r = len(lam)
    if r < 2:
        raise ValidationError(f"brick {lam} is simple and has no such decomposition", "lambda")
    ones = IntegerPartition((1,) * r)
    is_small = all(v == 1 for v in lam.parts)
    return BrickDecomposition(
        m=m,
        shape=lam,
        torus_rank=r - 1,
        open_fiber=Brick(1, ones),
        open_base=tuple(Brick(m, IntegerPartition((v,))) for v in lam.parts),
        closed_fiber=Brick(1, ones) if is_small else None,
        closed_base=tuple(Brick(m, IntegerPartition((1,))) for _ in range(r)) if is_small else None,
    )


def brick_order_leq(a, b) -> bool:
    """True when ``b`` refines ``a``: the parts of ``b`` group into sums equal to the parts of ``a``."""
    a, b = _as_shape(a), _as_shape(b)
    if a.weight != b.weight:
        raise ValidationError(f"{a} and {b} have different weights", "lambda")
    targets = list(a.parts)
    pieces = list(b.parts)  # decreasing, so big pieces are placed first

    def place(i):
        if i == len(pieces):
            return all(t == 0 for t in targets)
        seen = set()
        for j, t in enumerate(targets):
            if t >= pieces[i] and t not in seen:
                seen.add(t)
                targets[j] -= pieces[i]
                if place(i + 1):
                    targets[j] += pieces[i]
                    return True
                targets[j] += pieces[i]
        return False

    return place(0)
