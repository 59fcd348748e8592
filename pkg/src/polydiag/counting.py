"""Strata counts by recurrence, plus the blowup schedules as combinatorial data.

Everything here is computed from Stirling numbers and small dynamic
programs; enumeration only appears in the tests as a cross-check.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from polydiag.errors import ValidationError
from polydiag.partitions import IntegerPartition, enumerate_partitions, integer_partitions, stirling2


def _check_n(n, least, field="n"):
    if not isinstance(n, int) or n < least:
        raise ValidationError(f"{field} must be an integer >= {least}, got {n!r}", field)


@lru_cache(maxsize=None)
def z(n: int) -> int:
    """Chains of partitions of [n] that contain the bottom (and not the top)."""
    _check_n(n, 1)
    if n == 1:
        return 1
    return sum(stirling2(n, k) * z(k) for k in range(1, n))


def polydiag_strata(n: int) -> int:
    _check_n(n, 2)
    return 2 * z(n)


@lru_cache(maxsize=None)
def _nests_without_whole(n: int) -> int:
    # nests on an n-set none of whose members is the whole set
    if n <= 1:
        return 1
    return sum(comb(n - 1, j - 1) * _block_weight(j) * _all_nests(n - j) for j in range(1, n))


def _block_weight(j: int) -> int:
    # a maximal member of size j carries any nest of proper subsets inside it
    return 1 if j == 1 else _nests_without_whole(j)


@lru_cache(maxsize=None)
def _all_nests(n: int) -> int:
    if n <= 1:
        return 1
    return 2 * _nests_without_whole(n)


def fm_strata(n: int) -> int:
    """Number of nests on [n], the empty one included."""
    _check_n(n, 2)
    return _all_nests(n)


@lru_cache(maxsize=None)
def _chains_by_length(n: int, k: int) -> int:
    # a length-k chain is a length-(k-1) chain below [bot, p] ~ L_[rank p] plus p
    if k == 0:
        return 1
    return sum(stirling2(n, r) * _chains_by_length(r, k - 1) for r in range(1, n))


def strata_by_codim(n: int, k: int) -> int:
    _check_n(n, 2)
    if not isinstance(k, int) or not 0 <= k <= n - 1:
        raise ValidationError(f"codimension {k!r} out of range 0..{n - 1}", "codim")
    return _chains_by_length(n, k)


def saturated_chain_count(n: int) -> int:
    """Closed form ``n! (n-1)! / 2^(n-1)`` for maximal chains."""
    _check_n(n, 1)
    return factorial(n) * factorial(n - 1) // 2 ** (n - 1)


def partitions_with_block_sizes(sizes: IntegerPartition) -> int:
    """Set partitions of [|sizes|] whose block sizes are ``sizes`` (multinomial count)."""
    total = factorial(sizes.weight)
    for s in sizes.parts:
        total //= factorial(s)
    for mult in sizes.multiplicities().values():
        total //= factorial(mult)
    return total


@dataclass(frozen=True)
class Stage:
    k: int
    centers: tuple[tuple[IntegerPartition, int], ...]

    @property
    def total(self) -> int:
        return sum(c for _, c in self.centers)


def theta_schedule(n: int) -> list[Stage]:
    """Blowup stages from the Fulton-MacPherson space up to the polydiagonal one.

    Stage ``k`` (2 <= k <= n-2) blows up one center per partition with ``k``
    blocks and at least two essential blocks. Centers are grouped by the
    multiset of block sizes (singletons included), not by essential shape.
    """
    _check_n(n, 1)
    stages = []
    for k in range(2, n - 1):
        groups = []
        for sizes in integer_partitions(n):
            if len(sizes) == k and sum(1 for s in sizes.parts if s >= 2) > 1:
                groups.append((sizes, partitions_with_block_sizes(sizes)))
        stages.append(Stage(k, tuple(groups)))
    return stages


def theta_schedule_by_enumeration(n: int) -> list[Stage]:
    """Same schedule as :func:`theta_schedule`, tallied over all partitions of [n]."""
    _check_n(n, 1)
    tallies: dict[int, Counter] = {k: Counter() for k in range(2, n - 1)}
    for p in enumerate_partitions(n):
        if 2 <= p.rank <= n - 2 and p.essential_count > 1:
            tallies[p.rank][p.block_sizes] += 1
    return [Stage(k, tuple(sorted(tallies[k].items(), reverse=True))) for k in range(2, n - 1)]


def construction_schedule(n: int) -> list[tuple[int, int]]:
    """``(k, S(n,k))`` for the stages k = 1..n-1 of the construction."""
    _check_n(n, 2)
    return [(k, stirling2(n, k)) for k in range(1, n)]


@dataclass(frozen=True)
class StrataTable:
    rows: tuple[tuple[int, int, int], ...]  # (n, fm_strata, polydiag_strata)

    def render(self) -> str:
        # transposed like the published table: one row per space, one column per n
        cols = [tuple(map(str, r)) for r in self.rows]
        lines = []
        for i, head in enumerate(("n", "X[n]", "X<n>")):
            cells = [head.ljust(4)] + [c[i].rjust(max(map(len, c))) for c in cols]
            lines.append(" ".join(cells))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "fm_strata", "polydiag_strata"])
        w.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> list[dict]:
        return [{"n": n, "fm_strata": str(a), "polydiag_strata": str(b)} for n, a, b in self.rows]


def strata_table(max_n: int) -> StrataTable:
    _check_n(max_n, 2, "max_n")
    return StrataTable(tuple((n, fm_strata(n), polydiag_strata(n)) for n in range(2, max_n + 1)))


def table_json(max_n: int) -> str:
    return json.dumps(strata_table(max_n).to_json())
