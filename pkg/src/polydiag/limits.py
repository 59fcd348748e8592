"""Which stratum does a degenerating configuration land in?

A family of ``n`` points colliding as ``t -> 0`` is summarized by the
exponents ``e_ij``: the distance between points ``i`` and ``j`` is of order
``t^e_ij`` (``0`` means they stay apart). These exponents obey the
valuation law ``e_ik >= min(e_ij, e_jk)``. Thresholding at each distinct
positive exponent gives a chain of partitions, coarse to fine.

Only the stratum is determined; actual limit points (screen positions,
scale factors) are not modeled. Leading coefficients are assumed generic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from polydiag.errors import ValidationError
from polydiag.partitions import from_blocks
from polydiag.trees import Chain, LeveledTree, Nest, chain_to_tree, nest_of


def _rational(v, where) -> Fraction:
    if isinstance(v, bool):
        raise ValidationError(f"{where}: booleans are not exponents", "exponents")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(f"{where}: cannot read {v!r} as a rational number", "exponents")


@dataclass(frozen=True)
class ApproachProfile:
    n: int
    exponents: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"n must be a positive integer, got {n!r}", "n")
        rows = self.exponents
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValidationError(f"exponent matrix must be {n}x{n}", "exponents")
        clean = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == j:
                    row.append(Fraction(0))
                    continue
                v = _rational(rows[i][j], f"entry ({i + 1},{j + 1})")
                if v < 0:
                    raise ValidationError(f"entry ({i + 1},{j + 1}) is negative", "exponents")
                row.append(v)
            clean.append(tuple(row))
        for i in range(n):
            for j in range(i + 1, n):
                if clean[i][j] != clean[j][i]:
                    raise ValidationError(f"matrix is not symmetric at ({i + 1},{j + 1})", "exponents")
        object.__setattr__(self, "exponents", tuple(clean))

    @classmethod
    def from_pairs(cls, n: int, pairs: dict, default=0) -> "ApproachProfile":
        """Build from ``{(i, j): e}`` with 1-based labels; unlisted pairs get ``default``."""
        mat = [[Fraction(default)] * n for _ in range(n)]
        for (i, j), e in pairs.items():
            mat[i - 1][j - 1] = mat[j - 1][i - 1] = Fraction(e)
        return cls(n, tuple(map(tuple, mat)))

    def e(self, i: int, j: int) -> Fraction:
        return self.exponents[i - 1][j - 1]

    def scaled(self, factor) -> "ApproachProfile":
        factor = Fraction(factor)
        return ApproachProfile(self.n, tuple(tuple(v * factor for v in row) for row in self.exponents))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "exponents": [
                [None if i == j else str(v) for j, v in enumerate(row)] for i, row in enumerate(self.exponents)
            ],
        }


def profile_from_json(obj) -> ApproachProfile:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed profile JSON: {exc}", "profile") from None
    if not isinstance(obj, dict) or "n" not in obj or "exponents" not in obj:
        raise ValidationError("profile JSON needs fields 'n' and 'exponents'", "profile")
    n = obj["n"]
    rows = obj["exponents"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError("'exponents' must be a list of lists", "exponents")
    mat = [[0 if (i == j and v is None) else v for j, v in enumerate(r)] for i, r in enumerate(rows)]
    for i, r in enumerate(mat):
        for j, v in enumerate(r):
            if v is None:
                raise ValidationError(f"entry ({i + 1},{j + 1}) is null off the diagonal", "exponents")
    return ApproachProfile(n, tuple(tuple(r) for r in mat))


def validate(profile: ApproachProfile) -> tuple[bool, list[tuple[int, int, int]]]:
    """Check ``e_ik >= min(e_ij, e_jk)``; violations are ``(i, j, k)`` with ``i < k``."""
    n = profile.n
    e = profile.exponents
    bad = []
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                if j in (i, k):
                    continue
                if e[i][k] < min(e[i][j], e[j][k]):
                    bad.append((i + 1, j + 1, k + 1))
    return not bad, bad


# ------------------------------------------------------------------- curves


@dataclass(frozen=True)
class ApproachCurves:
    """Point ``i`` moves along ``curves[i]``: ``m`` coordinate polynomials in ``t``, low degree first."""

    n: int
    m: int
    curves: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n!r}", "n")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValidationError(f"m must be a positive integer, got {self.m!r}", "m")
        if len(self.curves) != self.n:
            raise ValidationError(f"expected {self.n} curves, got {len(self.curves)}", "curves")
        clean = []
        for i, c in enumerate(self.curves):
            if len(c) != self.m:
                raise ValidationError(f"curve {i + 1} has {len(c)} coordinates, expected {self.m}", "curves")
            clean.append(tuple(_trim(tuple(_rational(a, f"curve {i + 1}") for a in coord)) for coord in c))
        seen = {}
        for i, c in enumerate(clean):
            if c in seen:
                raise ValidationError(f"curves {seen[c] + 1} and {i + 1} are identical", "curves")
            seen[c] = i
        object.__setattr__(self, "curves", tuple(clean))


def _trim(cs: tuple) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def curves_from_json(obj) -> ApproachCurves:
    """``{"n": 4, "m": 2, "curves": [[[c0, c1, ...], [..]], ...]}``; coefficients may be ``"p/q"`` strings."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed curves JSON: {exc}", "curves") from None
    if not isinstance(obj, dict) or not {"n", "m", "curves"} <= obj.keys():
        raise ValidationError("curves JSON needs fields 'n', 'm' and 'curves'", "curves")
    curves = obj["curves"]
    if not isinstance(curves, list) or not all(
        isinstance(c, list) and all(isinstance(coord, list) for coord in c) for c in curves
    ):
        raise ValidationError("'curves' must be a list of coordinate coefficient lists", "curves")
    return ApproachCurves(obj["n"], obj["m"], tuple(tuple(tuple(coord) for coord in c) for c in curves))


def _order_at_zero(coeffs: Sequence[Fraction]) -> int | None:
    for d, c in enumerate(coeffs):
        if c != 0:
            return d
    return None


def profile_from_curves(family: ApproachCurves) -> ApproachProfile:
    """Exponent of ``i, j`` is the vanishing order at ``t = 0`` of the difference of their curves."""
    n = family.n
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            orders = []
            for a, b in zip(family.curves[i], family.curves[j]):
                size = max(len(a), len(b))
                diff = [(a[d] if d < len(a) else 0) - (b[d] if d < len(b) else 0) for d in range(size)]
                o = _order_at_zero(diff)
                if o is not None:
                    orders.append(o)
            mat[i][j] = mat[j][i] = Fraction(min(orders))
    return ApproachProfile(n, tuple(map(tuple, mat)))


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class Classification:
    chain: Chain
    tree: LeveledTree
    nest: Nest

    def to_json(self) -> dict:
        return {"chain": self.chain.to_json(), "tree": self.tree.to_json(), "nest": self.nest.to_json()}


def classify(profile: ApproachProfile) -> Classification:
    ok, bad = validate(profile)
    if not ok:
        i, j, k = bad[0]
        raise ValidationError(
            f"exponents violate the valuation law at ({i},{j},{k}): "
            f"e_{i}{k} < min(e_{i}{j}, e_{j}{k})",
            "exponents",
        )
    n = profile.n
    e = profile.exponents
    levels = sorted({v for row in e for v in row if v > 0})
    parts = []
    for s in levels:
        block_of = list(range(n))
        for i in range(n):
            for j in range(i):
                if e[i][j] >= s:
                    block_of[i] = block_of[j]
                    break
        groups: dict[int, list[int]] = {}
        for i, b in enumerate(block_of):
            groups.setdefault(b, []).append(i + 1)
        parts.append(from_blocks(n, groups.values()))
    chain = Chain(n, tuple(parts))
    return Classification(chain, chain_to_tree(chain), nest_of(chain))
