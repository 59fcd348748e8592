"""Virtual Hodge polynomials of the compactification, its strata and bricks.

All polynomials are in ``u = z * zbar`` and, where the variety ``X`` enters,
in ``x = e(X)``. Closed strata are products (base times bricks) and open
strata likewise with open pieces; this relies on the fibrations involved
being Zariski-locally trivial, which the geometry supplies but this code
takes on trust.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from threading import Lock

from polydiag.errors import ValidationError
from polydiag.partitions import IntegerPartition, stirling2
from polydiag.polyring import ONE, U, UPoly, X, XPoly, exact_div, h
from polydiag.strata import _as_shape, brick_strata, interval_census
from polydiag.trees import Chain, enumerate_chains, lambda_sequence


def _check(m, n=None):
    if not isinstance(m, int) or m < 1:
        raise ValidationError(f"m must be a positive integer, got {m!r}", "m")
    if n is not None and (not isinstance(n, int) or n < 1):
        raise ValidationError(f"n must be a positive integer, got {n!r}", "n")


class HodgeContext:
    """Memo tables for a fixed dimension ``m``; entries are written once."""

    def __init__(self, m: int):
        _check(m)
        self.m = m
        self._u: dict[int, XPoly] = {}
        self._brick: dict[IntegerPartition, UPoly] = {}
        self._open: dict[IntegerPartition, UPoly] = {}
        self._lock = Lock()

    def _remember(self, table, key, value):
        with self._lock:
            return table.setdefault(key, value)

    def u_poly(self, n: int) -> XPoly:
        _check(self.m, n)
        if n in self._u:
            return self._u[n]
        total = XPoly.x_power(n)
        for k in range(1, n):
            total = total + self.u_poly(k) * (stirling2(n, k) * h((n - k) * self.m))
        return self._remember(self._u, n, total)

    def open_brick(self, lam) -> UPoly:
        lam = _as_shape(lam)
        if not lam.parts:
            raise ValidationError("open bricks need a nonempty integer partition", "lambda")
        if lam in self._open:
            return self._open[lam]
        um = UPoly.monomial(self.m)
        num = ONE
        for v in lam.parts:
            for j in range(1, v + 1):
                num = num * (um - j)
        return self._remember(self._open, lam, exact_div(num, U - 1))

    def brick(self, lam) -> UPoly:
        """Closed brick as open brick plus its boundary strata, recursing on the first chain member."""
        lam = _as_shape(lam)
        if not lam.parts:
            raise ValidationError("bricks need a nonempty integer partition", "lambda")
        if lam in self._brick:
            return self._brick[lam]
        total = self.open_brick(lam)
        for (below, above), count in sorted(interval_census(lam).items()):
            total = total + count * self.open_brick(below) * self.brick(above)
        return self._remember(self._brick, lam, total)


_contexts: dict[int, HodgeContext] = {}
_contexts_lock = Lock()


def context(m: int) -> HodgeContext:
    _check(m)
    with _contexts_lock:
        if m not in _contexts:
            _contexts[m] = HodgeContext(m)
        return _contexts[m]


def u_poly(m: int, n: int) -> XPoly:
    """``e`` of the compactification of ``n`` points, as a polynomial in ``x = e(X)``."""
    return context(m).u_poly(n)


def u_poly_closed(m: int, n: int) -> XPoly:
    """Same polynomial summed directly over index chains ``s = j_0 < ... < j_r = n``."""
    _check(m, n)
    total = XPoly.x_power(n)
    for s in range(1, n):
        coeff = UPoly()
        for r in range(1, n - s + 1):
            for middle in combinations(range(s + 1, n), r - 1):
                js = (s,) + middle + (n,)
                term = ONE
                for lo, hi in zip(js, js[1:]):
                    term = term * (stirling2(hi, lo) * h((hi - lo) * m))
                coeff = coeff + term
        total = total + XPoly.x_power(s, coeff)
    return total


_conf_cache: dict[int, XPoly] = {}


def conf_poly(n: int) -> XPoly:
    """``e(Conf(X, n))`` from ``x^n = sum_k S(n,k) e(Conf(X, k))``."""
    _check(1, n)
    if n not in _conf_cache:
        total = XPoly.x_power(n)
        for k in range(1, n):
            total = total - conf_poly(k) * stirling2(n, k)
        _conf_cache.setdefault(n, total)
    return _conf_cache[n]


def open_brick_poly(m: int, lam) -> UPoly:
    return context(m).open_brick(lam)


def brick_poly(m: int, lam) -> UPoly:
    return context(m).brick(lam)


def brick_poly_by_chains(m: int, lam) -> UPoly:
    """Closed brick polynomial summed explicitly over every chain of its stratification."""
    ctx = context(m)
    total = UPoly()
    for _, shapes in brick_strata(lam):
        term = ONE
        for s in shapes:
            term = term * ctx.open_brick(s)
        total = total + term
    return total


def stratum_poly(m: int, chain: Chain, open: bool = False) -> XPoly:
    """Closed: ``U_(rank p_1) * prod brick(lambda_i)``; open: ``Conf * prod open_brick(lambda_i)``."""
    ctx = context(m)
    if not chain.partitions:
        return conf_poly(chain.n) if open else ctx.u_poly(chain.n)
    seq = lambda_sequence(chain)
    base = seq[0].parts[0]
    fiber = ONE
    for lam in seq[1:]:
        fiber = fiber * (ctx.open_brick(lam) if open else ctx.brick(lam))
    return (conf_poly(base) if open else ctx.u_poly(base)) * fiber


@dataclass
class ConsistencyReport:
    m: int
    n: int
    chains: int
    expected: XPoly
    total: XPoly
    diff: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diff

    def to_json(self) -> dict:
        return {"ok": self.ok, "m": self.m, "n": self.n, "chains": self.chains, "diff": self.diff}


def consistency_check(m: int, n: int) -> ConsistencyReport:
    """Open strata over all chains must add up to the whole space."""
    _check(m, n)
    if n < 2:
        raise ValidationError(f"consistency check needs n >= 2, got {n}", "n")
    total = XPoly()
    count = 0
    for chain in enumerate_chains(n):
        total = total + stratum_poly(m, chain, open=True)
        count += 1
    expected = u_poly(m, n)
    diff = []
    for i in range(max(len(total.coeffs), len(expected.coeffs))):
        a, b = expected[i], total[i]
        for j in range(max(len(a.coeffs), len(b.coeffs))):
            if a[j] != b[j]:
                diff.append({"x": i, "u": j, "expected": str(a[j]), "got": str(b[j])})
    return ConsistencyReport(m, n, count, expected, total, diff)


def eulerian_from_brick(r: int) -> list[int]:
    """Coefficients of the permutahedral variety's polynomial (m = 1, lambda = 1^r)."""
    return list(brick_poly(1, IntegerPartition((1,) * r)).coeffs)


__all__ = [
    "HodgeContext", "context", "u_poly", "u_poly_closed", "conf_poly", "open_brick_poly",
    "brick_poly", "brick_poly_by_chains", "stratum_poly", "consistency_check", "ConsistencyReport",
    "eulerian_from_brick", "X",
]
