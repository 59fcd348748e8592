from itertools import permutations
from math import factorial
from threading import Thread

import pytest
from hypothesis import given, settings

from conftest import integer_partitions_st
from polydiag.errors import ValidationError
from polydiag.hodge import (
    HodgeContext,
    brick_poly,
    brick_poly_by_chains,
    conf_poly,
    consistency_check,
    eulerian_from_brick,
    open_brick_poly,
    stratum_poly,
    u_poly,
    u_poly_closed,
)
from polydiag.partitions import IntegerPartition, bottom, from_blocks, integer_partitions
from polydiag.polyring import ONE, U, UPoly, X, XPoly, projective
from polydiag.trees import Chain, enumerate_chains

ip = lambda *p: IntegerPartition(p)


def eulerian_oracle(r):
    # number of permutations of [r] with k descents, by brute force
    counts = [0] * r
    for perm in permutations(range(r)):
        counts[sum(1 for a, b in zip(perm, perm[1:]) if a > b)] += 1
    return counts


def falling_factorial(n):
    p = XPoly((ONE,))
    for j in range(n):
        p = p * (X - j)
    return p


# ------------------------------------------------------------------ U polys


def test_u_poly_examples():
    assert u_poly(1, 2) == X**2
    assert u_poly(2, 2) == X**2 + U * X
    assert u_poly(1, 3) == X**3 + U * X
    assert u_poly(3, 1) == X


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 7))
def test_closed_form_matches_recursion(m, n):
    assert u_poly_closed(m, n) == u_poly(m, n)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 7))
def test_u_degree_bound(m, n):
    p = u_poly(m, n)
    assert p.degree == n and p[n] == ONE
    for s in range(n + 1):
        assert p[s].degree <= (n - s) * m


def test_u_for_curves():
    # for m = 1 blowing up the diagonal of a curve changes nothing
    assert u_poly(1, 1).eval_x(ONE) == ONE
    assert u_poly(1, 2).eval_x(ONE + U) == (ONE + U) ** 2


# ------------------------------------------------------------------- Conf


def test_conf_examples():
    assert conf_poly(1) == X
    assert conf_poly(2) == X**2 - X
    assert conf_poly(3) == X**3 - 3 * X**2 + 2 * X


@pytest.mark.parametrize("n", range(1, 10))
def test_conf_is_falling_factorial(n):
    assert conf_poly(n) == falling_factorial(n)


def test_conf_rejects_bad_n():
    with pytest.raises(ValidationError):
        conf_poly(0)


# ----------------------------------------------------------------- bricks


def test_open_brick_examples():
    assert open_brick_poly(1, ip(1)) == ONE
    assert open_brick_poly(1, ip(2)) == U - 2
    assert open_brick_poly(1, ip(1, 1)) == U - 1


def test_brick_examples():
    assert brick_poly(1, ip(1, 1, 1)) == U**2 + 4 * U + 1
    assert brick_poly(1, ip(2)) == U + 1
    for m in range(1, 5):
        assert brick_poly(m, ip(1)) == projective(m)


def test_brick_rejects_empty_shape():
    with pytest.raises(ValidationError):
        brick_poly(1, ip())
    with pytest.raises(ValidationError):
        open_brick_poly(1, ip())
    with pytest.raises(ValidationError):
        brick_poly(0, ip(1))


@pytest.mark.parametrize("r", range(1, 7))
def test_permutahedral_bricks_are_eulerian(r):
    assert eulerian_from_brick(r) == eulerian_oracle(r)


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("w", range(1, 5))
def test_brick_degree_and_duality(m, w):
    for lam in integer_partitions(w):
        p = brick_poly(m, lam)
        assert p.degree == m * w - 1
        assert p.coeffs[-1] == 1 and p.coeffs[0] == 1
        assert p.is_palindromic()
        assert all(c > 0 for c in p.coeffs)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("r", range(1, 5))
def test_small_brick_bundle(m, r):
    ones = ip(*([1] * r))
    assert brick_poly(m, ones) == brick_poly(1, ones) * projective(m) ** r


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("w", range(1, 5))
def test_brick_two_routes_agree(m, w):
    for lam in integer_partitions(w):
        assert brick_poly(m, lam) == brick_poly_by_chains(m, lam)


@given(integer_partitions_st(max_weight=7))
@settings(max_examples=40)
def test_open_brick_torus_fibration(lam):
    # open compound brick = torus of rank r-1 times the product of open simple bricks
    for m in (1, 2):
        prod = ONE
        for v in lam.parts:
            prod = prod * open_brick_poly(m, ip(v))
        assert open_brick_poly(m, lam) == (U - 1) ** (len(lam) - 1) * prod


def test_open_brick_euler_characteristic():
    # for m = 1 the open simple brick of (v) is M_{0,v+2}, with Euler characteristic (-1)^(v-1) (v-1)!
    for v in range(1, 8):
        assert open_brick_poly(1, ip(v))(1) == (-1) ** (v - 1) * factorial(v - 1)


# ----------------------------------------------------------------- strata


def test_stratum_examples():
    c = Chain(2, (bottom(2),))
    assert stratum_poly(1, c) == X
    assert stratum_poly(2, c) == X * (ONE + U)
    for n in range(2, 6):
        assert stratum_poly(1, Chain(n, ()), open=True) == conf_poly(n)
        assert stratum_poly(2, Chain(n, ())) == u_poly(2, n)


def test_divisor_stratum_three_cherries():
    # D^{12|34|56} for m = 1: bundle over X<3> with fiber P^2 blown up at 3 points
    p = from_blocks(6, [{1, 2}, {3, 4}, {5, 6}])
    assert stratum_poly(1, Chain(6, (p,))) == u_poly(1, 3) * (U**2 + 4 * U + 1)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", range(2, 6))
def test_consistency(m, n):
    report = consistency_check(m, n)
    assert report.ok, report.diff
    assert report.to_json() == {"ok": True, "m": m, "n": n, "chains": report.chains, "diff": []}


def test_consistency_chain_counts():
    assert consistency_check(1, 4).chains == 64
    assert consistency_check(2, 3).chains == 8
    assert consistency_check(1, 2).ok
    with pytest.raises(ValidationError):
        consistency_check(1, 1)


def test_closed_strata_inclusion_exclusion():
    # a closed stratum is the union of the open strata of the chains containing it
    m, n = 2, 4
    chains = list(enumerate_chains(n))
    for c in chains[:20]:
        members = set(c.partitions)
        total = XPoly()
        for d in chains:
            if members <= set(d.partitions):
                total = total + stratum_poly(m, d, open=True)
        assert total == stratum_poly(m, c)


def test_context_is_threadsafe_and_stable():
    ctx = HodgeContext(2)
    results = []

    def work():
        results.append((ctx.u_poly(6), ctx.brick(ip(2, 1, 1))))

    threads = [Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
    assert results[0] == (u_poly(2, 6), brick_poly(2, ip(2, 1, 1)))


def test_hodge_context_rejects_bad_m():
    with pytest.raises(ValidationError):
        HodgeContext(0)


def test_brick_poly_type():
    assert isinstance(brick_poly(1, (2, 1)), UPoly)
