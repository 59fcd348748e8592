from collections import Counter
from itertools import product

import pytest

from polydiag.errors import ValidationError
from polydiag.partitions import IntegerPartition, bottom, from_blocks, integer_partitions, top
from polydiag.strata import (
    Brick,
    Stratum,
    brick_centers,
    brick_decomposition,
    brick_order_leq,
    brick_strata,
    bundle_description,
    contains,
    divisor_fiber,
    interval_census,
    intersect,
    open_interval,
)
from polydiag.trees import Chain, enumerate_chains, lambda_sequence

ip = lambda *p: IntegerPartition(p)


def P(n, *blocks):
    return from_blocks(n, blocks)


FIG = Chain(9, (
    from_blocks(9, [{1, 2, 3, 5, 7}, {9}, {4, 6, 8}]),
    from_blocks(9, [{1, 5}, {2, 3}, {7}, {9}, {4, 6, 8}]),
    from_blocks(9, [{1}, {2, 3}, {4, 6}, {5}, {7}, {8}, {9}]),
))


# ------------------------------------------------------------- bricks


def test_brick_basics():
    b = Brick(2, ip(2, 1))
    assert b.dim == 5 and not b.simple
    assert Brick(1, ip(3)).simple
    assert str(Brick(1, ip(1, 1))) == "M^1_(1,1)"
    with pytest.raises(ValidationError):
        Brick(1, ip())
    with pytest.raises(ValidationError):
        Brick(0, ip(1))


# ------------------------------------------------------------ divisors


def test_divisor_fiber_examples():
    assert divisor_fiber(P(4, {1, 2}, {3, 4}), 1) == (2, Brick(1, ip(1, 1)))
    assert Brick(1, ip(1, 1)).dim == 1  # a P^1
    for n in range(2, 7):
        assert divisor_fiber(bottom(n), 2) == (1, Brick(2, ip(n - 1)))
    base, fiber = divisor_fiber(P(6, {1, 2}, {3, 4}, {5, 6}), 1)
    assert (base, fiber.shape, fiber.dim) == (3, ip(1, 1, 1), 2)
    with pytest.raises(ValidationError):
        divisor_fiber(top(4), 1)


# -------------------------------------------------------------- strata


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("n", range(2, 7))
def test_dimension_identity(m, n):
    for c in enumerate_chains(n):
        s = Stratum(n, m, c)
        assert s.codim == c.length
        assert m * n - c.length == m * s.base_size + sum(m * f.weight - 1 for f in s.fibers)


def test_bundle_description_examples():
    d = bundle_description(FIG, 1)
    assert d.base == "X<3>"
    assert [f.shape for f in d.fibers] == [ip(2), ip(1, 1), ip(1, 1)]
    assert d.dim == 3 + 1 + 1 + 1 == 9 - 3
    d = bundle_description(Chain(5, (bottom(5),)), 2)
    assert (d.base, [f.shape for f in d.fibers]) == ("X<1>", [ip(4)])
    d = bundle_description(Chain(4, (bottom(4), P(4, {1, 2}, {3, 4}))), 3)
    assert (d.base, [f.shape for f in d.fibers]) == ("X<1>", [ip(1), ip(1, 1)])
    whole = bundle_description(Chain(4, ()), 2)
    assert (whole.base, whole.fibers, whole.dim) == ("X<4>", (), 8)
    assert str(whole) == "X<4>"
    assert str(bundle_description(Chain(2, (bottom(2),)), 1)) == "X<1> <- M^1_(1)"


def test_stratum_json():
    j = Stratum(9, 1, FIG).to_json()
    assert j["codim"] == 3 and j["dim"] == 6 and j["base"] == "X<3>"
    assert j["fibers"] == [[2], [1, 1], [1, 1]]


# ------------------------------------------------- intersection calculus


def test_intersect_examples():
    a = Chain(4, (bottom(4),))
    b = Chain(4, (P(4, {1, 2}, {3, 4}),))
    s = intersect(a, b)
    assert s.chain == Chain(4, (bottom(4), P(4, {1, 2}, {3, 4})))
    assert intersect(Chain(4, (P(4, {1, 2}, {3}, {4}),)), Chain(4, (P(4, {1}, {2}, {3, 4}),))) is None
    assert intersect(a, s.chain).chain == s.chain
    with pytest.raises(ValidationError):
        intersect(Chain(3, ()), Chain(4, ()))


def test_intersect_same_rank_is_empty():
    assert intersect(Chain(4, (P(4, {1, 2}, {3, 4}),)), Chain(4, (P(4, {1, 3}, {2, 4}),))) is None


@pytest.mark.parametrize("n", [3, 4])
def test_intersection_laws(n):
    chains = list(enumerate_chains(n))
    for a in chains:
        assert intersect(a, a).chain == a
        for b in chains:
            ab, ba = intersect(a, b), intersect(b, a)
            assert (ab is None) == (ba is None)
            if ab is None:
                continue
            assert ab.chain == ba.chain
            # S_a contains S_(a u b), and S_a contains S_b exactly when a is a subset of b
            assert contains(a, ab.chain) and contains(b, ab.chain)
            assert contains(a, b) == (ab.chain == b)


def test_intersection_associative():
    chains = list(enumerate_chains(3))
    for a, b, c in product(chains, repeat=3):
        ab = intersect(a, b)
        bc = intersect(b, c)
        left = None if ab is None else intersect(ab.chain, c)
        right = None if bc is None else intersect(a, bc.chain)
        if left is not None and right is not None:
            assert left.chain == right.chain


def test_containment_is_order_isomorphism():
    chains = list(enumerate_chains(4))
    for a in chains:
        for b in chains:
            assert contains(a, b) == set(a.partitions).issubset(b.partitions)
            if contains(a, b) and contains(b, a):
                assert a == b


# -------------------------------------------------------- brick strata


def test_brick_strata_examples():
    assert len(list(brick_strata(ip(2)))) == 4
    assert list(brick_strata(ip(1))) == [((), [ip(1)])]
    items = list(brick_strata(ip(1, 1)))
    assert len(items) == 3
    assert items[0] == ((), [ip(1, 1)])
    assert all(shapes == [ip(1), ip(1)] for _, shapes in items[1:])
    with pytest.raises(ValidationError):
        list(brick_strata(ip()))


@pytest.mark.parametrize("w", range(1, 5))
def test_brick_strata_shapes_add_up(w):
    for lam in integer_partitions(w):
        for chain, shapes in brick_strata(lam):
            assert len(shapes) == len(chain) + 1
            # dimension of the stratum drops by the chain length
            assert sum(s.weight - 1 for s in shapes) == lam.weight - 1 - len(chain)


def test_brick_centers_examples():
    assert brick_centers(ip(3)) == [Counter({ip(1): 7}), Counter({ip(2): 6})]
    assert brick_centers(ip(1)) == []
    # three points of P^2, then the three lines through pairs of them
    assert brick_centers(ip(1, 1, 1)) == [Counter({ip(1): 3}), Counter({ip(1, 1): 3})]


def test_interval_census_total():
    for lam in (ip(3), ip(2, 1), ip(1, 1, 1)):
        assert sum(interval_census(lam).values()) == len(open_interval(lam))


def test_brick_decomposition_examples():
    d = brick_decomposition(ip(1, 1, 1), 1)
    assert d.closed_fiber == Brick(1, ip(1, 1, 1))
    assert all(b.dim == 0 for b in d.closed_base)
    d = brick_decomposition(ip(2, 1), 2)
    assert d.torus_rank == 1 and d.closed_fiber is None
    assert [b.shape for b in d.open_base] == [ip(2), ip(1)]
    assert d.to_json()["closed"] is None
    with pytest.raises(ValidationError):
        brick_decomposition(ip(3), 1)


# -------------------------------------------------------------- orders


def test_brick_order_examples():
    assert brick_order_leq(ip(5, 3), ip(4, 2, 1, 1))
    assert brick_order_leq(ip(4, 4), ip(4, 4))
    assert not brick_order_leq(ip(4, 4), ip(5, 2, 1))
    with pytest.raises(ValidationError):
        brick_order_leq(ip(3), ip(2, 2))


@pytest.mark.parametrize("r", range(1, 8))
def test_brick_order_is_partial_order(r):
    lams = list(integer_partitions(r))
    leq = {(a, b): brick_order_leq(a, b) for a in lams for b in lams}
    for a in lams:
        assert leq[a, a]
        assert leq[(ip(r), a)]  # every partition refines the one-part partition
        for b in lams:
            if leq[a, b] and leq[b, a]:
                assert a == b
            if leq[a, b]:
                assert len(b) >= len(a)
            for c in lams:
                if leq[a, b] and leq[b, c]:
                    assert leq[a, c]


def test_lambda_sequence_of_divisors():
    for c in enumerate_chains(4, length=1):
        p = c.partitions[0]
        seq = lambda_sequence(c)
        assert seq[1] == p.shape
        assert divisor_fiber(p, 1)[1].shape == seq[1]
