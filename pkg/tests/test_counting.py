import json
from collections import Counter
from itertools import combinations
from math import factorial

import pytest

from polydiag.counting import (
    construction_schedule,
    fm_strata,
    partitions_with_block_sizes,
    polydiag_strata,
    saturated_chain_count,
    strata_by_codim,
    strata_table,
    table_json,
    theta_schedule,
    theta_schedule_by_enumeration,
    z,
)
from polydiag.errors import ValidationError
from polydiag.partitions import bell, enumerate_partitions, integer_partitions, stirling2
from polydiag.trees import enumerate_chains

FM_ROW = [2, 8, 52, 472, 5504, 78416, 1320064, 25637824]
PD_ROW = [2, 8, 64, 872, 18024, 525520, 20541392, 1036555120]


def nests_by_brute_force(n):
    # all laminar families of >=2-subsets of [n], by subset search
    subsets = [frozenset(c) for k in range(2, n + 1) for c in combinations(range(1, n + 1), k)]
    count = 0

    def rec(i, chosen):
        nonlocal count
        if i == len(subsets):
            count += 1
            return
        rec(i + 1, chosen)
        s = subsets[i]
        if all(not (s & t) or s <= t or t <= s for t in chosen):
            chosen.append(s)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return count


def test_table_rows():
    assert [fm_strata(n) for n in range(2, 10)] == FM_ROW
    assert [polydiag_strata(n) for n in range(2, 10)] == PD_ROW


def test_z_values():
    assert z(5) == 436
    assert z(2) == 1
    assert z(9) == 518277560
    with pytest.raises(ValidationError):
        z(0)


@pytest.mark.parametrize("n", range(2, 6))
def test_fm_strata_brute_force(n):
    assert fm_strata(n) == nests_by_brute_force(n)


def test_table_inequality():
    for n in range(2, 12):
        a, b = fm_strata(n), polydiag_strata(n)
        assert b >= a
        assert (a == b) == (n <= 3)


@pytest.mark.parametrize("n", range(2, 10))
def test_codim_anchors(n):
    assert strata_by_codim(n, 0) == 1
    assert strata_by_codim(n, 1) == bell(n) - 1
    assert strata_by_codim(n, n - 1) == factorial(n) * factorial(n - 1) // 2 ** (n - 1) == saturated_chain_count(n)
    assert sum(strata_by_codim(n, k) for k in range(n)) == polydiag_strata(n)


def test_codim_examples():
    assert strata_by_codim(5, 1) == 51
    assert strata_by_codim(4, 3) == 18
    with pytest.raises(ValidationError):
        strata_by_codim(4, 4)
    with pytest.raises(ValidationError):
        strata_by_codim(4, -1)


@pytest.mark.parametrize("n", range(2, 7))
def test_codim_against_enumeration(n):
    got = Counter(c.length for c in enumerate_chains(n))
    assert got == Counter({k: strata_by_codim(n, k) for k in range(n)})


def _schedule(n):
    return [[(tuple(s.parts), c) for s, c in stage.centers] for stage in theta_schedule(n)]


def test_theta_schedule_examples():
    assert _schedule(4) == [[((2, 2), 3)]]
    assert _schedule(5) == [[((3, 2), 10)], [((2, 2, 1), 15)]]
    shapes = [[s for s, _ in stage] for stage in _schedule(6)]
    assert shapes == [[(4, 2), (3, 3)], [(3, 2, 1), (2, 2, 2)], [(2, 2, 1, 1)]]
    assert [stage.k for stage in theta_schedule(6)] == [2, 3, 4]
    for n in (1, 2, 3):
        assert theta_schedule(n) == []


@pytest.mark.parametrize("n", range(4, 8))
def test_theta_schedule_against_enumeration(n):
    assert theta_schedule(n) == theta_schedule_by_enumeration(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_multinomial_counts(n):
    tally = Counter(p.block_sizes for p in enumerate_partitions(n))
    for sizes in integer_partitions(n):
        assert partitions_with_block_sizes(sizes) == tally[sizes]


def test_theta_stage_total():
    stage = theta_schedule(6)[0]
    assert stage.total == 15 + 10


def test_construction_schedule():
    assert construction_schedule(4) == [(1, 1), (2, 7), (3, 6)]
    assert construction_schedule(2) == [(1, 1)]
    assert construction_schedule(5) == [(1, 1), (2, 15), (3, 25), (4, 10)]


def test_table_render_verbatim():
    expected = (
        "n    2 3  4   5     6      7        8          9\n"
        "X[n] 2 8 52 472  5504  78416  1320064   25637824\n"
        "X<n> 2 8 64 872 18024 525520 20541392 1036555120\n"
    )
    assert strata_table(9).render() == expected


def test_table_csv_and_json():
    t = strata_table(4)
    assert t.to_csv() == "n,fm_strata,polydiag_strata\n2,2,2\n3,8,8\n4,52,64\n"
    rows = json.loads(table_json(9))
    assert [int(r["polydiag_strata"]) for r in rows] == PD_ROW
    assert [int(r["fm_strata"]) for r in rows] == FM_ROW
    with pytest.raises(ValidationError):
        strata_table(1)


def test_big_n_exact():
    # 2Z(n) grows fast; values stay exact integers
    v = polydiag_strata(30)
    assert isinstance(v, int) and v > 10**40
    assert v == 2 * sum(stirling2(30, k) * z(k) for k in range(1, 30))
