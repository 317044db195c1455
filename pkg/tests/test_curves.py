import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisemi.curves import (
    WeierstrassCurve,
    count_points_bruteforce,
    curve_to_semimodule,
    good_reduction,
    mp_formula_check,
    read_battery,
    reduction_table,
    restricted_rank_count,
)
from bisemi.errors import BadReduction, EvenCharacteristic, SingularCurve
from bisemi.exactalg import QuadNum
from bisemi.primes import primes_upto

BATTERY = [(1, 1), (-1, 0), (0, 1), (2, 3), (-2, 5)]


def enumerate_points(a, b, p):
    """Independent oracle: every (x, y) pair plus the point at infinity."""
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x**3 - a * x - b) % p == 0)


def test_singular_rejected():
    with pytest.raises(SingularCurve):
        WeierstrassCurve(0, 0)
    with pytest.raises(SingularCurve):
        WeierstrassCurve(-3, 2)
    assert WeierstrassCurve(-1, 0).discriminant == 64


@pytest.mark.parametrize("p, count", [(3, 4), (5, 9), (7, 5)])
def test_count_examples(p, count):
    rep = count_points_bruteforce(WeierstrassCurve(1, 1), p)
    assert rep.count == count == enumerate_points(1, 1, p)
    assert rep.a_p == p + 1 - count


def test_count_other_examples():
    assert count_points_bruteforce(WeierstrassCurve(-1, 0), 3).count == 4
    with pytest.raises(BadReduction):
        count_points_bruteforce(WeierstrassCurve(1, 1), 31)
    with pytest.raises(EvenCharacteristic):
        count_points_bruteforce(WeierstrassCurve(1, 1), 2)


def test_good_reduction():
    c = WeierstrassCurve(1, 1)
    assert not good_reduction(c, 2)
    assert not good_reduction(c, 31)
    assert good_reduction(c, 29)
    with pytest.raises(ValueError):
        good_reduction(c, 9)


@pytest.mark.parametrize("a, b", BATTERY)
def test_counts_against_enumeration(a, b):
    c = WeierstrassCurve(a, b)
    for rep in reduction_table(c, 60):
        if rep.good:
            assert rep.count == enumerate_points(a, b, rep.p)


@pytest.mark.parametrize("a, b", BATTERY)
def test_hasse_bound(a, b):
    for rep in reduction_table(WeierstrassCurve(a, b), 200):
        if rep.good:
            assert rep.count == rep.p + 1 - rep.a_p
            assert rep.a_p**2 <= 4 * rep.p
        else:
            assert (rep.count, rep.a_p) == (0, 0)


def test_reduction_table_covers_odd_primes():
    rows = reduction_table(WeierstrassCurve(1, 1), 50)
    assert [r.p for r in rows] == [int(p) for p in primes_upto(50) if p > 2]


def test_mp_examples():
    r = mp_formula_check(5, 1, 9)
    assert (r.value, r.root, r.holds) == (81, 9, True)
    assert mp_formula_check(11, 2, 0).root == 0
    r = mp_formula_check(7, 3, 4)
    assert (r.value, r.root) == (16, 4)


def test_mp_grid():
    for p in (int(q) for q in primes_upto(50)):
        for N in range(1, 11):
            for m in range(51):
                assert mp_formula_check(p, N, m).holds


def test_curve_to_semimodule_examples():
    phi = curve_to_semimodule(WeierstrassCurve(1, 1), 7)
    assert [(n, m) for n, m, _ in phi.terms] == [(3, 4), (5, 9), (7, 5)]
    assert len(curve_to_semimodule(WeierstrassCurve(1, 1), 2)) == 0


@pytest.mark.parametrize("N", [1, 3])
def test_semimodule_coefficients_are_hecke_pairs(N):
    c = WeierstrassCurve(2, 3)
    minus = curve_to_semimodule(c, 60, N, "minus")
    plus = curve_to_semimodule(c, 60, N, "plus")
    for (p, m, lm), (_, _, lp) in zip(minus.terms, plus.terms):
        assert lp * lm == (p * N) ** 2
        assert lp + lm == 1 + (m * N) ** 2 + (p * N) ** 2
        assert isinstance(lm, QuadNum)


def test_restricted_rank_examples():
    assert restricted_rank_count(WeierstrassCurve(1, 1), 20) == (7, [3, 5, 7, 11, 13, 17, 19])
    assert restricted_rank_count(WeierstrassCurve(1, 1), 2) == (0, [])
    assert restricted_rank_count(WeierstrassCurve(-1, 0), 10) == (3, [3, 5, 7])


@given(st.sampled_from(BATTERY), st.integers(2, 150), st.integers(0, 50))
def test_restricted_rank_monotone(ab, p_max, extra):
    c = WeierstrassCurve(*ab)
    assert restricted_rank_count(c, p_max)[0] <= restricted_rank_count(c, p_max + extra)[0]


def test_read_battery():
    text = "# battery\n1 1\n\n-1 0  # congruent\n"
    assert read_battery(text) == [WeierstrassCurve(1, 1), WeierstrassCurve(-1, 0)]


@given(st.integers(-30, 30), st.integers(-30, 30), st.sampled_from([3, 5, 7, 11, 13]))
def test_count_property(a, b, p):
    if 4 * a**3 + 27 * b**2 == 0:
        return
    c = WeierstrassCurve(a, b)
    if not good_reduction(c, p):
        return
    assert count_points_bruteforce(c, p).count == enumerate_points(a, b, p)
    assert abs(p + 1 - enumerate_points(a, b, p)) <= 2 * math.sqrt(p)
