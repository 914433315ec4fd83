import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from squarepack.constructions import Decomposition, conjectured_value, construct_conjectured, decompose, grid, substitute
from squarepack.geometry import Packing, side_sum, verify


@pytest.mark.parametrize("n, expected", [
    (9, Decomposition(9, 3)),
    (5, Decomposition(5, 2, 0)),
    (3, Decomposition(3, 2, -1)),
    (12, Decomposition(12, 3, 1)),
    (1, Decomposition(1, 1)),
    (2, Decomposition(2, 1, 0)),
])
def test_decompose_examples(n, expected):
    assert decompose(n) == expected


@pytest.mark.parametrize("n", [0, -3])
def test_decompose_rejects_nonpositive(n):
    with pytest.raises(ValueError):
        decompose(n)
    with pytest.raises(ValueError):
        conjectured_value(n)


def test_conjectured_values():
    assert conjectured_value(4) == 2
    assert conjectured_value(3) == F(3, 2)
    assert conjectured_value(12) == F(10, 3)


def test_decomposition_round_trip_to_a_million():
    for n in range(1, 10 ** 6 + 1):
        d = decompose(n)
        assert d.recompose() == n
        if not d.is_square:
            assert abs(d.c) <= d.k - 1


def test_decomposition_unique_by_scan():
    for n in range(1, 10 ** 4 + 1):
        if math.isqrt(n) ** 2 == n:
            continue
        hits = []
        for k in range(1, math.isqrt(n) + 3):
            rest = n - k * k - 1
            if rest % 2 == 0 and abs(rest // 2) <= k - 1:
                hits.append((k, rest // 2))
        d = decompose(n)
        assert hits == [(d.k, d.c)]


@pytest.mark.parametrize("b", [1, 3, 10])
def test_grid(b):
    g = grid(b)
    assert len(g) == b * b and side_sum(g) == b and verify(g).valid
    with pytest.raises(ValueError):
        grid(0)


def test_substitute_examples():
    p = substitute(2, 1, 0, 0, grid(2))
    assert len(p) == 7 and side_sum(p) == F(5, 2) == conjectured_value(7)
    assert verify(p).valid

    p = substitute(3, 1, 2, 2, grid(2))
    assert len(p) == 12 and side_sum(p) == F(10, 3) == conjectured_value(12)
    assert verify(p).valid

    inner = construct_conjectured(7)
    same = substitute(4, 4, 0, 0, inner)
    assert sorted(same.squares, key=repr) == sorted(inner.squares, key=repr)


def test_substitute_errors():
    with pytest.raises(ValueError):
        substitute(2, 3, 0, 0, grid(1))
    with pytest.raises(ValueError):
        substitute(3, 2, 2, 0, grid(1))
    bad = Packing((grid(1).squares[0], grid(1).squares[0]))
    with pytest.raises(ValueError):
        substitute(3, 1, 0, 0, bad)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_substitution_sum_law(data):
    b = data.draw(st.integers(1, 9))
    a = data.draw(st.integers(1, b))
    col = data.draw(st.integers(0, b - a))
    row = data.draw(st.integers(0, b - a))
    inner = construct_conjectured(data.draw(st.integers(1, 40).filter(lambda n: decompose(n).c != 0)))
    p = substitute(b, a, col, row, inner)
    assert side_sum(p) == (a * side_sum(inner) + b * b - a * a) / F(b)
    assert len(p) == b * b - a * a + len(inner)
    assert verify(p).valid


def test_construct_examples():
    p = construct_conjectured(7)
    assert len(p) == 7 and side_sum(p) == F(5, 2) and verify(p).valid

    p = construct_conjectured(3)
    assert len(p) == 3 and [s.side for s in p] == [F(1, 2)] * 3 and verify(p).valid

    p = construct_conjectured(5, F(1, 100))
    assert len(p) == 5 and F(199, 100) <= side_sum(p) < 2 and verify(p).valid


def test_construct_slack_contract():
    with pytest.raises(ValueError):
        construct_conjectured(5)
    with pytest.raises(ValueError):
        construct_conjectured(5, 0)
    with pytest.raises(ValueError):
        construct_conjectured(5, F(1, 2))  # must be < 1/k
    with pytest.raises(ValueError):
        construct_conjectured(7, F(1, 100))
    assert len(construct_conjectured(2, F(1, 3))) == 2


@pytest.mark.parametrize("k", range(1, 13))
def test_construction_exactness(k):
    for c in range(-(k - 1), k):
        if c == 0:
            continue
        n = k * k + 2 * c + 1
        p = construct_conjectured(n)
        assert len(p) == n
        assert side_sum(p) == k + F(c, k)
        assert verify(p).valid


@given(st.integers(1, 8), st.integers(2, 10 ** 6), st.integers(2, 10 ** 6))
def test_zero_family_is_monotone_and_below_k(k, d1, d2):
    s1, s2 = sorted({F(1, k * d1), F(1, k * d2)})[0], max(F(1, k * d1), F(1, k * d2))
    n = k * k + 1
    low, high = side_sum(construct_conjectured(n, s1)), side_sum(construct_conjectured(n, s2))
    assert high < 2 * k  # sanity
    if s1 != s2:
        assert low > high  # smaller slack, larger sum
    assert max(low, high) < k
    assert low >= k - s1
