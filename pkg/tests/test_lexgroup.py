import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcvclosure.lexgroup import (
    INFINITY,
    AffineExp,
    GroupElement,
    Ordering,
    RankError,
    add,
    affine_eval,
    affine_first_above,
    affine_solve,
    exceeds_convex,
    in_convex,
    leading_index,
    lex_cmp,
    parse_group_element,
    scalar_mul,
    sub,
    truncate,
)

from oracles import e


def elems(rank):
    return st.tuples(*[st.integers(-20, 20)] * rank).map(GroupElement)


ranked = st.integers(1, 4).flatmap(lambda r: st.tuples(elems(r), elems(r), elems(r)))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (e(0, 1), e(1, 0), Ordering.LT),
        (e(2, -7), e(2, -7), Ordering.EQ),
        (INFINITY, e(10**6, 10**6), Ordering.GT),
        (e(10**6, 10**6), INFINITY, Ordering.LT),
        (INFINITY, INFINITY, Ordering.EQ),
    ],
)
def test_lex_cmp(a, b, expected):
    assert lex_cmp(a, b) == expected


def test_arithmetic_examples():
    assert add(e(0, 1), e(1, -1)) == e(1, 0)
    assert scalar_mul(3, e(0, 2)) == e(0, 6)
    assert sub(INFINITY, e(1, 0)) is INFINITY
    assert add(e(1, 1), INFINITY) is INFINITY
    assert -e(1, -2) == e(-1, 2)


def test_infinity_rules():
    with pytest.raises(ArithmeticError):
        sub(INFINITY, INFINITY)
    with pytest.raises(ArithmeticError):
        sub(e(1), INFINITY)
    assert scalar_mul(2, INFINITY) is INFINITY
    with pytest.raises(ArithmeticError):
        scalar_mul(0, INFINITY)


def test_rank_mismatch():
    with pytest.raises(RankError):
        e(1, 0) + e(1)
    with pytest.raises(RankError):
        lex_cmp(e(1, 0), e(1, 0, 0))


@pytest.mark.parametrize("g, expected", [(e(0, 3), 2), (e(0, 0), None), (e(-1, 5), 1), (e(0, 0, -2), 3)])
def test_leading_index(g, expected):
    assert leading_index(g) == expected


def test_convex_subgroups():
    assert in_convex(e(0, 0, 5), 2)
    assert not in_convex(e(0, 1, 5), 2)
    assert in_convex(e(3, 1, 5), 0)
    assert exceeds_convex(e(0, 1, -9), 2)
    assert not exceeds_convex(e(0, 0, 9), 2)
    assert exceeds_convex(INFINITY, 1)
    assert truncate(e(4, 5, 6), 1) == e(4, 0, 0)


@pytest.mark.parametrize(
    "base, step, n, expected",
    [(e(0, 1), e(0, 1), 3, e(0, 4)), (e(0, 1), e(0, 1), 0, e(0, 1)), (e(1, 0), e(0, 2), 5, e(1, 10))],
)
def test_affine_eval(base, step, n, expected):
    assert affine_eval(AffineExp(base, step, 0), n) == expected


@pytest.mark.parametrize(
    "base, step, target, expected",
    [(e(0, 1), e(0, 1), e(0, 4), 3), (e(0, 1), e(0, 1), e(1, 0), None), (e(0, 2), e(0, 2), e(0, 5), None)],
)
def test_affine_solve(base, step, target, expected):
    assert affine_solve(AffineExp(base, step, 0), target) == expected


def test_affine_respects_start():
    line = AffineExp(e(0, 1), e(0, 1), 2)
    assert affine_solve(line, e(0, 2)) is None
    assert affine_solve(line, e(0, 3)) == 2
    assert affine_first_above(line, e(0, 0)) == 2
    assert affine_first_above(line, e(0, 7)) == 7
    assert affine_first_above(line, e(1, -100)) is None


@given(ranked)
def test_total_order_and_translation(abc):
    a, b, c = abc
    assert (a < b) + (a == b) + (a > b) == 1
    if a <= b:
        assert a + c <= b + c
    if a <= b <= c:
        assert a <= c


@given(ranked, st.integers(1, 5))
def test_group_laws(abc, lam):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == GroupElement.zero(a.rank)
    assert lam * (a + b) == lam * a + lam * b
    if a > GroupElement.zero(a.rank):
        assert lam * a >= a


@given(st.integers(1, 4).flatmap(lambda r: st.tuples(elems(r), st.integers(0, r))))
def test_truncate_vs_convex(gj):
    g, j = gj
    assert in_convex(g - truncate(g, j), j)


@given(
    st.integers(1, 3).flatmap(
        lambda r: st.tuples(elems(r), elems(r).filter(lambda s: s > GroupElement.zero(r)), elems(r))
    )
)
def test_affine_first_above_brute(args):
    base, step, target = args
    line = AffineExp(base, step, 0)
    n = affine_first_above(line, target)
    brute = next((k for k in range(200) if line(k) > target), None)
    if n is None:
        assert brute is None
    elif brute is not None:
        assert n == brute
    else:
        assert n >= 200


def test_parse_group_element():
    assert parse_group_element([1, -2]) == e(1, -2)
    with pytest.raises(ValueError):
        parse_group_element([])
