import random
from fractions import Fraction

import pytest

from pcvclosure.lexgroup import RankError
from pcvclosure.parsing import ParseError, parse_expr, parse_kpoly
from pcvclosure.valfield import FieldElement, KPoly, format_element, format_kpoly

from corpus import rand_element

t1 = FieldElement.variable(2, 1)
t2 = FieldElement.variable(2, 2)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("t2^2 - t2", t2 ** 2 - t2),
        ("t1/(1 - t2)", t1 / (1 - t2)),
        ("-t2^2", -(t2 ** 2)),
        ("3/4*t1", Fraction(3, 4) * t1),
        ("t2^-3", t2 ** -3),
        ("  ( t1 + t2 ) * ( t1 - t2 ) ", t1 * t1 - t2 * t2),
        ("2^3", FieldElement.from_rational(2, 8)),
        ("--t1", t1),
        ("1/(t2) + 1/(1+t2)", 1 / t2 + 1 / (1 + t2)),
    ],
)
def test_parse_expr(text, expected):
    assert parse_expr(text, 2) == expected


def test_variable_out_of_rank():
    with pytest.raises(ParseError, match="out of rank"):
        parse_expr("t3", 2)
    with pytest.raises(ParseError, match="out of rank"):
        parse_expr("t0", 2)


@pytest.mark.parametrize("text, pos", [("t1 +", 4), ("t1 ** 2", 4), ("(t1", 3), ("t1 $ 2", 3), ("", 0)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_expr(text, 2)
    assert info.value.pos == pos


def test_division_by_zero():
    with pytest.raises(ParseError, match="division by zero") as info:
        parse_expr("t1/(t2 - t2)", 2)
    assert info.value.pos == 2


def test_x_only_in_kpoly():
    with pytest.raises(ParseError):
        parse_expr("X + 1", 2)
    f = parse_kpoly("(X - t2)*(X - t2^2)/(t2 - 1)", 2)
    assert f.degree == 2
    X = KPoly.x(2)
    assert f == ((X - t2) * (X - t2 ** 2)).scale(1 / (t2 - 1))
    with pytest.raises(ParseError):
        parse_kpoly("1/X", 2)


def test_display_round_trip_corpus():
    # 200 random elements over ranks 1..3
    rng = random.Random(7)
    for _ in range(200):
        r = rng.randint(1, 3)
        x = rand_element(rng, r, 3) + rand_element(rng, r, 2) / rand_element(rng, r, 2)
        assert parse_expr(format_element(x), r) == x


def test_kpoly_display_round_trip():
    rng = random.Random(3)
    for _ in range(30):
        r = rng.randint(1, 3)
        f = KPoly(r, [rand_element(rng, r, 2) for _ in range(rng.randint(1, 4))])
        assert parse_kpoly(format_kpoly(f), r) == f


def test_rank_must_be_positive():
    with pytest.raises((RankError, ValueError)):
        parse_expr("1", 0)
