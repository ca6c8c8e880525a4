from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sblearn.rational import (
    INF,
    NEG_INF,
    ZERO,
    ExtendedRational,
    Q,
    bit_size,
    bitlen,
    parse_rational,
    rational_from_json,
    rational_to_json,
)

fractions = st.fractions(max_denominator=10**30)


def test_normalization():
    q = ExtendedRational(6, -4)
    assert (q.num, q.den) == (-3, 2)
    assert ExtendedRational(0, 5) == ZERO and ZERO.den == 1
    assert ExtendedRational(-7, 0) == NEG_INF
    assert ExtendedRational(3, 0) == INF


def test_rejects_zero_over_zero_and_bools():
    with pytest.raises(ZeroDivisionError):
        ExtendedRational(0, 0)
    with pytest.raises(TypeError):
        ExtendedRational(True, 1)


def test_immutable():
    with pytest.raises(AttributeError):
        ZERO.num = 3


def test_infinities_bracket_everything():
    for q in (Q(-10**50), ZERO, Q(10**50, 3)):
        assert NEG_INF < q < INF
    assert NEG_INF < INF and not INF < INF


@given(fractions, fractions)
def test_order_matches_fraction(a, b):
    x, y = ExtendedRational.from_fraction(a), ExtendedRational.from_fraction(b)
    assert (x < y) == (a < b)
    assert (x == y) == (a == b)
    assert (x <= y) == (a <= b)


@given(fractions, fractions)
def test_addition(a, b):
    assert (Q(a) + Q(b)).to_fraction() == a + b
    assert (Q(a) - Q(b)).to_fraction() == a - b


def test_infinite_arithmetic_is_refused():
    with pytest.raises(OverflowError):
        INF + ZERO


@pytest.mark.parametrize(
    "text, num, den",
    [("3/6", 1, 2), ("-13/2", -13, 2), ("+7", 7, 1), ("inf", 1, 0), ("-inf", -1, 0), (" 0 ", 0, 1)],
)
def test_parse(text, num, den):
    q = parse_rational(text)
    assert (q.num, q.den) == (num, den)


@pytest.mark.parametrize("text", ["", "1.5", "a/b", "0/0", "1/-2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(fractions)
def test_json_roundtrip(f):
    q = Q(f)
    obj = rational_to_json(q)
    assert isinstance(obj["num"], str) and isinstance(obj["den"], str)
    assert rational_from_json(obj) == q


def test_json_roundtrip_infinities():
    for q in (INF, NEG_INF):
        assert rational_from_json(rational_to_json(q)) == q


@pytest.mark.parametrize("obj", [{"num": "2", "den": "4"}, {"num": "1", "den": "-2"}, {"num": "5", "den": "0"}, {"num": "x", "den": "1"}, {}])
def test_json_rejects(obj):
    with pytest.raises(ValueError):
        rational_from_json(obj)


def test_bit_size_goldens():
    assert bit_size(ZERO) == 1
    assert bit_size(Q(1)) == 2
    assert bit_size(Q(23, 108)) == 12
    assert bit_size(INF) == bit_size(NEG_INF) == 2
    assert bitlen(0) == 1 and bitlen(-8) == 4


@given(st.integers(min_value=1, max_value=2**300))
def test_bitlen_is_binary_digit_count(n):
    assert bitlen(n) == len(bin(n)) - 2


def test_str():
    assert str(Q(-2, 3)) == "-2/3" and str(INF) == "inf" and str(Q(4)) == "4/1"
    assert Q(Fraction(3, 9)) == Q("1/3")
