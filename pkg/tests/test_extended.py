from fractions import Fraction

import pytest

from acceptset import NEG_INF, POS_INF, as_rational, format_extended
from acceptset.extended import Infinite


def test_ordering_against_rationals():
    assert NEG_INF < Fraction(-10 ** 12)
    assert POS_INF > Fraction(10 ** 12)
    assert NEG_INF < 0 < POS_INF
    assert NEG_INF <= Fraction(0)
    assert not (POS_INF <= 5)
    assert NEG_INF < POS_INF


def test_negation_and_equality():
    assert -NEG_INF == POS_INF
    assert -POS_INF == NEG_INF
    assert NEG_INF == Infinite(-1)
    assert NEG_INF != 0
    assert hash(POS_INF) == hash(Infinite(1))


def test_extended_semantics_around_zero():
    # -inf <= 0 < +inf, the ordering used by acceptance comparisons
    assert NEG_INF <= 0
    assert not (NEG_INF >= 0)
    assert POS_INF >= 0
    assert min(POS_INF, Fraction(3)) == 3
    assert max(NEG_INF, Fraction(-3)) == -3


def test_as_rational_exact_parsing():
    assert as_rational("0.25") == Fraction(1, 4)
    assert as_rational("1/3") == Fraction(1, 3)
    assert as_rational(7) == Fraction(7)
    assert as_rational("0.123456789012345678") == Fraction(123456789012345678, 10 ** 18)
    with pytest.raises(TypeError):
        as_rational(0.25)  # binary floats are not exact inputs
    with pytest.raises(TypeError):
        as_rational(True)


def test_format_extended():
    assert format_extended(Fraction(1, 4)) == "1/4"
    assert format_extended(Fraction(-3)) == "-3"
    assert format_extended(POS_INF) == "+inf"
    assert format_extended(NEG_INF) == "-inf"
