from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mospher.rationals import (
    CRat,
    binomial,
    pochhammer,
    rational_from_str,
    rational_to_str,
)

small_fractions = st.fractions(
    min_value=-10, max_value=10, max_denominator=12
)
crats = st.builds(CRat, small_fractions, small_fractions)
nonzero_crats = crats.filter(lambda z: not z.is_zero())


def test_pochhammer_examples():
    assert pochhammer(Fraction(3, 2), 0) == 1
    assert pochhammer(1, 4) == 24
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)


def test_pochhammer_rejects_negative_m():
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(6, 3) == 20
    assert binomial(4, -1) == 0


@given(small_fractions, st.integers(min_value=0, max_value=30))
def test_pochhammer_recurrence(a, m):
    assert pochhammer(a, m + 1) == pochhammer(a, m) * (a + m)


@given(crats, crats, crats)
def test_field_associativity_distributivity(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(nonzero_crats)
def test_field_inverse(x):
    assert x * x.inverse() == CRat(1)


@given(crats, crats)
def test_conjugation_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()


@given(crats)
def test_conjugation_involution(x):
    assert x.conj().conj() == x


def test_division_and_pow():
    i = CRat(0, 1)
    assert i * i == CRat(-1)
    assert i ** 4 == CRat(1)
    assert (CRat(1) / i) == -i
    assert CRat(3, 4) / CRat(3, 4) == CRat(1)


def test_rational_serialization():
    assert rational_to_str(Fraction(3, 4)) == "3/4"
    assert rational_to_str(Fraction(-5)) == "-5"
    assert rational_from_str("3/4") == Fraction(3, 4)
    c = CRat(Fraction(1, 2), Fraction(-2, 3))
    assert c.to_json() == {"re": "1/2", "im": "-2/3"}
    assert CRat.from_json(c.to_json()) == c
