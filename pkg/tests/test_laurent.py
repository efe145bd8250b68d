from fractions import Fraction

import pytest

from surfskein.laurent import DELTA, LaurentPolynomial as L, format_terms, quarter_terms


def test_arithmetic_and_zero_terms_dropped():
    p = L.from_pairs([(2, 1), (-2, 1)])
    q = L.from_pairs([(2, 1), (-2, -1)])
    assert (p + q).to_pairs() == [[2, 2]]
    assert (p - p).is_zero()
    assert (p * q).to_pairs() == [[-4, -1], [4, 1]]
    assert p**3 == p * p * p


def test_degrees_and_coefficients():
    p = L.from_pairs([(5, -1), (-3, -1), (-7, 1)])
    assert (p.max_degree, p.min_degree) == (5, -7)
    assert p.coefficient(-3) == -1 and p.coefficient(0) == 0


def test_bar_inverts_exponents():
    p = L.from_pairs([(5, -1), (-7, 2)])
    assert p.bar().to_pairs() == [[-5, -1], [7, 2]]
    assert p.bar().bar() == p


def test_exact_division_by_delta():
    p = L.from_pairs([(3, 1), (-1, 2)])
    assert (p * DELTA).divmod_exact(DELTA) == p
    assert L.one().divmod_exact(DELTA) is None


def test_shift_and_monomial():
    assert L.monomial(3, 2).shift(-5) == L.monomial(-2, 2)


def test_string_form():
    assert str(L.from_pairs([(-2, 1), (0, -3), (4, 1)])) == "A^4 - 3 + A^-2"
    assert str(L.zero()) == "0"
    assert format_terms([(Fraction(-1, 2), -1)], "t") == "-t^-1/2"


def test_quarter_terms_divides_exponents_by_four():
    assert quarter_terms(L.from_pairs([(-4, 1), (2, 3)])) == [(Fraction(-1), 1), (Fraction(1, 2), 3)]


def test_delta_value():
    assert DELTA.to_pairs() == [[-2, -1], [2, -1]]


def test_bad_division_input():
    with pytest.raises(ZeroDivisionError):
        L.one().divmod_exact(L.zero())
