from fractions import Fraction

import pytest
from hypothesis import given

from conftest import gauss, nonzero_gauss, small_rat
from realcremona.exact import (
    I,
    ONE,
    ZERO,
    GaussRat,
    ParamSystem,
    UndeclaredSymbolError,
    format_gauss,
    param_reduce,
    parse_gauss,
    parse_rat,
    sqrt_gauss,
    sqrt_rat,
)


def test_i_squared():
    assert I * I == -ONE


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = Fraction(2)


def test_parse_examples():
    assert parse_gauss("1+i") == GaussRat(1, 1)
    assert parse_gauss("-2/3*i") == GaussRat(0, Fraction(-2, 3))
    assert parse_gauss("1/2*i") == GaussRat(0, Fraction(1, 2))
    assert parse_rat("-7/4") == Fraction(-7, 4)


def test_division_example():
    # (1+i)/(1-i) = i
    assert GaussRat(1, 1) / GaussRat(1, -1) == I


@given(gauss, gauss, gauss)
def test_field_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(nonzero_gauss)
def test_inverse(a):
    assert a * a.inv() == ONE


@given(gauss, gauss)
def test_conjugation_is_a_ring_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * a.conj()).is_real()
    assert a.norm() == (a * a.conj()).re


@given(gauss)
def test_format_parse_roundtrip(a):
    assert parse_gauss(format_gauss(a)) == a


@given(small_rat)
def test_sqrt_rat(q):
    assert sqrt_rat(q * q) == abs(q)


@given(gauss)
def test_sqrt_gauss(a):
    r = sqrt_gauss(a * a)
    assert r is not None and r * r == a * a


def test_sqrt_of_non_square():
    assert sqrt_rat(Fraction(2)) is None


def test_circle_rule_reduces():
    sys = ParamSystem.circle("c", "s")
    # s^2 -> 1 - c^2 ; names are (s, c)
    assert sys.reduce({(2, 0): ONE, (0, 2): ONE}) == {(0, 0): ONE}


def test_unit_product_rule():
    sys = ParamSystem.unit_product("r", "q")
    assert sys.reduce({(3, 2): ONE}) == {(1, 0): ONE}


def test_bad_rule_shape():
    with pytest.raises(ValueError):
        ParamSystem(["a", "b"], [({"a": 1}, {(0, 0): 1})])


def test_undeclared_symbol():
    with pytest.raises(UndeclaredSymbolError):
        ParamSystem(["a"], [({"b": 2}, {(0,): 1})])


def test_merge_keeps_rules():
    sys = ParamSystem.circle("c1", "s1") | ParamSystem.circle("c2", "s2")
    assert len(sys.rules) == 2 and len(sys.names) == 4
