import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import gauss
from realcremona.exact import GaussRat, ParamSystem
from realcremona.poly import MultiPoly, NotMultihomogeneous, VarBlocks, normalize_tuple, parse_poly

R = VarBlocks([["x0", "x1"], ["y0", "y1"]])
SYMS = {n: sympy.Symbol(n) for n in R.names}
SYMS["i"] = sympy.I


def to_sympy(p: MultiPoly):
    return sympy.expand(sympy.sympify(str(p), locals=SYMS))


def _term(c, e):
    return MultiPoly(R, {tuple(e): c})


polys = st.lists(st.tuples(gauss, st.lists(st.integers(0, 2), min_size=4, max_size=4)), max_size=4).map(
    lambda ts: sum((_term(c, e) for c, e in ts), R.zero())
)


@given(polys, polys)
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polys, polys)
def test_sum_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0


@given(polys)
def test_str_parse_roundtrip(p):
    assert parse_poly(str(p), R) == p


@given(polys, polys)
def test_substitution_is_a_homomorphism(p, q):
    images = {"x0": R.var("x1") + R.var("y0"), "x1": R.var("x0") * 2, "y0": R.var("y1"), "y1": R.var("x0") - R.var("y1")}
    assert (p * q).substitute(images) == p.substitute(images) * q.substitute(images)


@given(polys)
def test_conjugation_involution(p):
    assert p.conj_coeffs().conj_coeffs() == p


def test_parse_imaginary_unit():
    p = parse_poly("(1 + i)*x0 - i*y1", R)
    assert p.terms[(1, 0, 0, 0)] == GaussRat(1, 1)
    assert p.terms[(0, 0, 0, 1)] == GaussRat(0, -1)


def test_multidegree():
    assert parse_poly("x0^2*y1 + x0*x1*y0", R).multidegree() == (2, 1)
    with pytest.raises(NotMultihomogeneous):
        parse_poly("x0 + y0", R).multidegree()


def test_params_reduce_on_construction():
    S = R.with_params(ParamSystem.circle("c", "s"))
    p = parse_poly("(c^2 + s^2)*x0 - x0", S)
    assert p.is_zero()


def test_unknown_symbol():
    with pytest.raises(Exception):
        parse_poly("z", R)


def test_normalize_tuple_is_projective():
    a = [parse_poly("2*x0", R), parse_poly("4*x1", R)]
    b = [parse_poly("x0", R), parse_poly("2*x1", R)]
    assert normalize_tuple(a) == normalize_tuple(b)


def test_specialize():
    S = R.with_params(ParamSystem.free("a"))
    p = parse_poly("a*x0 + x1", S)
    assert str(p.specialize({"a": 3})) == str(parse_poly("3*x0 + x1", R))
