import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracle import evaluate
from realcremona.exact import ONE, ZERO, GaussRat
from realcremona.maps import (
    CurveInBaseLocus,
    ModelMismatch,
    ModelPoint,
    RationalMap,
    apply_at,
    compose,
    defined_along_curve_except,
    equal_on_variety,
    image_of_curve,
    is_identity,
    is_involution,
    is_real,
    undefined_at,
)
from realcremona.surfaces import P1xP1, builtin

pts = st.tuples(*[st.integers(-4, 4) for _ in range(4)]).filter(lambda t: (t[0], t[1]) != (0, 0) and (t[2], t[3]) != (0, 0))


def _pt(t):
    return ModelPoint([[GaussRat(t[0]), GaussRat(t[1])], [GaussRat(t[2]), GaussRat(t[3])]])


F = P1xP1.map_to(P1xP1, "([x0 + x1 : x1],[y0*y1 : y1^2 + y0^2])")
G = P1xP1.map_to(P1xP1, "([x1 : 2*x0],[y0 + i*y1 : y1])")


@given(pts)
def test_composition_matches_pointwise_oracle(t):
    p = _pt(t)
    inner = evaluate(G, p)
    if inner is None or evaluate(F, inner) is None:
        return
    fg = compose(F, G)
    if undefined_at(fg, p):
        return
    assert apply_at(fg, p) == evaluate(F, inner)


def test_identity_and_associativity():
    h = P1xP1.map_to(P1xP1, "([x0 : x0 + x1],[y1 : y0])")
    assert equal_on_variety(compose(compose(F, G), h), compose(F, compose(G, h)))
    assert is_identity(compose(RationalMap.identity(P1xP1), RationalMap.identity(P1xP1)))


def test_swap_is_real_involution():
    tau = P1xP1.map_to(P1xP1, "([y0:y1],[x0:x1])")
    assert is_involution(tau) and is_real(tau)


def test_non_real_map():
    assert not is_real(G)


def test_model_mismatch():
    with pytest.raises(ModelMismatch):
        compose(builtin("P2").sigma, F)


def test_undefined_at_base_point():
    q = builtin("P2")
    cremona = q.map_to(q, "([x1*x2 : x0*x2 : x0*x1])")
    assert undefined_at(cremona, ModelPoint.parse("([1:0:0])"))
    assert not undefined_at(cremona, ModelPoint.parse("([1:1:1])"))
    assert is_involution(cremona)


def test_contracted_line():
    q = builtin("P2")
    cremona = q.map_to(q, "([x1*x2 : x0*x2 : x0*x1])")
    from realcremona.maps import CurveOnModel

    from realcremona.surfaces import P1

    line = CurveOnModel(q, "x0", [q.poly("x0")], RationalMap.parse(P1, q, "([0:t0:t1])"))
    assert image_of_curve(cremona, line) == ModelPoint.parse("([1:0:0])")
    assert defined_along_curve_except(cremona, line, [ModelPoint.parse("([0:1:0])"), ModelPoint.parse("([0:0:1])")]) == "pass"
    assert defined_along_curve_except(cremona, line, [ModelPoint.parse("([0:1:0])")]) == "fail"


def test_curve_in_base_locus():
    q = builtin("P2")
    from realcremona.maps import CurveOnModel
    from realcremona.surfaces import P1

    # a non-monomial common factor is kept, so the line x0 = x1 is in the base locus
    f = q.map_to(q, "([(x0 - x1)*x0 : (x0 - x1)*x1 : (x0 - x1)*x2])")
    line = CurveOnModel(q, "diag", [q.poly("x0 - x1")], RationalMap.parse(P1, q, "([t0:t0:t1])"))
    with pytest.raises(CurveInBaseLocus):
        defined_along_curve_except(f, line, [])
