from fractions import Fraction

from hypothesis import given, strategies as st

from conftest import gauss, small_rat
from realcremona.exact import ONE, ZERO, GaussRat
from realcremona.univariate import BinaryForm, UniPoly, roots_low_degree, strip_points, uni_gcd


def _from_roots(roots):
    p = UniPoly([ONE])
    for r in roots:
        p = p * UniPoly([-r, ONE])
    return p


@given(st.lists(gauss, max_size=3), st.lists(gauss, max_size=3))
def test_gcd_divides(a, b):
    pa, pb = _from_roots(a) * UniPoly([GaussRat(2)]), _from_roots(b)
    g = uni_gcd(pa, pb)
    assert pa.divmod(g)[1].is_zero() and pb.divmod(g)[1].is_zero()


@given(gauss, gauss)
def test_quadratic_roots(r, s):
    roots = roots_low_degree(_from_roots([r, s]))
    assert sorted(roots, key=GaussRat.sort_key) == sorted([r, s], key=GaussRat.sort_key)


def test_cubic_is_not_split():
    assert roots_low_degree(UniPoly([2, 0, 0, 1])) is None


def test_strip_points_statuses():
    f = BinaryForm(_from_roots([ONE, GaussRat(2)]), 2)
    assert strip_points(f, [(ONE, ONE), (ONE, GaussRat(2))])[0] == "pass"
    assert strip_points(f, [(ONE, ONE)])[0] == "fail"
    inf = BinaryForm(UniPoly([ONE]), 1)
    assert strip_points(inf, [(ZERO, ONE)])[0] == "pass"
    assert strip_points(inf, [])[0] == "fail"
    cubic = BinaryForm(UniPoly([2, 0, 0, 1]), 3)
    assert strip_points(cubic, [])[0] == "inconclusive"
