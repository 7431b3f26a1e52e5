import pytest
import sympy

from realcremona.maps import compose, is_identity, is_involution, is_real, preserves_equations, vanishes_on_model
from realcremona.surfaces import (
    CATALOG_IDS,
    DEGREE_SIX,
    UnknownModel,
    builtin,
    catalog,
    check_fibre_table,
    curve_on_model,
    point_on_model,
)

WITH_PARAM = ("Q31", "X2_P3xP1", "X2_P2xP2", "X3Q", "X3F0", "X4", "Fn(2)", "Fn(3)")


def test_catalog_count():
    assert len(catalog()) == 10 and catalog() == list(CATALOG_IDS)


def test_catalog_contents():
    assert {"E_p", "f_p", "g_p"} <= set(builtin("X3F0").named_curves)
    assert "Q31" in catalog()


def test_unknown_model():
    with pytest.raises(UnknownModel):
        builtin("X7")


def test_hirzebruch_aliases():
    assert builtin("F3") is builtin("Fn(3)")


@pytest.mark.parametrize("mid", [m for m in CATALOG_IDS if m != "Fn(n)"] + ["Fn(2)"])
def test_sigma_is_an_involution(mid):
    m = builtin(mid)
    assert is_involution(m.sigma)


@pytest.mark.parametrize("mid", WITH_PARAM)
def test_param_inverse(mid):
    m = builtin(mid)
    if m.param_inverse is not None:
        assert is_identity(compose(m.param_inverse, m.param))


@pytest.mark.parametrize("mid", WITH_PARAM)
def test_param_lands_on_model_sympy(mid):
    # independent route: substitute the parameterization into the equations with sympy
    m = builtin(mid)
    src = m.param.source.ring.names
    syms = {n: sympy.Symbol(n) for n in src}
    syms["i"] = sympy.I
    images = {}
    for names, block in zip(m.ring.blocks, m.param.components):
        for n, p in zip(names, block[0]):
            images[sympy.Symbol(n)] = sympy.sympify(str(p).replace("^", "**"), locals=syms)
    for eq in m.equations:
        e = sympy.sympify(str(eq).replace("^", "**"), locals={"i": sympy.I, **{n: sympy.Symbol(n) for n in m.ring.names}})
        assert sympy.expand(e.subs(images, simultaneous=True)) == 0


@pytest.mark.parametrize("mid", DEGREE_SIX)
def test_curves_points_and_sigma_table(mid):
    m = builtin(mid)
    for c in m.named_curves.values():
        assert curve_on_model(c)
    for p in m.named_points.values():
        assert point_on_model(p, m)
    from realcremona.maps import image_of_curve

    for a, b in m.sigma_table.items():
        assert image_of_curve(m.sigma, m.curve(a)).name == b


@pytest.mark.parametrize("mid", DEGREE_SIX)
def test_generators_real_and_preserving(mid):
    m = builtin(mid)
    for g in m.generators.values():
        assert is_real(g) and preserves_equations(g)


@pytest.mark.parametrize("mid", ("X2_P3xP1", "X2_P2xP2"))
def test_fibre_tables(mid):
    assert check_fibre_table(builtin(mid))


def test_sigma_preserves_equations():
    for mid in DEGREE_SIX + ("Q31",):
        assert preserves_equations(builtin(mid).sigma)
