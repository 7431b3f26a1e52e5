from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, strategies as st

from conftest import nonreal_gauss, positive_rat
from realcremona.abelian import (
    AbImage,
    RealPointError,
    calkin_wilf,
    config_nu_values,
    countability_witness,
    nu,
    nu_class_equal,
    ray_witness,
    summed_generators,
)
from realcremona.conjugacy import Config7
from realcremona.exact import GaussRat
from realcremona.families import FamilySpec, abel_image, build, element_names, named_element

G = GaussRat


def fusc(n: int) -> int:
    # Stern's diatomic sequence
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def enumeration_oracle():
    yield Fraction(0)
    n = 1
    while True:
        yield Fraction(fusc(n), fusc(n + 1))
        n += 1


def witness_oracle(values):
    return next(x for x in enumeration_oracle() if x not in set(values))


# -- nu -----------------------------------------------------------------------

def test_nu_examples():
    assert nu(G(2, 3)) == Fraction(2, 3)
    assert nu(G(0, 1)) == 0
    assert nu((G(2, 2), G(2))) == 1
    assert nu(G(-1, -2)) == Fraction(-1, 2)


@pytest.mark.parametrize("pt", [G(3), (G(1), G(0)), (G(2), G(1))])
def test_nu_rejects_real_points(pt):
    with pytest.raises(RealPointError):
        nu(pt)


def test_nu_class_examples():
    assert nu_class_equal(G(1, 1), G(2, 2))
    assert nu_class_equal(G(1, 1), G(1, -1))
    assert not nu_class_equal(G(1, 1), G(1, 2))
    assert ray_witness(G(1, 1), G(2, 2)) == 2
    assert ray_witness(G(1, 1), G(1, 2)) is None


@given(nonreal_gauss, positive_rat)
def test_nu_invariant_under_scaling_and_inversion(z, lam):
    assert nu(z * lam) == nu(z) == nu(z.inv() * lam) == nu(z.conj())


@given(nonreal_gauss, nonreal_gauss)
def test_nu_class_matches_ray_search(p, q):
    assert nu_class_equal(p, q) == (ray_witness(p, q) is not None)


# -- the Z/2 sum --------------------------------------------------------------

images = st.frozensets(st.fractions(max_denominator=5), max_size=5).map(AbImage)


@given(images)
def test_image_has_exponent_two(x):
    assert (x + x).is_zero()


@given(images, images, images)
def test_image_addition_laws(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)


def test_summed_generators_cancel():
    assert summed_generators([G(1, 1), G(2, 2)]).is_zero()
    assert summed_generators([G(1, 1), G(2, 2)], cancel=False).support == {1}


# -- countability witness -----------------------------------------------------

def test_enumeration_matches_oracle():
    assert list(islice(calkin_wilf(), 500)) == list(islice(enumeration_oracle(), 500))


def test_witness_examples():
    assert countability_witness([0, 1]) == Fraction(1, 2)
    assert countability_witness([]) == 0
    assert countability_witness([0, Fraction(1, 2), 1]) == 2


@given(st.sets(st.fractions(min_value=0, max_value=4, max_denominator=4), max_size=12))
def test_witness_avoids_supplied_values(values):
    w = countability_witness(values)
    assert w not in values and w == witness_oracle(values)


def test_witness_from_configs():
    cfgs = [Config7.of(["i"]), Config7.of(["1+i", "1+2i"])]
    assert config_nu_values(cfgs) == {0, 1, Fraction(1, 2)}
    assert countability_witness(config_nu_values(cfgs)) == 2


# -- images of family elements --------------------------------------------------

def fam7(*pts):
    return build(FamilySpec(7, config7=Config7.of(pts)))


def test_phi_maps_to_single_generator():
    inst = fam7("1+i")
    assert abel_image(inst, named_element(inst, "phi")).support == {1}


def test_kernel_maps_to_zero():
    inst = fam7("1+i")
    assert abel_image(inst, named_element(inst, "kernel")).is_zero()
    assert abel_image(inst, named_element(inst, "identity")).is_zero()


def test_coincident_nu_cancels():
    inst = fam7("1+i", "2+2i")
    assert abel_image(inst, inst.generators["phi"]).is_zero()


def test_two_pairs_give_two_generators():
    inst = fam7("1+i", "2+i")
    assert abel_image(inst, inst.generators["phi"]).support == {1, 2}


def test_literal_rule_diverges_on_phi():
    inst = fam7("1+i")
    phi = named_element(inst, "phi")
    assert abel_image(inst, phi, literal=True).is_zero()
    assert abel_image(inst, phi, literal=True) != abel_image(inst, phi)


def test_unknown_element_name():
    inst = fam7("1+i")
    assert "phi" in element_names(inst)
    with pytest.raises(KeyError):
        named_element(inst, "nope")
