import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from realcremona.abelian import nu_multiset
from realcremona.conjugacy import (
    Config7,
    Config8,
    ConfigError,
    Witness7,
    apply7,
    apply8,
    canonical7,
    conjugate7,
    conjugate8,
    invert_witness7,
    mat_apply,
    random_config7,
    random_config8,
    random_moebius,
    random_witness7,
    witnesses7,
)
from realcremona.exact import GaussRat

G = GaussRat


def c7(*pts):
    return Config7.of(pts)


# -- sympy oracles ------------------------------------------------------------

def _sym(z):
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(z.im.numerator, z.im.denominator)


def oracle7(a: Config7, b: Config7) -> bool:
    # every valid lambda matches the first point of a to some point of b
    full = lambda c: {_sym(z) for z in c.pairs} | {sympy.conjugate(_sym(z)) for z in c.pairs}
    src, dst = full(a), full(b)
    if len(src) != len(dst):
        return False
    z = next(iter(src))
    for w in dst:
        for inv in (False, True):
            lam = sympy.nsimplify(sympy.expand(w * z if inv else w / z))
            if lam.is_real and lam > 0:
                img = {sympy.nsimplify(sympy.expand(lam / x if inv else lam * x)) for x in src}
                if img == dst:
                    return True
    return False


def _points8(c: Config8):
    out = []
    for p in c.full_set():
        out.append((_sym(p[0]), _sym(p[1])))
    return out


def oracle8(a: Config8, b: Config8) -> bool:
    """Solve the Moebius map through each triple by linear algebra."""
    src, dst = _points8(a), _points8(b)
    if len(src) != len(dst):
        return False
    A, B, C, D = sympy.symbols("A B C D")
    dst_norm = {_normp(p) for p in dst}
    for t in itertools.permutations(dst, 3):
        eqs = [w1 * (A * z0 + B * z1) - w0 * (C * z0 + D * z1) for (z0, z1), (w0, w1) in zip(src[:3], t)]
        M = sympy.Matrix([[sympy.expand(e).coeff(s) for s in (A, B, C, D)] for e in eqs])
        ns = M.nullspace()
        if len(ns) != 1:
            continue
        v = ns[0]
        lead = next(x for x in v if x != 0)
        v = [sympy.nsimplify(sympy.expand(x / lead)) for x in v]
        if not all(x.is_real for x in v) or v[0] * v[3] - v[1] * v[2] == 0:
            continue
        img = {_normp((v[0] * z0 + v[1] * z1, v[2] * z0 + v[3] * z1)) for z0, z1 in src}
        if img == dst_norm:
            return True
    return False


def _normp(p):
    a, b = p
    if b == 0:
        return ("inf",)
    return (sympy.nsimplify(sympy.expand(a / b)),)


# -- examples -----------------------------------------------------------------

def test_conjugate7_examples():
    assert conjugate7(c7("1+i"), c7("2+2i")) == (True, Witness7(Fraction(2), False))
    assert conjugate7(c7("2i"), c7("1/2i")) == (True, Witness7(Fraction(1), True))
    assert conjugate7(c7("1+i"), c7("1+2i")) == (False, None)


def test_conjugate7_size_mismatch():
    with pytest.raises(ConfigError):
        conjugate7(c7("i"), c7("i", "2i"))


def test_conjugate8_examples():
    ok, m = conjugate8(Config8.of(["0", "1"], ["2+i"]), Config8.of(["1", "2"], ["3+i"]))
    assert ok and [[x.re for x in row] for row in m] == [[1, 1], [0, 1]]
    c = Config8.of(["0", "1"], ["i", "2i"])
    ok, m = conjugate8(c, c)
    assert ok and [[x.re for x in row] for row in m] == [[1, 0], [0, 1]]
    assert conjugate8(Config8.of(["0", "1", "2", "3"]), Config8.of(["0", "1", "2", "4"])) == (False, None)


def test_conjugate8_real_count_differs():
    assert not conjugate8(Config8.of(["0", "1", "2", "3"]), Config8.of(["0", "1"], ["i"]))[0]


def test_conjugate8_size_mismatch():
    with pytest.raises(ConfigError):
        conjugate8(Config8.of(["0", "1", "2", "3"]), Config8.of(["0", "1", "2", "3", "4", "5"]))


def test_canonical7_examples():
    assert canonical7(c7("2+2i")) == c7("1+i")
    assert canonical7(c7("1+i")) == c7("1+i")
    assert canonical7(c7("i", "2i")) == canonical7(c7("2i", "4i")) == c7("i", "2i")


def test_infinity_in_config8():
    a = Config8.of(["0", "1", "2", "inf"])
    b = Config8.of(["0", "1", "2", "-1"])
    # decided independently by the linear-algebra oracle
    assert conjugate8(a, b)[0] == oracle8(a, b)


# -- oracle agreement ----------------------------------------------------------

def test_conjugate7_matches_oracle():
    rng = random.Random(7)
    for _ in range(40):
        a = random_config7(rng, rng.randint(1, 2))
        b = apply7(random_witness7(rng), a) if rng.random() < 0.5 else random_config7(rng, a.n)
        assert conjugate7(a, b)[0] == oracle7(a, b)


def test_conjugate8_matches_oracle():
    rng = random.Random(8)
    for _ in range(6):
        a = random_config8(rng, 2)
        b = apply8(random_moebius(rng), a) if rng.random() < 0.5 else random_config8(rng, 2)
        assert conjugate8(a, b)[0] == oracle8(a, b)


# -- properties ---------------------------------------------------------------

seeds = st.integers(0, 10**9)


@given(seeds)
def test_planted7_detected_with_valid_witness(seed):
    rng = random.Random(seed)
    a = random_config7(rng)
    b = apply7(random_witness7(rng), a)
    ok, w = conjugate7(a, b)
    assert ok and apply7(w, a) == b
    assert nu_multiset(a) == nu_multiset(b)


@given(seeds)
def test_witness7_inverse(seed):
    rng = random.Random(seed)
    a = random_config7(rng)
    w = random_witness7(rng)
    assert apply7(invert_witness7(w), apply7(w, a)) == a


@given(seeds)
def test_conjugate7_symmetric_and_transitive(seed):
    rng = random.Random(seed)
    a = random_config7(rng)
    b = apply7(random_witness7(rng), a)
    c = apply7(random_witness7(rng), b)
    assert conjugate7(b, a)[0] and conjugate7(a, c)[0]
    assert conjugate7(a, a) == (True, Witness7(Fraction(1), False))


@given(seeds)
def test_canonical_implies_conjugate(seed):
    rng = random.Random(seed)
    a, b = random_config7(rng, 2), random_config7(rng, 2)
    if canonical7(a) == canonical7(b):
        assert conjugate7(a, b)[0]
    assert conjugate7(a, canonical7(a))[0]


@settings(max_examples=25)
@given(seeds)
def test_planted8_detected_with_valid_witness(seed):
    rng = random.Random(seed)
    a = random_config8(rng)
    b = apply8(random_moebius(rng), a)
    ok, m = conjugate8(a, b)
    assert ok and apply8(m, a) == b
    assert conjugate8(b, a)[0]


@settings(max_examples=25)
@given(seeds)
def test_conjugate8_invariant_under_moebius(seed):
    rng = random.Random(seed)
    a, b = random_config8(rng, 2), random_config8(rng, 2)
    assert conjugate8(a, b)[0] == conjugate8(apply8(random_moebius(rng), a), b)[0]


def test_mat_apply_infinity():
    m = ((G(0), G(1)), (G(1), G(0)))
    assert mat_apply(m, (G(1), G(0))) == (G(0), G(1))
