"""Verification suites behind ``verify`` and ``report-all``.

Suites 1-8 accept ``corrupt=True``, which swaps in one deliberately broken
fixture (a sign flip in a generator or a wrong fibre equation); suite 9 runs
them that way and expects every one to fail. All randomness is seeded.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from . import abelian, conjugacy as cj
from .exact import ONE, ZERO, GaussRat, format_gauss
from .families import (
    CIRCLE_A,
    FREE_A,
    DEGREE_SIX_RELATIONS,
    FamilySpec,
    FnElement,
    abel_image,
    acts_trivially_on_base,
    base_locus_curves7,
    beta_map,
    beta_map_at,
    build,
    covering_certificate,
    evaluate_word,
    family7_kernel,
    family7_phi,
    family8_kernel,
    family8_phi,
    family8_point,
    fibre8,
    fixed_double_cover,
    fixes_curves,
    fixes_fibre,
    fn_chart_map,
    fn_group_law,
    named_element,
    phi_covering,
    swaps_sections,
    verify_exact_sequence,
    verify_lift,
    verify_relations,
)
from .maps import (
    ModelPoint,
    RationalMap,
    compose,
    defined_along_curve_except,
    equal_on_variety,
    image_of_curve,
    is_identity,
    is_involution,
    is_real,
    preserves_equations,
    undefined_at,
)
from .picard import (
    classify_dihedral,
    finite_orbit_check,
    generated_group,
    induced_action,
    intersection_points,
    invariant_rank,
    sigma_action,
)
from .report import PASS, Report
from .surfaces import DEGREE_SIX, builtin

SEED = 20240601


# ---------------------------------------------------------------------------
# 1. Sphere quadric as P1 x P1 with the swap real structure
# ---------------------------------------------------------------------------

def suite_isomorphism(corrupt: bool = False) -> Report:
    rep = Report("isomorphism")
    q = builtin("Q31")
    to_q, to_p = q.param, q.param_inverse
    if corrupt:
        to_p = q.map_to(to_p.target, "([w+z : y-i*x],[w+z : y-i*x])", "([y-i*x : w-z],[y+i*x : w-z])")
    rep.run("inverse_on_Q31", "P1xP1 -> Q31 -> P1xP1 round trip is the identity on Q31",
            lambda: is_identity(compose(to_q, to_p)))
    rep.run("inverse_on_P1xP1", "Q31 -> P1xP1 -> Q31 round trip is the identity on P1xP1",
            lambda: is_identity(compose(to_p, to_q)))
    rep.run("intertwines_sigma", "the isomorphism carries the swap structure to complex conjugation",
            lambda: equal_on_variety(compose(to_p, q.sigma), compose(to_p.target.sigma, to_p)))
    rep.run("param_on_model", "the parameterization lands on the quadric", lambda: preserves_equations(to_q))
    return rep


# ---------------------------------------------------------------------------
# 2. Relations of the degree-6 generators
# ---------------------------------------------------------------------------

RELATION_MODELS = ("X2_P3xP1", "X3Q", "X3F0", "X4")


def _corrupt_generators(mid: str, gens: dict[str, RationalMap]) -> dict[str, RationalMap]:
    m = builtin(mid)
    if mid == "X3F0":
        return {**gens, "alpha2": m.map_to(m, "([z1:-z0],[x0:-x1],[y1:y0])", name="alpha2")}
    return gens


def suite_relations(corrupt: bool = False) -> Report:
    rep = Report("relations")
    total = 0
    passed = 0
    for mid in (*RELATION_MODELS, "X2_P2xP2"):
        m = builtin(mid)
        gens = {k: m.generators[k] for k in ("alpha1", "alpha2")}
        if corrupt:
            gens = _corrupt_generators(mid, gens)
        ident = RationalMap.identity(m)
        for w in DEGREE_SIX_RELATIONS[mid]:
            ok = False
            try:
                ok = is_identity(evaluate_word(w, gens, ident))
            except Exception as exc:
                rep.add(f"{mid}:{w}", f"{w} = id on {mid}", False, f"{type(exc).__name__}: {exc}")
            else:
                rep.add(f"{mid}:{w}", f"{w} = id on {mid}", ok)
            if mid in RELATION_MODELS:
                total += 1
                passed += ok
        for k, g in sorted(gens.items()):
            rep.run(f"{mid}:{k}:real", f"{k} commutes with the real structure of {mid}", lambda g=g: is_real(g))
            rep.run(f"{mid}:{k}:preserves", f"{k} preserves the equations of {mid}", lambda g=g: preserves_equations(g))
    rep.add("count", "all relations of the four minimal models hold", passed == total == 12, f"{passed}/{total}")
    return rep


# ---------------------------------------------------------------------------
# 3. Picard actions
# ---------------------------------------------------------------------------

EXPECTED_INVARIANT_RANK = {"X2_P3xP1": 2, "X3Q": 3, "X3F0": 3, "X4": 4}
EXPECTED_GROUP_ORDER = {"X2_P3xP1": 4, "X3Q": 4, "X3F0": 12, "X4": 12}


def suite_picard(corrupt: bool = False) -> Report:
    rep = Report("picard")
    for mid in RELATION_MODELS:
        m = builtin(mid)
        rep.run(f"{mid}:invariant_rank", f"sigma-invariant Picard rank of {mid} is {EXPECTED_INVARIANT_RANK[mid]}",
                lambda m=m, mid=mid: (invariant_rank(sigma_action(m)) == EXPECTED_INVARIANT_RANK[mid], invariant_rank(sigma_action(m))))
        gens = {k: m.generators[k] for k in ("alpha1", "alpha2")}
        if corrupt:
            gens = _corrupt_generators(mid, gens)

        def order(gens=gens, mid=mid):
            n = len(generated_group(induced_action(g) for g in gens.values()))
            return n == EXPECTED_GROUP_ORDER[mid], n

        rep.run(f"{mid}:group_order", f"generators act on the hexagon through a group of order {EXPECTED_GROUP_ORDER[mid]}", order)
        if mid == "X3F0":
            rep.run("X3F0:alpha2_rotation", "alpha2 acts on the hexagon as a rotation of order 6",
                    lambda gens=gens: (classify_dihedral(induced_action(gens["alpha2"])) == ("rotation", 6),
                                       list(classify_dihedral(induced_action(gens["alpha2"])))))
    m = builtin("X2_P2xP2")
    rep.run("X2_P2xP2:invariant_rank", "the P2 x P2 model has the same invariant rank 2",
            lambda: invariant_rank(sigma_action(m)) == 2)
    return rep


# ---------------------------------------------------------------------------
# 4. Orbits of the hexagon vertices
# ---------------------------------------------------------------------------

def suite_orbits(corrupt: bool = False) -> Report:
    rep = Report("orbits")
    for fam, mid in ((4, "X3F0"), (5, "X4")):
        m = builtin(mid)
        gens = [m.generators["alpha1"], m.generators["alpha2"]]
        if corrupt and mid == "X3F0":
            gens = [m.generators["alpha1"]]
        pts = None

        def single(gens=gens, m=m):
            nonlocal pts
            pts = intersection_points(m)
            orbits = finite_orbit_check(gens, pts)
            return (len(pts) == 6 and len(orbits) == 1, [len(o) for o in orbits])

        rep.run(f"{mid}:single_orbit", f"the six vertices of the hexagon on {mid} form one orbit", single)
    return rep


# ---------------------------------------------------------------------------
# 5. Family (7)
# ---------------------------------------------------------------------------

FAMILY7_CONFIGS = {"one_pair": ["1+i"], "two_pairs": ["1+i", "2+i"]}


def _family7_checks(rep: Report, label: str, points: list[str], corrupt: bool) -> None:
    inst = build(FamilySpec(7, config7=cj.Config7.of(points)))
    chart = inst.model
    phi = inst.generators["phi"]
    if corrupt:
        # P built from the wrong fibres: u0 - (z + 1) u1
        phi = family7_phi(chart, [z + 1 for z in inst.spec.config7.pairs])
    allowed = inst.blowup_points + inst.special_points
    p = f"{label}:"
    rep.run(p + "phi_real", "phi commutes with the descended real structure", lambda: is_real(phi))
    rep.run(p + "phi_involution", "phi is an involution", lambda: is_involution(phi))
    rep.run(p + "phi_trivial_on_base", "phi induces the identity on the base", lambda: acts_trivially_on_base(phi))
    rep.run(p + "phi_undefined_at_allowed", "phi is undefined at every blown-up and special point",
            lambda: all(undefined_at(phi, q) for q in allowed))

    def locus():
        statuses = {c.name: defined_along_curve_except(phi, c, allowed) for c in base_locus_curves7(inst)}
        bad = [s for s in statuses.values() if s != PASS]
        return ("inconclusive" if bad and all(s == "inconclusive" for s in bad) else not bad), statuses

    rep.run(p + "phi_undefined_only_at_allowed", "no other indeterminacy along the covering curves", locus)
    rep.run(p + "phi_covering", "the covering curves contain the zero set of one entry of phi",
            lambda: any(covering_certificate(q, phi_covering(inst)) for blk in phi.components for alt in blk for q in alt))
    rep.run(p + "phi_swaps_sections", "phi exchanges the two special sections", lambda: swaps_sections(inst, phi))
    rep.run(p + "phi_lifts", "phi lifts to the blown-up surface", lambda: verify_lift(inst, phi, phi_covering(inst)))
    x2 = inst.upstairs
    rep.run(p + "beta_circle_lifts", "beta_a lifts when a * conj(a) = 1 (symbolic)", lambda: verify_lift(inst, beta_map(x2, CIRCLE_A)))
    rep.run(p + "beta_free_does_not_lift", "beta_a with free a does not fix the blown-up points",
            lambda: not verify_lift(inst, beta_map(x2, FREE_A)))
    rep.run(p + "beta_2_does_not_lift", "beta_2 moves the blown-up points", lambda: not verify_lift(inst, beta_map_at(x2, GaussRat(2))))
    rep.run(p + "beta_real", "beta_a is real for every a", lambda: is_real(beta_map(x2, FREE_A)))
    rep.run(p + "kernel_real_on_circle", "the kernel is real exactly on the circle",
            lambda: is_real(family7_kernel(chart, CIRCLE_A)) and not is_real(family7_kernel(chart, FREE_A)))

    def fixed():
        res = fixed_double_cover(inst, phi)
        return res.ok, {"fixed": res.fixed, "ramified": res.ramified, "generic_unramified": res.generic_unramified}

    rep.run(p + "fixed_curve", "the fixed curve of phi is fixed and ramified over Delta", fixed)
    for row in verify_exact_sequence(inst):
        rep.add(p + "sequence:" + row[0], row[1], row[2], row[3])
    rep.add(p + "kernel_note", "kernel of the fibration action is SO2 (circle a * conj(a) = 1), not R_{>0} x SO2", True,
            "the scalings with a * conj(a) != 1 move the blown-up points")


def suite_family7(corrupt: bool = False) -> Report:
    rep = Report("family7")
    for label, pts in FAMILY7_CONFIGS.items():
        _family7_checks(rep, label, pts, corrupt and label == "one_pair")
    return rep


# ---------------------------------------------------------------------------
# 6. Family (8)
# ---------------------------------------------------------------------------

FAMILY8_CONFIGS = {"mixed": (["0", "1"], ["2+i"]), "all_real": (["0", "1", "2", "3"], [])}


def _family8_checks(rep: Report, label: str, real, pairs, corrupt: bool) -> None:
    inst = build(FamilySpec(8, config8=cj.Config8.of(real, pairs)))
    m = inst.model
    phi = family8_phi(m, inst.base_points, powered=True) if corrupt else inst.generators["phi"]
    p = f"{label}:"
    rep.run(p + "phi_real", "phi is real", lambda: is_real(phi))
    rep.run(p + "phi_involution", "phi is an involution", lambda: is_involution(phi))
    rep.run(p + "phi_preserves", "phi preserves the Hirzebruch surface", lambda: preserves_equations(phi))
    rep.run(p + "phi_swaps_sections", "phi exchanges E_n and s_n", lambda: swaps_sections(inst, phi))
    for bp, pt in zip(inst.base_points, inst.blowup_points):
        fib = fibre8(m, bp)
        rep.run(p + f"contracts_{fib.name}", f"phi contracts {fib.name} onto the blown-up point {pt}",
                lambda fib=fib, pt=pt: image_of_curve(phi, fib) == pt)
    rep.run(p + "phi_lifts", "phi lifts to the blown-up conic bundle", lambda: verify_lift(inst, phi, phi_covering(inst)))
    k = inst.parametric["kernel"]
    rep.run(p + "kernel_fixes_named_curves", "the kernel fixes E_n and s_n", lambda: fixes_curves(k, ("E_n", "s_n")))
    rep.run(p + "kernel_fixes_fibres", "the kernel fixes every fibre",
            lambda: acts_trivially_on_base(k) and all(fixes_fibre(k, fibre8(m, bp)) for bp in inst.base_points))
    rep.run(p + "kernel_relation", "phi k_r phi = k_(1/r)",
            lambda: equal_on_variety(compose(compose(phi, k), phi), family8_kernel(m, "r_inv")))

    def fixed():
        res = fixed_double_cover(inst, phi)
        return res.ok, {"fixed": res.fixed, "ramified": res.ramified, "generic_unramified": res.generic_unramified}

    rep.run(p + "fixed_curve", "the fixed curve of phi is fixed and ramified over Delta", fixed)
    for row in verify_exact_sequence(inst):
        rep.add(p + "sequence:" + row[0], row[1], row[2], row[3])


def _random_fn(rng: random.Random, n: int) -> FnElement:
    while True:
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] != M[0][1] * M[1][0]:
            break
    return FnElement.of(n, [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n + 1)], M)


def _group_law_checks(rep: Report, n: int, pairs: int, rng: random.Random) -> None:
    def run():
        good = 0
        for _ in range(pairs):
            g, h = _random_fn(rng, n), _random_fn(rng, n)
            good += equal_on_variety(fn_chart_map(fn_group_law(g, h)), compose(fn_chart_map(g), fn_chart_map(h)))
        return good == pairs, f"{good}/{pairs}"

    rep.run(f"fn_group_law_n{n}", f"the group law on Aut(F_{n}) matches composition", run)


def suite_family8(corrupt: bool = False) -> Report:
    rep = Report("family8")
    for label, (real, pairs) in FAMILY8_CONFIGS.items():
        _family8_checks(rep, label, real, pairs, corrupt and label == "all_real")
    rng = random.Random(SEED)
    _group_law_checks(rep, 2, 20, rng)
    I = ((1, 0), (0, 1))
    minus = ((-1, 0), (0, -1))
    rep.run("mu2_identification", "(0, -I) is the identity of Aut(F_2)",
            lambda: FnElement.of(2, [0, 0, 0], minus) == FnElement.of(2, [0, 0, 0], I)
            and is_identity(fn_chart_map(FnElement(2, (Fraction(0),) * 3, tuple(tuple(Fraction(x) for x in r) for r in minus)))))
    rep.run("mu_odd_trivial", "(0, -I) is not the identity of Aut(F_3)",
            lambda: not is_identity(fn_chart_map(FnElement.of(3, [0] * 4, minus))))
    rep.run("translations_add", "((1,0,0), I) * ((0,1,0), I) = ((1,1,0), I)",
            lambda: fn_group_law(FnElement.of(2, [1, 0, 0], I), FnElement.of(2, [0, 1, 0], I)) == FnElement.of(2, [1, 1, 0], I))

    def powered():
        # a product over (t - v_i^n) instead of (t - v_i) only contracts at v_i^n = v_i
        inst = build(FamilySpec(8, config8=cj.Config8.of(["0", "1", "2", "3"])))
        bad = family8_phi(inst.model, inst.base_points, powered=True)
        res = {format_gauss(bp[1]): image_of_curve(bad, fibre8(inst.model, bp)) == family8_point(inst.model, bp) for bp in inst.base_points}
        return res == {"0": True, "1": True, "2": False, "3": False}, res

    rep.run("powered_product_rejected", "the powered product fails to contract the fibres over 2 and 3", powered)
    return rep


# ---------------------------------------------------------------------------
# 7. Abelianization
# ---------------------------------------------------------------------------

def suite_abelianization(corrupt: bool = False) -> Report:
    rep = Report("abelianization")
    rep.add("nu_2+3i", "nu([2+3i:1]) = 2/3", abelian.nu(GaussRat(2, 3)) == Fraction(2, 3))
    rep.add("nu_normalized", "nu([2+2i:2]) = 1", abelian.nu((GaussRat(2, 2), GaussRat(2))) == 1)
    rep.add("nu_i", "nu([i:1]) = 0", abelian.nu(GaussRat(0, 1)) == 0)
    rng = random.Random(SEED + 7)
    good = 0
    for _ in range(50):
        z = GaussRat(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)))
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        good += abelian.nu(z * lam) == abelian.nu(z) == abelian.nu(z.inv() * lam)
    rep.add("nu_invariance", "nu is invariant under scaling and inversion", good == 50, f"{good}/50")
    inst = build(FamilySpec(7, config7=cj.Config7.of(["1+i"])))
    kernel = named_element(inst, "kernel")
    if corrupt:
        # slots swapped: this "kernel" element exchanges the sections
        kernel = inst.model.map_to(inst.model, "([u0:u1],[(3/5 + 4/5*i)*v1 : v0])")
    rep.run("abel_phi", "the section swap maps to e_1", lambda: (abel_image(inst, named_element(inst, "phi")).support == {Fraction(1)},
                                                                abel_image(inst, named_element(inst, "phi")).to_json()))
    rep.run("abel_kernel", "a kernel element maps to 0", lambda: abel_image(inst, kernel).is_zero())
    both = build(FamilySpec(7, config7=cj.Config7.of(["1+i", "2+2i"])))
    rep.run("abel_cancellation", "coincident nu values cancel", lambda: abel_image(both, both.generators["phi"]).is_zero())
    rep.run("abel_homomorphism", "images add along products on the one-pair corpus", lambda: _abel_additive(inst))
    rep.add("witness_01", "countability witness for {0, 1} is 1/2", abelian.countability_witness([0, 1]) == Fraction(1, 2))
    rep.add("witness_empty", "countability witness for no configs is 0", abelian.countability_witness([]) == 0)
    cfgs = [cj.Config7.of(["i"]), cj.Config7.of(["1+i", "1+2i"])]
    w = abelian.countability_witness(abelian.config_nu_values(cfgs))
    rep.add("witness_outside", "the witness avoids every supplied nu value", w not in abelian.config_nu_values(cfgs), str(w))
    return rep


def _abel_additive(inst) -> bool:
    names = ["identity", "phi", "kernel", "kernel_phi"] + [k for k in inst.generators if k != "phi"]
    for a in names:
        for b in names:
            ga, gb = named_element(inst, a), named_element(inst, b)
            if abel_image(inst, compose(ga, gb)) != abel_image(inst, ga) + abel_image(inst, gb):
                return False
    return True


# ---------------------------------------------------------------------------
# 8. Conjugacy
# ---------------------------------------------------------------------------

def suite_conjugacy(corrupt: bool = False) -> Report:
    rep = Report("conjugacy")
    rng = random.Random(SEED + 8)
    c7 = [cj.random_config7(rng) for _ in range(100)]
    c8 = [cj.random_config8(rng) for _ in range(100)]

    def laws7():
        for k in range(len(c7)):
            a, b = c7[k], c7[(k + 1) % len(c7)]
            if not cj.conjugate7(a, a)[0]:
                return False, "not reflexive"
            if a.n != b.n:
                continue
            ok, w = cj.conjugate7(a, b)
            if ok != cj.conjugate7(b, a)[0]:
                return False, "not symmetric"
            if ok and cj.apply7(cj.invert_witness7(w), b) != a:
                return False, "inverse witness fails"
        return True, None

    def planted7():
        good = inv = trans = 0
        for c in c7:
            w1, w2 = cj.random_witness7(rng), cj.random_witness7(rng)
            d = cj.apply7(w1, c)
            e = cj.apply7(w2, d)
            ok, w = cj.conjugate7(c, d)
            if corrupt and ok:
                w = cj.Witness7(2 * w.lam, w.inverted)
            good += ok and cj.apply7(w, c) == d
            inv += abelian.nu_multiset(c) == abelian.nu_multiset(d)
            trans += cj.conjugate7(c, e)[0]
        return good == inv == trans == 100, {"detected": good, "nu_multiset": inv, "transitive": trans}

    def laws8():
        for k in range(len(c8)):
            a = c8[k]
            if not cj.conjugate8(a, a)[0]:
                return False, "not reflexive"
            b = c8[(k + 1) % len(c8)]
            if a.size == b.size and cj.conjugate8(a, b)[0] != cj.conjugate8(b, a)[0]:
                return False, "not symmetric"
        return True, None

    def planted8():
        good = trans = 0
        for c in c8:
            m1, m2 = cj.random_moebius(rng), cj.random_moebius(rng)
            d = cj.apply8(m1, c)
            e = cj.apply8(m2, d)
            ok, w = cj.conjugate8(c, d)
            if corrupt and ok:
                w = cj.mat_mul(w, ((ONE, ONE), (ZERO, ONE)))
            good += ok and cj.apply8(w, c) == d
            trans += cj.conjugate8(c, e)[0]
        return good == trans == 100, {"detected": good, "transitive": trans}

    rep.run("conj7_laws", "conjugacy of pair configurations is reflexive and symmetric", laws7)
    rep.run("conj7_planted", "planted conjugates are detected with valid witnesses", planted7)
    rep.run("conj8_laws", "conjugacy of point configurations is reflexive and symmetric", laws8)
    rep.run("conj8_planted", "planted Moebius conjugates are detected with valid witnesses", planted8)
    ex = [
        ("ex7_scaling", cj.conjugate7(cj.Config7.of(["1+i"]), cj.Config7.of(["2+2i"])), (True, cj.Witness7(Fraction(2), False))),
        ("ex7_inversion", cj.conjugate7(cj.Config7.of(["2i"]), cj.Config7.of(["1/2*i"])), (True, cj.Witness7(Fraction(1), True))),
        ("ex7_none", cj.conjugate7(cj.Config7.of(["1+i"]), cj.Config7.of(["1+2i"])), (False, None)),
    ]
    for id, got, want in ex:
        rep.add(id, "worked conjugacy example", got == want, str(got))
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "isomorphism": suite_isomorphism,
    "relations": suite_relations,
    "picard": suite_picard,
    "orbits": suite_orbits,
    "family7": suite_family7,
    "family8": suite_family8,
    "abelianization": suite_abelianization,
    "conjugacy": suite_conjugacy,
}


# ---------------------------------------------------------------------------
# 9. Negative controls, 10. determinism
# ---------------------------------------------------------------------------

def suite_negative_controls() -> Report:
    rep = Report("negative_controls")
    for name, fn in SUITES.items():
        r = fn(corrupt=True)
        failing = [c.id for c in r.checks if c.status == "fail"]
        rep.add(f"{name}_detects_corruption", f"the {name} suite fails on its corrupted fixture", r.failed, failing)
    return rep


def run_all() -> list[Report]:
    return [fn() for fn in SUITES.values()] + [suite_negative_controls()]


def render_all() -> str:
    from .report import dumps

    reports = run_all()
    return dumps({"reports": [r.to_json() for r in reports], "failed": any(r.failed for r in reports)})


def suite_determinism(rendered: str | None = None) -> Report:
    """Render every suite twice and compare the bytes."""
    rep = Report("determinism")
    first = rendered if rendered is not None else render_all()
    second = render_all()
    rep.add("byte_identical", "two runs produce byte-identical reports", first == second)
    return rep


# ---------------------------------------------------------------------------
# Per-family verification (``verify --family``)
# ---------------------------------------------------------------------------

def verify_family(spec: FamilySpec) -> Report:
    inst = build(spec)
    rep = Report(f"family{spec.family}")
    for name, g in sorted(inst.generators.items()):
        rep.run(f"{name}:real", f"{name} is real", lambda g=g: is_real(g))
        rep.run(f"{name}:preserves", f"{name} preserves the model", lambda g=g: preserves_equations(g))
    for name, g in sorted(inst.parametric.items()):
        rep.run(f"{name}:real", f"{name} is real on its parameter locus", lambda g=g: is_real(g))
        rep.run(f"{name}:preserves", f"{name} preserves the model", lambda g=g: preserves_equations(g))
        vals = inst.identity_values.get(name)
        if vals:
            rep.run(f"{name}:identity_value", f"{name} is the identity at its unit parameter", lambda g=g, vals=vals: is_identity(g.specialize(vals)))
    for w, ok in verify_relations(inst):
        rep.add(f"relation:{w}", f"{w} = id", ok)
    for id, claim, ok, detail in verify_exact_sequence(inst):
        rep.add(id, claim, ok, detail)
    if spec.family in (4, 5):
        m = inst.model
        rep.run("single_orbit", "hexagon vertices form one orbit",
                lambda: len(finite_orbit_check(list(inst.generators.values()), intersection_points(m))) == 1)
    if spec.family == 6:
        _group_law_checks(rep, spec.n, 20, random.Random(SEED + spec.n))
    if spec.family in (7, 8):
        phi = inst.generators["phi"]
        if spec.family == 8:
            for bp, pt in zip(inst.base_points, inst.blowup_points):
                fib = fibre8(inst.model, bp)
                rep.run(f"phi:contracts_{fib.name}", f"phi contracts {fib.name} onto {pt}",
                        lambda fib=fib, pt=pt: image_of_curve(phi, fib) == pt)
        rep.run("phi:involution", "phi is an involution", lambda: is_involution(phi))
        rep.run("phi:lifts", "phi lifts to the blown-up surface", lambda: verify_lift(inst, phi, phi_covering(inst)))
        for name, g in sorted(inst.generators.items()):
            if name != "phi":
                rep.run(f"{name}:lifts", f"{name} lifts to the blown-up surface", lambda g=g: verify_lift(inst, g))

        def fixed():
            res = fixed_double_cover(inst, phi)
            return res.ok, {"fixed": res.fixed, "ramified": res.ramified, "generic_unramified": res.generic_unramified}

        rep.run("fixed_curve", "fixed curve of phi is fixed and ramified over Delta", fixed)
        if spec.family == 7:
            x2 = inst.upstairs
            rep.run("beta:lift_criterion", "beta_a lifts exactly on a * conj(a) = 1",
                    lambda: verify_lift(inst, beta_map(x2, CIRCLE_A)) and not verify_lift(inst, beta_map(x2, FREE_A)))
            nus = abelian.nu_multiset(spec.config7)
            rep.run("nu_multiset_preserved", "nu multiset of the blown-up pairs is preserved by every generator",
                    lambda: all(sorted(abelian.nu(_base_ratio(g, z)) for z in spec.config7.pairs) == nus for g in inst.generators.values()))
        for note in inst.notes:
            rep.add(f"note:{note.split(':')[0]}", "quotient element without a rational lift", True, note)
    return rep


def _base_ratio(g: RationalMap, z: GaussRat) -> GaussRat:
    """Image of [z:1] under the base map of a family-(7) chart map, as a ratio."""
    vals = {"u0": z, "u1": ONE}
    for alt in g.components[0]:
        ev = [p.evaluate(vals).constant_value() for p in alt]
        if not all(e.is_zero() for e in ev):
            return ev[0] / ev[1]
    raise ValueError("base map undefined")
