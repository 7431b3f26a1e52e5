"""Catalog of surface models: equations, real structures, parameterizations, curves.

Every model is rational and carries an explicit dominant map ``param`` from a
parameter space (P2 or a P1xP1 model), which is how ideal membership and map
equality are decided. The parameter spaces themselves carry ``param = None``.
"""
from __future__ import annotations

import re
from typing import Callable, Sequence

from .exact import GaussRat
from .maps import (
    CurveOnModel,
    ModelMismatch,
    ModelPoint,
    RationalMap,
    SemilinearMap,
    apply_at,
    pullback_poly,
    vanishes_on_model,
)
from .poly import MultiPoly, VarBlocks, parse_poly


class UnknownModel(KeyError):
    pass


class NoProjection(ValueError):
    pass


class SurfaceModel:
    """A surface in a product of projective spaces with its real structure and charts.

    Attributes
    ==========
    id : stable catalog name
    ring : coordinate blocks
    equations : multihomogeneous defining equations
    sigma : antiholomorphic involution (a SemilinearMap) or None
    param, param_inverse : birational chart from a parameter space and back
    named_curves, named_points : labelled curves and points
    projection : map to P1 for conic bundles
    hexagon : names of the six (-1)-curves for degree-6 models
    """

    def __init__(self, id: str, ring: VarBlocks, equations: Sequence[str | MultiPoly] = (), description: str = ""):
        self.id = id
        self.ring = ring
        self.equations: tuple[MultiPoly, ...] = tuple(
            parse_poly(e, ring) if isinstance(e, str) else e for e in equations
        )
        self.description = description
        self.sigma: SemilinearMap | None = None
        self.param: RationalMap | None = None
        self.param_inverse: RationalMap | None = None
        self.named_curves: dict[str, CurveOnModel] = {}
        self.named_points: dict[str, ModelPoint] = {}
        self.projection: RationalMap | None = None
        self.fibre_table: list[tuple[ModelPoint, tuple[str, ...]]] = []
        self.hexagon: tuple[str, ...] = ()
        self.sigma_table: dict[str, str] = {}
        self.generators: dict[str, RationalMap] = {}

    def __repr__(self) -> str:
        return f"SurfaceModel({self.id})"

    # -- building helpers ------------------------------------------------------------
    def poly(self, text: str) -> MultiPoly:
        return parse_poly(text, self.ring)

    def map_to(self, target: "SurfaceModel", text: str, *alternatives: str, params=None, name=None) -> RationalMap:
        return RationalMap.parse(self, target, text, alternatives, params=params, name=name)

    def add_curve(self, name: str, equations: Sequence[str], param: str | None):
        eqs = [self.poly(e) for e in equations]
        pmap = RationalMap.parse(P1, self, param, name=name) if param is not None else None
        self.named_curves[name] = CurveOnModel(self, name, eqs, pmap)

    def add_point(self, name: str, text: str):
        self.named_points[name] = ModelPoint.parse(text)

    def set_standard_sigma(self):
        self.sigma = SemilinearMap(RationalMap.identity(self), True, name="sigma")

    def curve(self, name: str) -> CurveOnModel:
        return self.named_curves[name]


def _space(id: str, blocks, description: str) -> SurfaceModel:
    m = SurfaceModel(id, VarBlocks(blocks), (), description)
    m.set_standard_sigma()
    return m


# Parameter spaces: not catalog entries, but sources of parameterizations.
P1 = _space("P1", [["t0", "t1"]], "projective line (curve parameter)")
P1xP1 = _space("P1xP1", [["x0", "x1"], ["y0", "y1"]], "P1 x P1 with the standard real structure")


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def _build_P2() -> SurfaceModel:
    m = SurfaceModel("P2", VarBlocks([["x0", "x1", "x2"]]), (), "projective plane")
    m.set_standard_sigma()
    return m


def _build_P1xP1_sigmaS() -> SurfaceModel:
    m = SurfaceModel("P1xP1_sigmaS", VarBlocks([["x0", "x1"], ["y0", "y1"]]), (), "P1 x P1 with (x, y) -> (conj y, conj x)")
    m.sigma = SemilinearMap(m.map_to(m, "([y0:y1],[x0:x1])"), True, name="sigma_S")
    return m


def _build_Q31(sigmaS: SurfaceModel) -> SurfaceModel:
    m = SurfaceModel("Q31", VarBlocks([["w", "x", "y", "z"]]), ["w^2 - x^2 - y^2 - z^2"], "real sphere quadric")
    m.set_standard_sigma()
    m.param = sigmaS.map_to(m, "([x0*y0 + x1*y1 : i*(x0*y1 - x1*y0) : x0*y1 + x1*y0 : x0*y0 - x1*y1])", name="phi_inv")
    m.param_inverse = m.map_to(sigmaS, "([w+z : y+i*x],[w+z : y-i*x])", "([y-i*x : w-z],[y+i*x : w-z])", name="phi")
    m.add_point("p", "[0:1:i:0]")
    m.add_point("pbar", "[0:1:-i:0]")
    return m


def _build_P1xP1_sigmaC() -> SurfaceModel:
    m = SurfaceModel("P1xP1_sigmaC", VarBlocks([["u0", "u1"], ["v0", "v1"]]), (), "P1 x P1 with the real structure descended from X2")
    m.sigma = SemilinearMap(m.map_to(m, "([u0:u1],[u1*v1:u0*v0])"), True, name="sigma_C")
    m.projection = m.map_to(P1, "([u0:u1])", name="pr")
    m.add_curve("eps_s", ["v1"], "([t0:t1],[1:0])")
    m.add_curve("eps_sbar", ["v0"], "([t0:t1],[0:1])")
    m.add_curve("u1", ["u1"], "([1:0],[t0:t1])")
    m.add_curve("u0", ["u0"], "([0:1],[t0:t1])")
    m.add_point("special_0", "([1:0],[0:1])")
    m.add_point("special_1", "([0:1],[1:0])")
    return m


def _build_X2_P3xP1() -> SurfaceModel:
    m = SurfaceModel(
        "X2_P3xP1",
        VarBlocks([["w", "x", "y", "z"], ["u", "v"]]),
        ["w*z - x^2 - y^2", "u*z - v*w"],
        "sphere quadric blown up at a conjugate pair, in P3 x P1",
    )
    m.set_standard_sigma()
    m.param = P1xP1.map_to(
        m, "([2*x0*y0 : i*(x0*y1 - x1*y0) : x0*y1 + x1*y0 : 2*x1*y1],[x0*y0 : x1*y1])", name="param"
    )
    m.param_inverse = m.map_to(P1xP1, "([w : y+i*x],[w : y-i*x])", "([y-i*x : z],[y+i*x : z])", name="param_inv")
    m.projection = m.map_to(P1, "([u:v])", name="pr")
    m.add_curve("E_p", ["w", "z", "y - i*x"], "([0:1:i:0],[t0:t1])")
    m.add_curve("E_pbar", ["w", "z", "y + i*x"], "([0:1:-i:0],[t0:t1])")
    m.add_curve("f_p", ["u", "w", "y - i*x"], "([0:t0:i*t0:t1],[0:1])")
    m.add_curve("f_pbar", ["u", "w", "y + i*x"], "([0:t0:-i*t0:t1],[0:1])")
    m.add_curve("g_p", ["v", "z", "y - i*x"], "([t1:t0:i*t0:0],[1:0])")
    m.add_curve("g_pbar", ["v", "z", "y + i*x"], "([t1:t0:-i*t0:0],[1:0])")
    m.hexagon = ("E_p", "E_pbar", "f_p", "f_pbar", "g_p", "g_pbar")
    m.sigma_table = {"E_p": "E_pbar", "E_pbar": "E_p", "f_p": "f_pbar", "f_pbar": "f_p", "g_p": "g_pbar", "g_pbar": "g_p"}
    m.fibre_table = [
        (ModelPoint.parse("[0:1]"), ("f_p", "f_pbar")),
        (ModelPoint.parse("[1:0]"), ("g_p", "g_pbar")),
    ]
    m.generators = {
        "alpha1": m.map_to(m, "([z:-x:y:w],[v:u])", name="alpha1"),
        "alpha2": m.map_to(m, "([w:-x:y:z],[u:v])", name="alpha2"),
    }
    return m


def _build_X2_P2xP2(sigmaC: SurfaceModel) -> SurfaceModel:
    m = SurfaceModel(
        "X2_P2xP2",
        VarBlocks([["x0", "x1", "x2"], ["y0", "y1", "y2"]]),
        ["x0*y0 - x1*y1", "x1*y1 - x2*y2"],
        "sphere quadric blown up at a conjugate pair, in P2 x P2",
    )
    m.sigma = SemilinearMap(m.map_to(m, "([y1:y0:y2],[x1:x0:x2])"), True, name="sigma_2")
    m.param = sigmaC.map_to(m, "([u0*v1 : u1*v1 : u0*v0],[u1*v0 : u0*v0 : u1*v1])", name="eps_inv")
    m.param_inverse = m.map_to(sigmaC, "([x0:x1],[x2:x0])", "([y1:y0],[y0:y2])", name="eps")
    m.projection = m.map_to(P1, "([x0:x1])", "([y1:y0])", name="pr")
    m.add_curve("f_p", ["y1", "y2"], "([0:t0:t1],[1:0:0])")
    m.add_curve("fbar_p", ["x0", "x2"], "([0:1:0],[t0:0:t1])")
    m.add_curve("f_pbar", ["x1", "x2"], "([1:0:0],[0:t0:t1])")
    m.add_curve("fbar_pbar", ["y0", "y2"], "([t0:0:t1],[0:1:0])")
    m.add_curve("s", ["x0", "x1"], "([0:0:1],[t0:t1:0])")
    m.add_curve("sbar", ["y0", "y1"], "([t0:t1:0],[0:0:1])")
    m.hexagon = ("f_p", "fbar_p", "f_pbar", "fbar_pbar", "s", "sbar")
    m.sigma_table = {
        "s": "sbar", "sbar": "s", "f_p": "fbar_p", "fbar_p": "f_p",
        "f_pbar": "fbar_pbar", "fbar_pbar": "f_pbar",
    }
    m.fibre_table = [
        (ModelPoint.parse("[0:1]"), ("f_p", "fbar_p")),
        (ModelPoint.parse("[1:0]"), ("f_pbar", "fbar_pbar")),
    ]
    m.generators = {
        "alpha1": m.map_to(m, "([y0:y1:y2],[x0:x1:x2])", name="alpha1"),
        "alpha2": m.map_to(m, "([y1:y0:y2],[x1:x0:x2])", name="alpha2"),
    }
    return m


def _build_X3Q() -> SurfaceModel:
    m = SurfaceModel(
        "X3Q",
        VarBlocks([["x0", "x1", "x2"], ["y0", "y1", "y2"]]),
        ["x0*y0 - x1*y2 - x2*y1", "x1*y1 - x2*y2"],
        "degree-6 del Pezzo surface with invariant Picard rank 3 over the quadric",
    )
    m.set_standard_sigma()
    m.param = P2.map_to(m, "([x0:x1:x2],[x1^2 + x2^2 : x0*x2 : x0*x1])", name="param")
    m.param_inverse = m.map_to(P2, "([x0:x1:x2])", name="param_inv")
    m.add_curve("E_p", ["x1", "x2"], "([1:0:0],[0:t0:t1])")
    m.add_curve("E_q", ["y1", "y2"], "([0:t0:t1],[1:0:0])")
    m.add_curve("f_q", ["x0", "x2 - i*x1", "y2 + i*y1"], "([0:1:i],[t0:t1:-i*t1])")
    m.add_curve("fbar_q", ["x0", "x2 + i*x1", "y2 - i*y1"], "([0:1:-i],[t0:t1:i*t1])")
    m.add_curve("f_p", ["y0", "y2 - i*y1", "x2 + i*x1"], "([t0:t1:-i*t1],[0:1:i])")
    m.add_curve("fbar_p", ["y0", "y2 + i*y1", "x2 - i*x1"], "([t0:t1:i*t1],[0:1:-i])")
    m.hexagon = ("E_p", "E_q", "f_q", "fbar_q", "f_p", "fbar_p")
    m.sigma_table = {
        "E_p": "E_p", "E_q": "E_q", "f_p": "fbar_p", "fbar_p": "f_p", "f_q": "fbar_q", "fbar_q": "f_q",
    }
    m.generators = {
        "alpha1": m.map_to(m, "([y0:y1:y2],[x0:x1:x2])", name="alpha1"),
        "alpha2": m.map_to(m, "([x0:x2:x1],[y0:y2:y1])", name="alpha2"),
    }
    return m


def _build_X3F0() -> SurfaceModel:
    m = SurfaceModel(
        "X3F0",
        VarBlocks([["x0", "x1"], ["y0", "y1"], ["z0", "z1"]]),
        ["x0*y0*z1 + x0*y1*z0 + x1*y0*z0 - x1*y1*z1"],
        "P1 x P1 blown up at a conjugate pair, in (P1)^3",
    )
    m.set_standard_sigma()
    m.param = P1xP1.map_to(m, "([x0:x1],[y0:y1],[x0*y0 - x1*y1 : -x0*y1 - x1*y0])", name="param")
    m.param_inverse = m.map_to(P1xP1, "([x0:x1],[y0:y1])", name="param_inv")
    m.add_curve("E_p", ["x1 - i*x0", "y1 + i*y0"], "([1:i],[1:-i],[t0:t1])")
    m.add_curve("E_pbar", ["x1 + i*x0", "y1 - i*y0"], "([1:-i],[1:i],[t0:t1])")
    m.add_curve("g_p", ["x1 - i*x0", "z1 + i*z0"], "([1:i],[t0:t1],[1:-i])")
    m.add_curve("g_pbar", ["x1 + i*x0", "z1 - i*z0"], "([1:-i],[t0:t1],[1:i])")
    m.add_curve("f_p", ["y1 + i*y0", "z1 - i*z0"], "([t0:t1],[1:-i],[1:i])")
    m.add_curve("f_pbar", ["y1 - i*y0", "z1 + i*z0"], "([t0:t1],[1:i],[1:-i])")
    m.hexagon = ("E_p", "E_pbar", "g_p", "g_pbar", "f_p", "f_pbar")
    m.sigma_table = {
        "E_p": "E_pbar", "E_pbar": "E_p", "f_p": "f_pbar", "f_pbar": "f_p", "g_p": "g_pbar", "g_pbar": "g_p",
    }
    m.generators = {
        "alpha1": m.map_to(m, "([y0:y1],[x0:x1],[z0:z1])", name="alpha1"),
        "alpha2": m.map_to(m, "([z1:z0],[x0:-x1],[y1:y0])", name="alpha2"),
        "alpha0": m.map_to(m, "([x0:-x1],[z1:z0],[y1:y0])", name="alpha0"),
    }
    return m


def _build_X4() -> SurfaceModel:
    m = SurfaceModel(
        "X4",
        VarBlocks([["x0", "x1", "x2"], ["y0", "y1", "y2"]]),
        ["x0*y0 - x1*y1", "x1*y1 - x2*y2"],
        "P2 blown up at three real points, in P2 x P2",
    )
    m.set_standard_sigma()
    m.param = P2.map_to(m, "([x0:x1:x2],[x1*x2 : x0*x2 : x0*x1])", name="param")
    m.param_inverse = m.map_to(P2, "([x0:x1:x2])", "([y1*y2:y0*y2:y0*y1])", name="param_inv")
    m.add_curve("E0", ["x1", "x2"], "([1:0:0],[0:t0:t1])")
    m.add_curve("E1", ["x0", "x2"], "([0:1:0],[t0:0:t1])")
    m.add_curve("E2", ["x0", "x1"], "([0:0:1],[t0:t1:0])")
    m.add_curve("F0", ["y1", "y2"], "([0:t0:t1],[1:0:0])")
    m.add_curve("F1", ["y0", "y2"], "([t0:0:t1],[0:1:0])")
    m.add_curve("F2", ["y0", "y1"], "([t0:t1:0],[0:0:1])")
    m.hexagon = ("E0", "E1", "E2", "F0", "F1", "F2")
    m.sigma_table = {c: c for c in m.hexagon}
    m.generators = {
        "alpha1": m.map_to(m, "([y2:y0:y1],[x2:x0:x1])", name="alpha1"),
        "alpha2": m.map_to(m, "([x1:x0:x2],[y1:y0:y2])", name="alpha2"),
        "beta1": m.map_to(m, "([y0:y1:y2],[x0:x1:x2])", name="beta1"),
        "beta2": m.map_to(m, "([x2:x0:x1],[y2:y0:y1])", name="beta2"),
    }
    return m


def build_Fn(n: int) -> SurfaceModel:
    """Hirzebruch surface u^n x2 = v^n x1 in P2 x P1."""
    if n < 1:
        raise ValueError("Hirzebruch index must be positive")
    m = SurfaceModel(
        f"Fn({n})",
        VarBlocks([["x0", "x1", "x2"], ["u", "v"]]),
        [f"u^{n}*x2 - v^{n}*x1"],
        f"Hirzebruch surface F_{n}",
    )
    m.set_standard_sigma()
    m.param = P1xP1.map_to(m, f"([x0*y0^{n} : x1*y0^{n} : x1*y1^{n}],[y0:y1])", name="param")
    m.param_inverse = m.map_to(P1xP1, "([x0:x1],[u:v])", "([x0:x2],[u:v])", name="param_inv")
    m.projection = m.map_to(P1, "([u:v])", name="pr")
    m.add_curve("E_n", ["x1", "x2"], "([1:0:0],[t0:t1])")
    m.add_curve("s_n", ["x0"], f"([0:t0^{n}:t1^{n}],[t0:t1])")
    return m


P2 = _build_P2()


def _fresh_catalog() -> dict[str, SurfaceModel]:
    sigmaS = _build_P1xP1_sigmaS()
    sigmaC = _build_P1xP1_sigmaC()
    models = [
        P2,
        _build_Q31(sigmaS),
        sigmaS,
        sigmaC,
        _build_X2_P3xP1(),
        _build_X2_P2xP2(sigmaC),
        _build_X3Q(),
        _build_X3F0(),
        _build_X4(),
    ]
    return {m.id: m for m in models}


_CATALOG = _fresh_catalog()
_FN_CACHE: dict[int, SurfaceModel] = {}

CATALOG_IDS = (
    "P2", "Q31", "P1xP1_sigmaS", "P1xP1_sigmaC", "X2_P3xP1", "X2_P2xP2", "X3Q", "X3F0", "X4", "Fn(n)",
)
DEGREE_SIX = ("X2_P3xP1", "X2_P2xP2", "X3Q", "X3F0", "X4")


def builtin(id: str) -> SurfaceModel:
    """Look up a catalog model; ``Fn(3)`` and ``F3`` both name the Hirzebruch surface F_3."""
    if id in _CATALOG:
        return _CATALOG[id]
    if id == "P1xP1":
        return P1xP1
    m = re.fullmatch(r"F(?:n\()?(\d+)\)?", id)
    if m:
        n = int(m.group(1))
        if n not in _FN_CACHE:
            _FN_CACHE[n] = build_Fn(n)
        return _FN_CACHE[n]
    raise UnknownModel(id)


def catalog() -> list[str]:
    return list(CATALOG_IDS)


def point_on_curve(pt: ModelPoint, c: CurveOnModel) -> bool:
    vals = pt.values(c.model.ring)
    return all(eq.evaluate(vals).is_zero() for eq in c.equations)


def point_on_model(pt: ModelPoint, m: SurfaceModel) -> bool:
    vals = pt.values(m.ring)
    return all(eq.evaluate(vals).is_zero() for eq in m.equations)


def curve_on_model(c: CurveOnModel) -> bool:
    """The parameterization satisfies both the model and the curve equations."""
    if c.param is None:
        return True
    return all(pullback_poly(eq, c.param).is_zero() for eq in (*c.model.equations, *c.equations))


def singular_fibres(m: SurfaceModel) -> list[tuple[ModelPoint, tuple[str, ...]]]:
    if m.projection is None:
        raise NoProjection(m.id)
    return list(m.fibre_table)


def check_fibre_table(m: SurfaceModel) -> bool:
    """Each listed component maps to its stated base point under the projection."""
    from .maps import image_of_curve

    for base, names in singular_fibres(m):
        for name in names:
            img = image_of_curve(m.projection, m.curve(name))
            if not isinstance(img, ModelPoint) or img != base:
                return False
    return True
