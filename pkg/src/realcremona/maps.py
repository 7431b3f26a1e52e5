"""Rational and semilinear maps between multiprojective surface models.

A map stores, for each target block, one or more alternative coordinate tuples
in the source variables. Alternatives agree where both are defined, so a map is
undefined at a point exactly when every alternative of some block vanishes
there. A semilinear map ``x -> G(conj(x))`` carries ``conjugates=True``.

Equality on a model is decided by pulling back along the model's rational
parameterization and cross-multiplying coordinates, which is exact and needs
no gcd.
"""
from __future__ import annotations

import itertools
import re
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .exact import ONE, ZERO, GaussRat, Number, ParamSystem, parse_gauss
from .poly import MultiPoly, VarBlocks, normalize_tuple, parse_poly
from .univariate import BinaryForm, binary_gcd, point_key, strip_points

if TYPE_CHECKING:
    from .surfaces import SurfaceModel

Tuple_ = tuple[MultiPoly, ...]


class ModelMismatch(ValueError):
    pass


class UndefinedComposition(ValueError):
    """Raised when the inner map lands in the base locus of the outer one."""


class CurveInBaseLocus(ValueError):
    pass


class ModelPoint:
    """A point given by one projective tuple of Gaussian rationals per block."""

    __slots__ = ("coords", "_key")

    def __init__(self, coords: Sequence[Sequence[Number]]):
        cs = tuple(tuple(GaussRat.coerce(c) for c in block) for block in coords)
        for block in cs:
            if all(c.is_zero() for c in block):
                raise ValueError("a block of a projective point is identically zero")
        self.coords: tuple[tuple[GaussRat, ...], ...] = cs
        self._key = tuple(_normalize_point_block(b) for b in cs)

    @staticmethod
    def parse(text: str) -> "ModelPoint":
        """Parse ``([a:b:c],[d:e])`` or ``[a:b]``."""
        blocks = re.findall(r"\[([^\]]*)\]", text)
        if not blocks:
            raise ValueError(f"malformed point: {text!r}")
        return ModelPoint([[parse_gauss(x) for x in b.split(":")] for b in blocks])

    def conj(self) -> "ModelPoint":
        return ModelPoint([[c.conj() for c in b] for b in self.coords])

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, ModelPoint) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        inner = ",".join("[" + ":".join(str(c) for c in b) + "]" for b in self._key)
        return f"({inner})" if len(self._key) > 1 else inner

    def __repr__(self) -> str:
        return f"ModelPoint({str(self)!r})"

    def values(self, ring: VarBlocks) -> dict[str, GaussRat]:
        if len(ring.blocks) != len(self.coords) or any(
            len(b) != len(c) for b, c in zip(ring.blocks, self.coords)
        ):
            raise ModelMismatch("point shape does not match the ring")
        return {v: c for b, cb in zip(ring.blocks, self.coords) for v, c in zip(b, cb)}


def _normalize_point_block(block: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
    lead = next(c for c in block if not c.is_zero())
    s = lead.inv()
    return tuple(c * s for c in block)


class CurveOnModel:
    """A named curve: cutting equations plus a parameterization from P1 (if rational)."""

    def __init__(self, model: "SurfaceModel", name: str, equations: Sequence[MultiPoly], param: "RationalMap | None"):
        self.model = model
        self.name = name
        self.equations = tuple(equations)
        self.param = param

    def __repr__(self) -> str:
        return f"CurveOnModel({self.model.id}:{self.name})"


class RationalMap:
    """A rational map between models given by alternative tuples per target block."""

    conjugates = False

    def __init__(
        self,
        source: "SurfaceModel",
        target: "SurfaceModel",
        components: Sequence[Sequence[Sequence[MultiPoly]]],
        params: ParamSystem | None = None,
        name: str | None = None,
        normalize: bool = True,
    ):
        self.source = source
        self.target = target
        ring = source.ring if params is None else source.ring.with_params(params)
        for block in components:
            for alt in block:
                for p in alt:
                    if p.ring != ring:
                        ring = ring.with_params(p.ring.params)
        self.ring: VarBlocks = ring
        if len(components) != len(target.ring.blocks):
            raise ModelMismatch(f"expected {len(target.ring.blocks)} target blocks, got {len(components)}")
        comps = []
        for b, block in enumerate(components):
            alts = []
            for alt in block:
                if len(alt) != len(target.ring.blocks[b]):
                    raise ModelMismatch("tuple length does not match the target block")
                lifted = [p.lift(ring) for p in alt]
                if all(p.is_zero() for p in lifted):
                    continue
                t = tuple(normalize_tuple(lifted)) if normalize else tuple(lifted)
                if t not in alts:
                    alts.append(t)
            if not alts:
                raise UndefinedComposition(f"block {b} is identically zero")
            comps.append(tuple(alts))
        self.components: tuple[tuple[Tuple_, ...], ...] = tuple(comps)
        self.name = name

    # -- construction helpers -----------------------------------------------------
    @classmethod
    def parse(
        cls,
        source: "SurfaceModel",
        target: "SurfaceModel",
        text: str,
        alternatives: Iterable[str] = (),
        params: ParamSystem | None = None,
        name: str | None = None,
    ) -> "RationalMap":
        """Parse ``([f0:f1:...],[g0:...]) <- (...)``; the source part is optional."""
        ring = source.ring if params is None else source.ring.with_params(params)
        texts = [text, *alternatives]
        per_block: list[list[list[MultiPoly]]] = [[] for _ in target.ring.blocks]
        for t in texts:
            blocks = _parse_blocks(t.split("<-")[0], ring)
            if len(blocks) != len(per_block):
                raise ModelMismatch("wrong number of target blocks in map literal")
            for b, tup in enumerate(blocks):
                per_block[b].append(tup)
        return cls(source, target, per_block, params=params, name=name)

    @classmethod
    def identity(cls, model: "SurfaceModel") -> "RationalMap":
        return RationalMap(model, model, [[tuple(b)] for b in model.ring.gens()], name="id")

    # -- queries -------------------------------------------------------------------
    def primary(self) -> tuple[Tuple_, ...]:
        """First alternative of each block."""
        return tuple(block[0] for block in self.components)

    def holomorphic_part(self) -> "RationalMap":
        return RationalMap(self.source, self.target, self.components, normalize=False, name=self.name)

    def with_name(self, name: str) -> "RationalMap":
        out = self._rebuild(self.components)
        out.name = name
        return out

    def _rebuild(self, components, conjugates: bool | None = None):
        flag = self.conjugates if conjugates is None else conjugates
        if flag:
            return SemilinearMap(RationalMap(self.source, self.target, components, normalize=False), True)
        return RationalMap(self.source, self.target, components, normalize=False)

    def specialize(self, values: Mapping[str, Number]) -> "RationalMap":
        """Fix every parameter to a number."""
        comps = [[[p.specialize(values) for p in alt] for alt in block] for block in self.components]
        base = RationalMap(self.source, self.target, comps, name=self.name)
        return SemilinearMap(base, True) if self.conjugates else base

    def conj_coeffs(self) -> tuple[tuple[Tuple_, ...], ...]:
        return tuple(tuple(tuple(p.conj_coeffs() for p in alt) for alt in block) for block in self.components)

    def images(self, choice: Sequence[int] | None = None) -> dict[str, MultiPoly]:
        """Variable -> image polynomial for a choice of alternative per block."""
        out = {}
        for b, (names, block) in enumerate(zip(self.target.ring.blocks, self.components)):
            alt = block[choice[b] if choice else 0]
            out.update(zip(names, alt))
        return out

    def is_multihomogeneous(self) -> bool:
        for block in self.components:
            for alt in block:
                degs = {p.multidegree() for p in alt if not p.is_zero()}
                if len(degs) != 1:
                    return False
        return True

    def __str__(self) -> str:
        blocks = ",".join("[" + " : ".join(str(p) for p in block[0]) + "]" for block in self.components)
        bar = "conj " if self.conjugates else ""
        return f"{bar}({blocks})"

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{label} {self.source.id}->{self.target.id} {self}>"

    def __mul__(self, other: "RationalMap") -> "RationalMap":
        return compose(self, other)


class SemilinearMap(RationalMap):
    """A map x -> G(conj(x)) when ``conjugates`` is true; G is ``map``."""

    def __init__(self, map: RationalMap, conjugates: bool = True, name: str | None = None):
        RationalMap.__init__(self, map.source, map.target, map.components, normalize=False, name=name or map.name)
        self.conjugates = conjugates

    @property
    def map(self) -> RationalMap:
        return self.holomorphic_part()


def _parse_blocks(text: str, ring: VarBlocks) -> list[tuple[MultiPoly, ...]]:
    blocks = re.findall(r"\[([^\]]*)\]", text)
    if not blocks:
        raise ValueError(f"malformed map literal: {text!r}")
    return [tuple(parse_poly(x, ring) for x in b.split(":")) for b in blocks]


def _same_model(a, b) -> bool:
    return a is b or a.id == b.id


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """f o g with conjugation bookkeeping; alternatives of g are tried in turn."""
    if not _same_model(g.target, f.source):
        raise ModelMismatch(f"cannot compose: {g.target.id} != {f.source.id}")
    ring = g.ring.with_params(f.ring.params)
    g_comps = g.components
    if f.conjugates:
        g_comps = g.conj_coeffs()
    g_blocks = []
    for names, block in zip(g.target.ring.blocks, g_comps):
        g_blocks.append([dict(zip(names, (p.lift(ring) for p in alt))) for alt in block])
    choices = list(itertools.product(*[range(len(b)) for b in g_blocks]))
    new_components = []
    for block in f.components:
        alts = []
        for alt in block:
            for choice in choices:
                images: dict[str, MultiPoly] = {}
                for b, k in enumerate(choice):
                    images.update(g_blocks[b][k])
                out = tuple(p.substitute(images, target=ring) for p in alt)
                if not all(p.is_zero() for p in out):
                    alts.append(out)
                    break
        if not alts:
            raise UndefinedComposition("the inner map lands in the base locus of the outer map")
        new_components.append(alts)
    flag = f.conjugates != g.conjugates
    base = RationalMap(g.source, f.target, new_components)
    return SemilinearMap(base, True) if flag else base


def pullback_to_param(f: RationalMap) -> RationalMap:
    param = getattr(f.source, "param", None)
    return f if param is None else compose(f, param)


def equal_on_variety(f: RationalMap, g: RationalMap) -> bool:
    """Exact equality of maps on the source model via cross-multiplication."""
    if not (_same_model(f.source, g.source) and _same_model(f.target, g.target)):
        raise ModelMismatch("maps have different source or target")
    if f.conjugates != g.conjugates:
        return False
    fp, gp = pullback_to_param(f), pullback_to_param(g)
    ring = fp.ring.with_params(gp.ring.params)
    for bf, bg in zip(fp.components, gp.components):
        p = [x.lift(ring) for x in bf[0]]
        q = [x.lift(ring) for x in bg[0]]
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if not (p[i] * q[j] - p[j] * q[i]).is_zero():
                    return False
            if p[i].is_zero() != q[i].is_zero():
                return False
    return True


def is_identity(f: RationalMap) -> bool:
    return _same_model(f.source, f.target) and equal_on_variety(f, RationalMap.identity(f.source))


def is_involution(f: RationalMap) -> bool:
    if not _same_model(f.source, f.target):
        raise ModelMismatch("an involution needs source = target")
    return is_identity(compose(f, f))


def is_real(f: RationalMap) -> bool:
    """f commutes with the real structures of its source and target."""
    s_src, s_tgt = f.source.sigma, f.target.sigma
    if s_src is None or s_tgt is None:
        raise ValueError("source and target need real structures")
    return equal_on_variety(compose(s_tgt, f), compose(f, s_src))


def pullback_poly(q: MultiPoly, f: RationalMap) -> MultiPoly:
    """q o f using the first alternative per block (conjugating q if f is semilinear)."""
    q2 = q.conj_coeffs() if f.conjugates else q
    ring = f.ring.with_params(q.ring.params)
    return q2.substitute({k: v.lift(ring) for k, v in f.images().items()}, target=ring)


def vanishes_on_model(q: MultiPoly, model: "SurfaceModel") -> bool:
    """True iff q vanishes identically on the model (pullback along its parameterization)."""
    if model.param is None:
        return q.is_zero()
    return pullback_poly(q, model.param).is_zero()


def preserves_equations(f: RationalMap) -> bool:
    return all(vanishes_on_model_via(f, eq) for eq in f.target.equations)


def vanishes_on_model_via(f: RationalMap, eq: MultiPoly) -> bool:
    pulled = pullback_poly(eq, f)
    src = f.source
    if src.param is None:
        return pulled.is_zero()
    return pullback_poly(pulled, src.param).is_zero()


def undefined_at(f: RationalMap, pt: ModelPoint) -> bool:
    """True iff every alternative of some block vanishes at pt."""
    vals = pt.values(f.source.ring)
    if f.conjugates:
        vals = {k: v.conj() for k, v in vals.items()}
    for block in f.components:
        if all(all(p.evaluate(vals).is_zero() for p in alt) for alt in block):
            return True
    return False


def apply_at(f: RationalMap, pt: ModelPoint) -> ModelPoint:
    """Image of a point where f is defined and parameter-free."""
    vals = pt.values(f.source.ring)
    if f.conjugates:
        vals = {k: v.conj() for k, v in vals.items()}
    coords = []
    for block in f.components:
        for alt in block:
            ev = [p.evaluate(vals) for p in alt]
            if not all(e.is_zero() for e in ev):
                coords.append([e.constant_value() for e in ev])
                break
        else:
            raise UndefinedComposition(f"map undefined at {pt}")
    return ModelPoint(coords)


def apply_at_symbolic(f: RationalMap, pt: ModelPoint) -> list[list[MultiPoly]]:
    """Image coordinates of a point, as parameter polynomials (first defined alternative)."""
    vals = pt.values(f.source.ring)
    if f.conjugates:
        vals = {k: v.conj() for k, v in vals.items()}
    out = []
    for block in f.components:
        for alt in block:
            ev = [p.evaluate(vals) for p in alt]
            if not all(e.is_zero() for e in ev):
                out.append(ev)
                break
        else:
            raise UndefinedComposition(f"map undefined at {pt}")
    return out


def point_matches_symbolic(coords: Sequence[Sequence[MultiPoly]], pt: ModelPoint) -> bool:
    """Projective equality of symbolic coordinates with a numeric point, block by block."""
    for block, target in zip(coords, pt.coords):
        ring = block[0].ring
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                if not (block[i] * target[j] - block[j] * target[i]).is_zero():
                    return False
    return True


def restrict_to_curve(f: RationalMap, curve: CurveOnModel) -> RationalMap:
    if curve.param is None:
        raise ValueError(f"curve {curve.name} has no rational parameterization")
    return compose(f, curve.param)


def defined_along_curve_except(f: RationalMap, curve: CurveOnModel, allowed: Iterable[ModelPoint]) -> str:
    """Status ``pass``/``fail``/``inconclusive``: all indeterminacy of f on the curve lies in allowed.

    The pullback of every block alternative along the curve is a tuple of binary
    forms; the block is undefined where all its alternatives vanish, and f is
    undefined where some block is.
    """
    if not _same_model(curve.model, f.source):
        raise ModelMismatch("curve is not on the source of the map")
    c = curve.param
    if c is None:
        raise ValueError(f"curve {curve.name} has no rational parameterization")
    if f.ring.params.names:
        raise ValueError("curve restriction needs a parameter-free map")
    c_comps = c.conj_coeffs() if f.conjugates else c.components
    images = {}
    for names, block in zip(c.target.ring.blocks, c_comps):
        images.update(zip(names, block[0]))
    bad = None
    for block in f.components:
        block_gcd = BinaryForm.from_poly(c.ring.zero())
        for alt in block:
            forms = [BinaryForm.from_poly(p.substitute(images, target=c.ring)) for p in alt]
            block_gcd = binary_gcd([block_gcd, binary_gcd(forms)])
        if block_gcd.is_zero():
            raise CurveInBaseLocus(f"curve {curve.name} lies in the base locus")
        bad = block_gcd if bad is None else _form_product(bad, block_gcd)
    allowed_params = _points_to_curve_params(allowed, curve)
    status, _ = strip_points(bad, allowed_params)
    return status


def _form_product(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    return BinaryForm(a.uni * b.uni, a.deg + b.deg)


def _points_to_curve_params(points: Iterable[ModelPoint], curve: CurveOnModel) -> list[tuple]:
    """Parameters [t0:t1] of the allowed points that lie on the curve.

    Candidates are found by intersecting c(t) with the point block by block.
    """
    out = []
    c = curve.param
    for pt in points:
        for tpt in _preimages_on_curve(c, pt):
            out.append(tpt)
    return out


def _preimages_on_curve(c: RationalMap, pt: ModelPoint) -> list[tuple]:
    forms = []
    images = c.components
    for block, target in zip(images, pt.coords):
        alt = block[0]
        for i in range(len(alt)):
            for j in range(i + 1, len(alt)):
                forms.append(BinaryForm.from_poly(alt[i] * target[j] - alt[j] * target[i]))
    g = binary_gcd(forms)
    if g.is_zero():
        return []
    from .univariate import roots_low_degree

    out = []
    if g.inf_multiplicity:
        out.append((ZERO, ONE))
    roots = roots_low_degree(g.uni)
    if roots is None:
        return out
    out.extend((ONE, r) for r in roots)
    return out


def image_of_curve(f: RationalMap, curve: CurveOnModel):
    """Image of a curve: a ModelPoint if contracted, else a CurveOnModel (named if recognised)."""
    try:
        g = restrict_to_curve(f, curve)
    except UndefinedComposition as exc:
        raise CurveInBaseLocus(str(exc)) from exc
    const = _constant_point(g)
    if const is not None:
        return const
    holo = g.holomorphic_part()
    for name, named in f.target.named_curves.items():
        if named.equations and all(_vanishes_along(eq, holo) for eq in named.equations):
            return CurveOnModel(f.target, name, named.equations, holo)
    return CurveOnModel(f.target, "?", (), holo)


def _vanishes_along(eq: MultiPoly, g: RationalMap) -> bool:
    return pullback_poly(eq, g).is_zero()


def _constant_point(g: RationalMap):
    coords = []
    for block in g.components:
        alt = block[0]
        j = next(k for k, p in enumerate(alt) if not p.is_zero())
        m, _ = alt[j].leading_term()
        for p in alt:
            if not (p * alt[j].coefficient_of(m[: g.ring.nvars]).lift(p.ring) - alt[j] * p.coefficient_of(m[: g.ring.nvars]).lift(p.ring)).is_zero():
                return None
        coords.append([p.coefficient_of(m[: g.ring.nvars]) for p in alt])
    if any(any(c.has_params() for c in b) for b in coords):
        return [[c for c in b] for b in coords]
    return ModelPoint([[c.constant_value() for c in b] for b in coords])


def named_image(f: RationalMap, curve: CurveOnModel) -> str:
    img = image_of_curve(f, curve)
    if isinstance(img, CurveOnModel):
        return img.name
    return f"point {img}"
