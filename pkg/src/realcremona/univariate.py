"""Univariate polynomials and binary forms over Q(i).

Used to restrict maps to rational curves: a pullback along ``[t0:t1]`` is a
binary form, and its roots are points of P1. Roots at [0:1] are tracked by the
degree deficit after setting t0 = 1.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .exact import ONE, ZERO, GaussRat, Number, sqrt_gauss


class UniPoly:
    """Dense polynomial in one variable; coefficients from low to high degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number]):
        cs = [GaussRat.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[GaussRat, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> GaussRat:
        return self.coeffs[-1]

    def monic(self) -> "UniPoly":
        c = self.lead().inv()
        return UniPoly([a * c for a in self.coeffs])

    def __call__(self, x: Number) -> GaussRat:
        x = GaussRat.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def divmod(self, d: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [ZERO] * max(len(rem) - len(d.coeffs) + 1, 0)
        inv_lead = d.lead().inv()
        while len(rem) >= len(d.coeffs) and rem:
            shift = len(rem) - len(d.coeffs)
            c = rem[-1] * inv_lead
            q[shift] = c
            for k, dc in enumerate(d.coeffs):
                rem[shift + k] = rem[shift + k] - c * dc
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def roots_low_degree(p: UniPoly) -> list[GaussRat] | None:
    """All roots in Q(i) with multiplicity for degree <= 2, or None if it does not split."""
    if p.degree <= 0:
        return []
    if p.degree == 1:
        return [-p.coeffs[0] / p.coeffs[1]]
    if p.degree == 2:
        c, b, a = p.coeffs
        disc = b * b - a * c * 4
        w = sqrt_gauss(disc)
        if w is None:
            return None
        two_a = a * 2
        return [(-b + w) / two_a, (-b - w) / two_a]
    return None


class BinaryForm:
    """A binary form of known degree in [t0:t1], stored as f(1, t) plus its degree."""

    __slots__ = ("uni", "deg")

    def __init__(self, uni: UniPoly, deg: int):
        if not uni.is_zero() and uni.degree > deg:
            raise ValueError("dehomogenized degree exceeds form degree")
        self.uni = uni
        self.deg = deg

    @staticmethod
    def from_poly(p) -> "BinaryForm":
        """Convert a homogeneous MultiPoly in a single two-variable block."""
        ring = p.ring
        if len(ring.blocks) != 1 or len(ring.blocks[0]) != 2:
            raise ValueError("binary forms need a single block of two variables")
        if p.has_params():
            raise ValueError("binary form has symbolic parameters")
        if p.is_zero():
            return BinaryForm(UniPoly([]), 0)
        (deg,) = p.multidegree()
        coeffs = [ZERO] * (deg + 1)
        for e, c in p.terms.items():
            coeffs[e[1]] = c
        return BinaryForm(UniPoly(coeffs), deg)

    def is_zero(self) -> bool:
        return self.uni.is_zero()

    @property
    def inf_multiplicity(self) -> int:
        """Multiplicity of the root [t0:t1] = [0:1]."""
        return self.deg - self.uni.degree

    def vanishes_at(self, pt: Sequence[GaussRat]) -> bool:
        t0, t1 = GaussRat.coerce(pt[0]), GaussRat.coerce(pt[1])
        acc = ZERO
        for k, c in enumerate(self.uni.coeffs):
            acc = acc + c * (t0 ** (self.deg - k)) * (t1 ** k)
        return acc.is_zero()


def binary_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Gcd of binary forms; the zero form is neutral."""
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return BinaryForm(UniPoly([]), 0)
    g = UniPoly([])
    for f in nonzero:
        g = uni_gcd(g, f.uni)
    inf = min(f.inf_multiplicity for f in nonzero)
    return BinaryForm(g, g.degree + inf)


def point_key(pt: Sequence[GaussRat]) -> tuple:
    """Normalize a point of P1 to [1:t] or [0:1]."""
    t0, t1 = GaussRat.coerce(pt[0]), GaussRat.coerce(pt[1])
    if t0.is_zero():
        if t1.is_zero():
            raise ValueError("[0:0] is not a point")
        return (ZERO, ONE)
    return (ONE, t1 / t0)


def strip_points(g: BinaryForm, allowed: Iterable[Sequence[GaussRat]]) -> tuple[str, list[tuple]]:
    """Check that every root of g lies in the allowed set.

    Returns (status, stray roots). Status is ``pass`` if all roots are allowed,
    ``fail`` if a root outside the set was found, and ``inconclusive`` if the
    residual factor has degree at least 3 and no root could be exhibited.
    """
    keys = {point_key(p) for p in allowed}
    uni = g.uni
    inf = g.inf_multiplicity
    stray: list[tuple] = []
    if inf and (ZERO, ONE) not in keys:
        stray.append((ZERO, ONE))
    for _, t in [k for k in keys if k[0] == ONE]:
        lin = UniPoly([-t, ONE])
        while not uni.is_zero() and uni.degree >= 1:
            q, r = uni.divmod(lin)
            if not r.is_zero():
                break
            uni = q
    if uni.degree >= 1:
        roots = roots_low_degree(uni)
        if roots is None:
            # a root at t = 0 is still detectable without splitting
            if uni.coeffs[0].is_zero():
                stray.append((ONE, ZERO))
            if not stray:
                return "inconclusive", []
        else:
            stray.extend((ONE, t) for t in roots)
    return ("fail" if stray else "pass"), stray
