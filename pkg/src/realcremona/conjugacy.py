"""Conjugacy of point configurations on P1 under the two relevant real groups.

Family-(7) data is a set of non-real conjugate pairs, compared modulo
z -> l*z and z -> l/z with l > 0. Family-(8) data is a conjugation-closed set
of points, compared modulo real Moebius maps. Both decisions search finitely
many point matchings, since a group element aligning the sets is pinned by
where it sends one (resp. three) points.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import ONE, ZERO, GaussRat, format_rat, parse_gauss


class ConfigError(ValueError):
    pass


def _upper(z: GaussRat) -> GaussRat:
    if z.im == 0:
        raise ConfigError(f"{z} is a real point")
    return z if z.im > 0 else z.conj()


@dataclass(frozen=True)
class Config7:
    """Non-real conjugate pairs, each stored by its upper-half representative."""

    pairs: tuple[GaussRat, ...]

    @staticmethod
    def of(points: Iterable[GaussRat | str]) -> "Config7":
        zs = [parse_gauss(p) if isinstance(p, str) else GaussRat.coerce(p) for p in points]
        ups = [_upper(z) for z in zs]
        if not ups:
            raise ConfigError("at least one pair is required")
        if len(set(ups)) != len(ups):
            raise ConfigError("pairs must be distinct")
        return Config7(tuple(sorted(ups, key=GaussRat.sort_key)))

    @property
    def n(self) -> int:
        return len(self.pairs)

    def full_set(self) -> frozenset[GaussRat]:
        return frozenset(self.pairs) | frozenset(z.conj() for z in self.pairs)

    def to_json(self) -> dict:
        return {"pairs": [{"re": format_rat(z.re), "im": format_rat(z.im)} for z in self.pairs]}


@dataclass(frozen=True)
class Witness7:
    lam: Fraction
    inverted: bool

    def apply(self, z: GaussRat) -> GaussRat:
        return z.inv() * self.lam if self.inverted else z * self.lam

    def to_json(self) -> dict:
        return {"lambda": format_rat(self.lam), "inverted": self.inverted}


def apply7(w: Witness7, c: Config7) -> Config7:
    return Config7.of(w.apply(z) for z in c.pairs)


def _positive_real(z: GaussRat) -> Fraction | None:
    return z.re if z.im == 0 and z.re > 0 else None


def witnesses7(c1: Config7, c2: Config7) -> list[Witness7]:
    """Every scaling or inversion carrying c1 onto c2."""
    if c1.n != c2.n:
        raise ConfigError("configurations have different sizes")
    target = c2.full_set()
    z = c1.pairs[0]
    found = []
    for w in sorted(target, key=GaussRat.sort_key):
        for inverted, cand in ((False, w / z), (True, w * z)):
            lam = _positive_real(cand)
            if lam is None:
                continue
            wit = Witness7(lam, inverted)
            if frozenset(wit.apply(x) for x in c1.full_set()) == target and wit not in found:
                found.append(wit)
    return found


def conjugate7(c1: Config7, c2: Config7) -> tuple[bool, Witness7 | None]:
    """Decide conjugacy; among witnesses prefer the smallest max(l, 1/l), then non-inverted."""
    wits = witnesses7(c1, c2)
    if not wits:
        return False, None
    best = min(wits, key=lambda w: (max(w.lam, 1 / w.lam), w.inverted, w.lam))
    return True, best


def invert_witness7(w: Witness7) -> Witness7:
    return Witness7(w.lam, True) if w.inverted else Witness7(1 / w.lam, False)


def canonical7(c: Config7) -> Config7:
    """Least configuration over both orientations, with the least point scaled to Im = 1."""
    candidates = []
    for orient in (c, Config7.of(z.inv() for z in c.pairs)):
        anchor = min(orient.pairs, key=GaussRat.sort_key)
        candidates.append(Config7.of(z * (1 / anchor.im) for z in orient.pairs))
    return min(candidates, key=lambda k: [z.sort_key() for z in k.pairs])


# ---------------------------------------------------------------------------
# Family (8): sets closed under conjugation, modulo PGL2(R)
# ---------------------------------------------------------------------------

INF = "inf"
PPoint = tuple[GaussRat, GaussRat]


def _proj(z) -> PPoint:
    """[z:1] for finite z, [1:0] for infinity, normalized."""
    if isinstance(z, str) and z.strip() == INF:
        return (ONE, ZERO)
    if isinstance(z, tuple):
        a, b = GaussRat.coerce(z[0]), GaussRat.coerce(z[1])
        if b.is_zero():
            if a.is_zero():
                raise ConfigError("[0:0] is not a point")
            return (ONE, ZERO)
        return (a / b, ONE)
    w = parse_gauss(z) if isinstance(z, str) else GaussRat.coerce(z)
    return (w, ONE)


def _conj_pt(p: PPoint) -> PPoint:
    return (p[0].conj(), p[1].conj())


def _is_real_pt(p: PPoint) -> bool:
    return p[0].is_real() and p[1].is_real()


def format_ppoint(p: PPoint) -> str:
    return INF if p[1].is_zero() else str(p[0])


@dataclass(frozen=True)
class Config8:
    """Real points (rationals or ``inf``) and upper-half representatives of non-real pairs."""

    real: tuple[PPoint, ...]
    pairs: tuple[GaussRat, ...]

    @staticmethod
    def of(real: Iterable = (), pairs: Iterable = ()) -> "Config8":
        reals = [_proj(r) for r in real]
        for r in reals:
            if not _is_real_pt(r):
                raise ConfigError("real points must have rational coordinates")
        ups = [_upper(parse_gauss(z) if isinstance(z, str) else GaussRat.coerce(z)) for z in pairs]
        if len(set(reals)) != len(reals) or len(set(ups)) != len(ups):
            raise ConfigError("points must be distinct")
        c = Config8(tuple(sorted(reals, key=_pt_key)), tuple(sorted(ups, key=GaussRat.sort_key)))
        if c.size < 4 or c.size % 2:
            raise ConfigError("a configuration needs an even number 2n >= 4 of points")
        return c

    @staticmethod
    def from_points(points: Iterable[PPoint]) -> "Config8":
        pts = [_proj(p) for p in points]
        reals = [p for p in pts if _is_real_pt(p)]
        ups = sorted({_upper(p[0]) for p in pts if not _is_real_pt(p)}, key=GaussRat.sort_key)
        return Config8.of(reals, ups)

    @property
    def size(self) -> int:
        return len(self.real) + 2 * len(self.pairs)

    @property
    def n(self) -> int:
        return self.size // 2

    def full_set(self) -> list[PPoint]:
        pts = list(self.real)
        for z in self.pairs:
            pts.append((z, ONE))
            pts.append((z.conj(), ONE))
        return pts

    def to_json(self) -> dict:
        return {
            "real": [format_ppoint(p) for p in self.real],
            "pairs": [{"re": format_rat(z.re), "im": format_rat(z.im)} for z in self.pairs],
        }


def _pt_key(p: PPoint):
    return (p[1].is_zero(), p[0].sort_key())


Mat = tuple[tuple[GaussRat, GaussRat], tuple[GaussRat, GaussRat]]


def mat_apply(m: Mat, p: PPoint) -> PPoint:
    a = m[0][0] * p[0] + m[0][1] * p[1]
    b = m[1][0] * p[0] + m[1][1] * p[1]
    return _proj((a, b))


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )


def mat_det(m: Mat) -> GaussRat:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _adj(m: Mat) -> Mat:
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def _frame(p1: PPoint, p2: PPoint, p3: PPoint) -> Mat | None:
    """Matrix sending [1:0], [1:1], [0:1] to p1, p2, p3."""
    det = p1[0] * p3[1] - p3[0] * p1[1]
    if det.is_zero():
        return None
    l1 = (p2[0] * p3[1] - p3[0] * p2[1]) / det
    l3 = (p1[0] * p2[1] - p2[0] * p1[1]) / det
    if l1.is_zero() or l3.is_zero():
        return None
    return ((l1 * p1[0], l3 * p3[0]), (l1 * p1[1], l3 * p3[1]))


def normalize_mat(m: Mat) -> Mat | None:
    """Scale so the first nonzero entry is 1; None if the result is not real."""
    flat = [m[0][0], m[0][1], m[1][0], m[1][1]]
    lead = next(x for x in flat if not x.is_zero())
    s = lead.inv()
    out = tuple(tuple(x * s for x in row) for row in m)
    if not all(x.is_real() for row in out for x in row):
        return None
    return out


def witnesses8(c1: Config8, c2: Config8, first_only: bool = False) -> list[Mat]:
    if c1.size != c2.size:
        raise ConfigError("configurations have different sizes")
    src = c1.full_set()
    dst = c2.full_set()
    if len(c1.real) != len(c2.real):
        return []
    dst_set = frozenset(dst)
    s = (src[0], src[1], src[2])
    fz = _frame(*s)
    if fz is None:
        raise ConfigError("degenerate source triple")
    inv_fz = _adj(fz)
    # a real map keeps real points real and conjugate pairs paired
    shape = [(_is_real_pt(p), next((j for j in range(k) if _conj_pt(s[j]) == p), None)) for k, p in enumerate(s)]
    found: list[Mat] = []
    for t in itertools.permutations(dst, 3):
        if any(_is_real_pt(t[k]) != r or (j is not None and _conj_pt(t[j]) != t[k]) for k, (r, j) in enumerate(shape)):
            continue
        fw = _frame(*t)
        if fw is None:
            continue
        m = normalize_mat(mat_mul(fw, inv_fz))
        if m is None or m in found:
            continue
        if all(mat_apply(m, p) in dst_set for p in src[3:]):
            found.append(m)
            if first_only:
                break
    return found


def conjugate8(c1: Config8, c2: Config8) -> tuple[bool, Mat | None]:
    wits = witnesses8(c1, c2, first_only=False)
    if not wits:
        return False, None
    return True, min(wits, key=_mat_key)


def _mat_key(m: Mat):
    # simplest witness first: smallest total height, then lexicographic
    flat = [x.re for row in m for x in row]
    return (sum(abs(x.numerator) + x.denominator for x in flat), flat)


def apply8(m: Mat, c: Config8) -> Config8:
    return Config8.from_points(mat_apply(m, p) for p in c.full_set())


def mat_to_json(m: Mat) -> list[list[str]]:
    return [[format_rat(x.re) for x in row] for row in m]


def moebius_equal(a: Mat, b: Mat) -> bool:
    return normalize_mat(a) == normalize_mat(b)


# ---------------------------------------------------------------------------
# Random corpora (seeded, for property checks and planted pairs)
# ---------------------------------------------------------------------------

def _rand_rat(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_config7(rng: random.Random, n: int | None = None) -> Config7:
    n = n or rng.randint(1, 3)
    pts: set[GaussRat] = set()
    while len(pts) < n:
        pts.add(GaussRat(_rand_rat(rng), abs(_rand_rat(rng, 1, 5))))
    return Config7.of(pts)


def random_witness7(rng: random.Random) -> Witness7:
    return Witness7(Fraction(rng.randint(1, 9), rng.randint(1, 9)), rng.random() < 0.5)


def random_config8(rng: random.Random, n: int | None = None) -> Config8:
    n = n or rng.randint(2, 3)
    npairs = rng.randint(0, n)
    nreal = 2 * n - 2 * npairs
    reals: set[Fraction] = set()
    while len(reals) < nreal:
        reals.add(_rand_rat(rng))
    ups: set[GaussRat] = set()
    while len(ups) < npairs:
        ups.add(GaussRat(_rand_rat(rng), abs(_rand_rat(rng, 1, 5))))
    return Config8.of(list(reals), list(ups))


def random_moebius(rng: random.Random) -> Mat:
    while True:
        m = tuple(tuple(GaussRat(rng.randint(-4, 4)) for _ in range(2)) for _ in range(2))
        if not mat_det(m).is_zero():
            return m
