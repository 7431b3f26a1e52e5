"""Images of family-(7) elements in the direct sum of copies of Z/2 indexed by R.

A non-real point [a+bi : 1] of P1 has invariant nu = a/|b|, constant on the
rays l*z, l*conj(z) and under z -> l/z. An element of a family-(7) group
contributes the generator e_nu of each blown-up pair when it exchanges the
two special sections, and nothing otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Iterator, Sequence

from .exact import GaussRat, format_rat


class RealPointError(ValueError):
    pass


def nu(pt) -> Fraction:
    """nu of a point given as z or as a pair (z0, z1) standing for [z0 : z1]."""
    if isinstance(pt, tuple):
        z0, z1 = GaussRat.coerce(pt[0]), GaussRat.coerce(pt[1])
        if z1.is_zero():
            raise RealPointError("[1:0] is a real point")
        z = z0 / z1
    else:
        z = GaussRat.coerce(pt)
    if z.is_real():
        raise RealPointError(f"{z} is a real point")
    return z.re / abs(z.im)


def nu_class_equal(p, q) -> bool:
    return nu(p) == nu(q)


def ray_witness(p: GaussRat, q: GaussRat) -> Fraction | None:
    """A positive l with l*p in {q, conj(q)}, found by matching coordinates."""
    p, q = GaussRat.coerce(p), GaussRat.coerce(q)
    if p.is_real() or q.is_real():
        raise RealPointError("both points must be non-real")
    for target in (q, q.conj()):
        lam = target.im / p.im
        if lam > 0 and p * lam == target:
            return lam
    return None


@dataclass(frozen=True)
class AbImage:
    """Finite support of an element of the direct sum; addition is symmetric difference."""

    support: frozenset[Fraction] = frozenset()

    @staticmethod
    def of(values: Iterable[Fraction]) -> "AbImage":
        out: frozenset[Fraction] = frozenset()
        for v in values:
            out = out ^ {Fraction(v)}
        return AbImage(out)

    def __add__(self, other: "AbImage") -> "AbImage":
        return AbImage(self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support

    def to_json(self) -> dict:
        return {"support": [format_rat(v) for v in sorted(self.support)]}


ZERO_IMAGE = AbImage()


def summed_generators(pairs: Sequence[GaussRat], cancel: bool = True) -> AbImage:
    """Sum of e_nu over the pairs, cancelling coincident values (or not)."""
    values = [nu(z) for z in pairs]
    if cancel:
        return AbImage.of(values)
    return AbImage(frozenset(values))


def calkin_wilf() -> Iterator[Fraction]:
    """0 followed by every positive rational once: 1, 1/2, 2, 1/3, 3/2, ..."""
    yield Fraction(0)
    x = Fraction(1)
    while True:
        yield x
        x = 1 / (2 * floor(x) - x + 1)


def countability_witness(nu_values: Iterable[Fraction]) -> Fraction:
    """First value of the fixed enumeration missing from the given finite set."""
    taken = set(nu_values)
    for x in calkin_wilf():
        if x not in taken:
            return x
    raise AssertionError("unreachable")


def config_nu_values(configs) -> set[Fraction]:
    return {nu(z) for c in configs for z in c.pairs}


def nu_multiset(config) -> list[Fraction]:
    return sorted(nu(z) for z in config.pairs)
