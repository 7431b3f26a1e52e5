"""Independent sympy evaluation of maps at points, used to cross-check composition."""
from __future__ import annotations

import sympy

from realcremona.exact import GaussRat
from realcremona.maps import ModelPoint, RationalMap


def _sym(z: GaussRat):
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(z.im.numerator, z.im.denominator)


def _back(v) -> GaussRat:
    v = sympy.nsimplify(sympy.expand(v))
    re, im = v.as_real_imag()
    from fractions import Fraction

    return GaussRat(Fraction(int(sympy.fraction(re)[0]), int(sympy.fraction(re)[1])),
                    Fraction(int(sympy.fraction(im)[0]), int(sympy.fraction(im)[1])))


def evaluate(f: RationalMap, pt: ModelPoint) -> ModelPoint | None:
    """Image of a point through sympy, trying each alternative; None where undefined."""
    names = f.source.ring.names[: f.source.ring.nvars]
    flat = [z for block in pt.coords for z in block]
    conj = getattr(f, "conjugates", False)
    env = {sympy.Symbol(n): _sym(z.conj() if conj else z) for n, z in zip(names, flat)}
    env[sympy.Symbol("i")] = sympy.I
    coords = []
    for block in f.components:
        for alt in block:
            vals = [sympy.expand(sympy.sympify(str(p).replace("^", "**"), locals={"i": sympy.I}).subs(env)) for p in alt]
            if any(v != 0 for v in vals):
                coords.append([_back(v) for v in vals])
                break
        else:
            return None
    return ModelPoint(coords)
