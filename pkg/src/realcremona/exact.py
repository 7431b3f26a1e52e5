"""Exact arithmetic over Q and Q(i), and rewrite systems for symbolic parameters.

Rationals are :class:`fractions.Fraction`. Gaussian rationals are pairs of
fractions. Continuous group parameters (a point of SO2, a scalar of R*) are
real symbols whose algebraic relations are imposed by a small rewrite system.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Fraction
Number = Union[int, Fraction, "GaussRat"]


class GaussRat:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def coerce(x: Number) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GaussRat")

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: Number) -> "GaussRat":
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other: Number) -> "GaussRat":
        o = GaussRat.coerce(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Number) -> "GaussRat":
        return GaussRat.coerce(other) - self

    def __mul__(self, other: Number) -> "GaussRat":
        o = GaussRat.coerce(other)
        if not o.im:
            return GaussRat(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussRat(self.re * o.re, self.re * o.im)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """z * conj(z) as a rational."""
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def inv(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other: Number) -> "GaussRat":
        return self * GaussRat.coerce(other).inv()

    def __rtruediv__(self, other: Number) -> "GaussRat":
        return GaussRat.coerce(other) * self.inv()

    def __pow__(self, k: int) -> "GaussRat":
        if k < 0:
            return self.inv() ** (-k)
        result = GaussRat(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison, hashing, display ----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __repr__(self) -> str:
        return f"GaussRat({format_gauss(self)!r})"

    def __str__(self) -> str:
        return format_gauss(self)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def conj(z: GaussRat) -> GaussRat:
    return z.conj()


def inv(z: GaussRat) -> GaussRat:
    return z.inv()


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussRat) -> str:
    """Render in the literal syntax accepted by :func:`parse_gauss`."""
    if z.im == 0:
        return format_rat(z.re)
    im = format_rat(abs(z.im))
    imag = "i" if abs(z.im) == 1 else f"{im}*i"
    if z.re == 0:
        return imag if z.im > 0 else "-" + imag
    sign = "+" if z.im > 0 else "-"
    return f"{format_rat(z.re)}{sign}{imag}"


_RAT = r"\d+(?:/\d+)?"
_TERM_RE = re.compile(rf"([+-]?)(?:({_RAT})(\*?i)?|(i))")


def parse_rat(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(rf"[+-]?{_RAT}", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def parse_gauss(text: str) -> GaussRat:
    """Parse integers, ``p/q`` and ``a+b*i`` (also ``i``, ``-i``, ``b*i``)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty literal")
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed literal: {text!r}")
        if seen and not m.group(1):
            raise ValueError(f"malformed literal: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(4):
            im_part += sign
        elif m.group(3):
            im_part += sign * Fraction(m.group(2))
        else:
            re_part += sign * Fraction(m.group(2))
        seen += 1
        pos = m.end()
    if seen > 2:
        raise ValueError(f"malformed literal: {text!r}")
    return GaussRat(re_part, im_part)


def sqrt_rat(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_gauss(z: GaussRat) -> GaussRat | None:
    """A square root of z inside Q(i), or None if there is none."""
    if z.is_zero():
        return ZERO
    modulus = sqrt_rat(z.norm())
    if modulus is None:
        return None
    x = sqrt_rat((z.re + modulus) / 2)
    if x is None:
        return None
    if x != 0:
        y = z.im / (2 * x)
    else:
        y = sqrt_rat((modulus - z.re) / 2)
        if y is None:
            return None
    w = GaussRat(x, y)
    return w if w * w == z else None


# ---------------------------------------------------------------------------
# Parameter rewrite systems
# ---------------------------------------------------------------------------

Monomial = tuple[int, ...]


class UndeclaredSymbolError(KeyError):
    pass


class ParamSystem:
    """Real parameter symbols with monomial rewrite rules.

    Two rule shapes are supported: a pure power ``x^k -> rhs`` where rhs has
    x-degree below k, and a product ``x*y -> c`` with c a constant. Each rule
    strictly lowers the graded-lex order on the declared symbols, so repeated
    rewriting terminates.
    """

    def __init__(self, names: Iterable[str], rules: Iterable[tuple[Mapping[str, int], Mapping[Monomial, Number]]] = ()):
        self.names: tuple[str, ...] = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate parameter names")
        self._index = {n: k for k, n in enumerate(self.names)}
        parsed = []
        for lhs, rhs in rules:
            for n in lhs:
                if n not in self._index:
                    raise UndeclaredSymbolError(n)
            lhs_exp = tuple(lhs.get(n, 0) for n in self.names)
            rhs_terms = {tuple(m): GaussRat.coerce(c) for m, c in rhs.items() if not GaussRat.coerce(c).is_zero()}
            for m in rhs_terms:
                if len(m) != len(self.names):
                    raise ValueError("rule right-hand side has wrong arity")
                if _grlex_key(m) >= _grlex_key(lhs_exp):
                    raise ValueError("rule does not decrease the monomial order")
            support = [k for k, e in enumerate(lhs_exp) if e]
            pure_power = len(support) == 1 and lhs_exp[support[0]] >= 2
            unit_product = len(support) == 2 and all(lhs_exp[k] == 1 for k in support) and all(
                sum(m) == 0 for m in rhs_terms
            )
            if not (pure_power or unit_product):
                raise ValueError("unsupported rule shape")
            parsed.append((lhs_exp, rhs_terms))
        self.rules: tuple[tuple[Monomial, dict[Monomial, GaussRat]], ...] = tuple(parsed)
        self._cache: dict[Monomial, dict[Monomial, GaussRat]] = {}

    @staticmethod
    def circle(re_name: str, im_name: str) -> "ParamSystem":
        """Symbols (im, re) subject to im^2 = 1 - re^2."""
        return ParamSystem(
            [im_name, re_name],
            [({im_name: 2}, {(0, 0): 1, (0, 2): -1})],
        )

    @staticmethod
    def unit_product(name: str, inv_name: str) -> "ParamSystem":
        """Symbols (name, inv_name) subject to name*inv_name = 1."""
        return ParamSystem([name, inv_name], [({name: 1, inv_name: 1}, {(0, 0): 1})])

    @staticmethod
    def free(*names: str) -> "ParamSystem":
        return ParamSystem(names, [])

    def __or__(self, other: "ParamSystem") -> "ParamSystem":
        # symbols constrained by rules keep their relative order; free ones follow
        first, second = (other, self) if other.rules and not self.rules else (self, other)
        ruled = [n for sys in (first, second) if sys.rules for n in sys.names]
        names = list(dict.fromkeys(ruled + list(first.names) + list(second.names)))
        rules = []
        for sys in (self, other):
            for lhs, rhs in sys.rules:
                lhs_d = {sys.names[k]: e for k, e in enumerate(lhs) if e}
                rhs_d = {}
                for m, c in rhs.items():
                    d = {sys.names[k]: e for k, e in enumerate(m) if e}
                    rhs_d[tuple(d.get(n, 0) for n in names)] = c
                key = (tuple(sorted(lhs_d.items())), tuple(sorted(rhs_d.items(), key=lambda t: t[0])))
                if key not in [r[0] for r in rules]:
                    rules.append((key, lhs_d, rhs_d))
        return ParamSystem(names, [(l, r) for _, l, r in rules])

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamSystem) and self.names == other.names and self.rules == other.rules

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ParamSystem({list(self.names)}, {len(self.rules)} rules)"

    def reduce_monomial(self, m: Monomial) -> dict[Monomial, GaussRat]:
        """Normal form of a single parameter monomial as a polynomial."""
        if m in self._cache:
            return self._cache[m]
        for lhs, rhs in self.rules:
            if all(a >= b for a, b in zip(m, lhs)):
                rest = tuple(a - b for a, b in zip(m, lhs))
                out: dict[Monomial, GaussRat] = {}
                for rm, rc in rhs.items():
                    prod = tuple(a + b for a, b in zip(rest, rm))
                    for nm, nc in self.reduce_monomial(prod).items():
                        v = out.get(nm, ZERO) + rc * nc
                        if v.is_zero():
                            out.pop(nm, None)
                        else:
                            out[nm] = v
                self._cache[m] = out
                return out
        out = {m: ONE}
        self._cache[m] = out
        return out

    def reduce(self, terms: Mapping[Monomial, GaussRat]) -> dict[Monomial, GaussRat]:
        out: dict[Monomial, GaussRat] = {}
        for m, c in terms.items():
            for nm, nc in self.reduce_monomial(m).items():
                v = out.get(nm, ZERO) + c * nc
                if v.is_zero():
                    out.pop(nm, None)
                else:
                    out[nm] = v
        return out


def _grlex_key(m: Monomial) -> tuple:
    return (sum(m), m)


def param_reduce(expr, sys: ParamSystem):
    """Normal form of a polynomial in parameters (a MultiPoly without blocks)."""
    from .poly import MultiPoly

    if not isinstance(expr, MultiPoly):
        raise TypeError("param_reduce expects a MultiPoly")
    for n in expr.ring.params.names:
        if n not in sys.names:
            raise UndeclaredSymbolError(n)
    return expr.reduce_params(sys)
