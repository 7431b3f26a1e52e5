"""Multigraded polynomials over Q(i) in block-structured variables.

A ring is a :class:`VarBlocks`: ordered groups of projective coordinates plus
an optional :class:`ParamSystem` of real symbols. Exponent vectors list the
block variables first and the parameters last. Every polynomial is kept in
parameter normal form, so ``is_zero`` is an exact identity test.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from .exact import ONE, ZERO, GaussRat, Number, ParamSystem, UndeclaredSymbolError, parse_gauss, format_gauss

Exponent = tuple[int, ...]


class NotMultihomogeneous(ValueError):
    pass


class VarBlocks:
    """Ordered blocks of variable names with an attached parameter system."""

    __slots__ = ("blocks", "params", "names", "_index", "_block_of", "_hash")

    def __init__(self, blocks: Sequence[Sequence[str]], params: ParamSystem | None = None):
        self.blocks: tuple[tuple[str, ...], ...] = tuple(tuple(b) for b in blocks)
        self.params: ParamSystem = params if params is not None else ParamSystem.free()
        if any(len(b) == 0 for b in self.blocks):
            raise ValueError("empty variable block")
        names = [v for b in self.blocks for v in b] + list(self.params.names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique across blocks and parameters")
        self.names: tuple[str, ...] = tuple(names)
        self._index = {n: k for k, n in enumerate(names)}
        self._block_of = [k for k, b in enumerate(self.blocks) for _ in b]
        self._hash = hash((self.blocks, self.params.names))

    @property
    def nvars(self) -> int:
        return len(self._block_of)

    @property
    def nparams(self) -> int:
        return len(self.params.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UndeclaredSymbolError(name) from None

    def var(self, name: str) -> "MultiPoly":
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): ONE})

    def gens(self) -> list[list["MultiPoly"]]:
        return [[self.var(v) for v in b] for b in self.blocks]

    def const(self, c: Number) -> "MultiPoly":
        return MultiPoly(self, {self.zero_exp(): GaussRat.coerce(c)})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def zero_exp(self) -> Exponent:
        return (0,) * len(self.names)

    def with_params(self, params: ParamSystem) -> "VarBlocks":
        merged = self.params | params
        if merged == self.params:
            return self
        return VarBlocks(self.blocks, merged)

    def param_ring(self) -> "VarBlocks":
        """The ring of parameters alone (no block variables)."""
        return VarBlocks((), self.params)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarBlocks) and self.blocks == other.blocks and self.params == other.params

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VarBlocks({[list(b) for b in self.blocks]}, params={list(self.params.names)})"


def _grlex_key(ring: VarBlocks, e: Exponent) -> tuple:
    v = e[: ring.nvars]
    return (sum(v), v, sum(e[ring.nvars:]), e[ring.nvars:])


class MultiPoly:
    """A polynomial in a :class:`VarBlocks` ring with coefficients in Q(i).

    Terms map exponent vectors to nonzero coefficients. Parameter monomials are
    rewritten to normal form on construction.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VarBlocks, terms: Mapping[Exponent, Number], _reduced: bool = False):
        self.ring = ring
        n = len(ring.names)
        clean: dict[Exponent, GaussRat] = {}
        if ring.params.rules and not _reduced:
            nv = ring.nvars
            for e, c in terms.items():
                c = GaussRat.coerce(c)
                if c.is_zero():
                    continue
                head = e[:nv]
                for pm, pc in ring.params.reduce_monomial(e[nv:]).items():
                    key = head + pm
                    val = clean.get(key, ZERO) + c * pc
                    if val.is_zero():
                        clean.pop(key, None)
                    else:
                        clean[key] = val
        else:
            for e, c in terms.items():
                c = GaussRat.coerce(c)
                if not c.is_zero():
                    if len(e) != n:
                        raise ValueError("exponent vector has wrong length")
                    clean[tuple(e)] = c
        self.terms: dict[Exponent, GaussRat] = clean
        self._hash = None

    # -- basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(self.ring.zero_exp(), ZERO)

    def has_params(self) -> bool:
        nv = self.ring.nvars
        return any(any(e[nv:]) for e in self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, GaussRat]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(self.ring, t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, GaussRat]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: _grlex_key(self.ring, t[0]))

    def multidegree(self) -> tuple[int, ...]:
        """Per-block total degree; raises if the polynomial is not multihomogeneous."""
        if not self.terms:
            raise ValueError("multidegree of the zero polynomial")
        degs = {self._block_degrees(e) for e in self.terms}
        if len(degs) != 1:
            raise NotMultihomogeneous("not multihomogeneous")
        return degs.pop()

    def is_multihomogeneous(self) -> bool:
        try:
            self.multidegree()
        except NotMultihomogeneous:
            return False
        return True

    def _block_degrees(self, e: Exponent) -> tuple[int, ...]:
        out = [0] * len(self.ring.blocks)
        for k, b in enumerate(self.ring._block_of):
            out[b] += e[k]
        return tuple(out)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for k, d in enumerate(e):
                if d:
                    used.add(self.ring.names[k])
        return used

    # -- arithmetic --------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring == self.ring:
                return other
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return self.ring.const(other)

    def __add__(self, other) -> "MultiPoly":
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, ZERO) + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return MultiPoly(self.ring, out, _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()}, _reduced=True)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = GaussRat.coerce(other)
            return MultiPoly(self.ring, {e: v * c for e, v in self.terms.items()}, _reduced=True)
        o = self._coerce(other)
        out: dict[Exponent, GaussRat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, ZERO) + c1 * c2
                if v.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = v
        return MultiPoly(self.ring, out, _reduced=not self.ring.params.rules)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, GaussRat)) or hasattr(other, "denominator"):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- structural maps -----------------------------------------------------------
    def conj_coeffs(self) -> "MultiPoly":
        """Replace every coefficient by its complex conjugate (parameters are real)."""
        return MultiPoly(self.ring, {e: c.conj() for e, c in self.terms.items()}, _reduced=True)

    def lift(self, ring: VarBlocks) -> "MultiPoly":
        """Re-express in a ring whose names contain this ring's names."""
        if ring == self.ring:
            return self
        pos = [ring.index(n) for n in self.ring.names]
        out = {}
        width = len(ring.names)
        for e, c in self.terms.items():
            ne = [0] * width
            for k, d in enumerate(e):
                if d:
                    ne[pos[k]] = d
            out[tuple(ne)] = c
        return MultiPoly(ring, out)

    def reduce_params(self, sys: ParamSystem) -> "MultiPoly":
        ring = self.ring.with_params(sys)
        return self.lift(ring)

    def substitute(self, images: Mapping[str, "MultiPoly"], target: VarBlocks | None = None) -> "MultiPoly":
        """Replace each block variable by a polynomial; parameters are carried along.

        All images must live in one ring. The result lives in that ring extended
        by this polynomial's parameters (or in ``target`` if given).
        """
        block_vars = self.ring.names[: self.ring.nvars]
        missing = [v for v in block_vars if v not in images and v in self.variables()]
        if missing:
            raise KeyError(f"missing image for variables {missing}")
        rings = {p.ring for p in images.values()}
        if target is None:
            if len(rings) > 1:
                raise ValueError("images live in different rings")
            base = rings.pop() if rings else VarBlocks((), None)
            target = base.with_params(self.ring.params)
        imgs = {v: p.lift(target) for v, p in images.items() if v in block_vars}
        nv = self.ring.nvars
        param_pos = [target.index(n) for n in self.ring.params.names]
        power_cache: dict[tuple[str, int], MultiPoly] = {}

        def power(v: str, d: int) -> MultiPoly:
            key = (v, d)
            if key not in power_cache:
                power_cache[key] = imgs[v] if d == 1 else power(v, d - 1) * imgs[v]
            return power_cache[key]

        acc: dict[Exponent, GaussRat] = {}
        width = len(target.names)
        for e, c in self.terms.items():
            pe = [0] * width
            for k, d in enumerate(e[nv:]):
                if d:
                    pe[param_pos[k]] = d
            term = MultiPoly(target, {tuple(pe): c})
            for k in range(nv):
                if e[k]:
                    term = term * power(block_vars[k], e[k])
            for te, tc in term.terms.items():
                val = acc.get(te, ZERO) + tc
                if val.is_zero():
                    acc.pop(te, None)
                else:
                    acc[te] = val
        return MultiPoly(target, acc, _reduced=True)

    def evaluate(self, values: Mapping[str, Number]) -> "MultiPoly":
        """Evaluate block variables at numbers; the result lives in the parameter ring."""
        pring = self.ring.param_ring()
        images = {v: pring.const(values[v]) for v in self.ring.names[: self.ring.nvars] if v in values}
        return self.substitute(images, target=pring)

    def specialize(self, values: Mapping[str, Number]) -> "MultiPoly":
        """Substitute numbers for every parameter; the result has no parameters."""
        missing = [n for n in self.ring.params.names if n not in values]
        if missing:
            raise KeyError(f"missing values for parameters {missing}")
        ring = VarBlocks(self.ring.blocks)
        nv = self.ring.nvars
        vals = [GaussRat.coerce(values[n]) for n in self.ring.params.names]
        out: dict[Exponent, GaussRat] = {}
        for e, c in self.terms.items():
            for k, d in enumerate(e[nv:]):
                if d:
                    c = c * vals[k] ** d
            key = e[:nv]
            v = out.get(key, ZERO) + c
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
        return MultiPoly(ring, out, _reduced=True)

    def content_exponent(self) -> Exponent:
        """Largest block-variable monomial dividing every term."""
        nv = self.ring.nvars
        if not self.terms:
            return (0,) * nv
        return tuple(min(e[k] for e in self.terms) for k in range(nv))

    def divide_monomial(self, m: Sequence[int]) -> "MultiPoly":
        nv = self.ring.nvars
        out = {}
        for e, c in self.terms.items():
            ne = tuple(e[k] - m[k] for k in range(nv)) + e[nv:]
            if any(d < 0 for d in ne):
                raise ValueError("monomial does not divide polynomial")
            out[ne] = c
        return MultiPoly(self.ring, out, _reduced=True)

    def coefficient_of(self, var_exp: Sequence[int]) -> "MultiPoly":
        """Coefficient (a parameter polynomial) of a block-variable monomial."""
        nv = self.ring.nvars
        pring = self.ring.param_ring()
        out = {e[nv:]: c for e, c in self.terms.items() if tuple(e[:nv]) == tuple(var_exp)}
        return MultiPoly(pring, out, _reduced=True)

    # -- display ---------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if d == 1 else f"{n}^{d}" for n, d in zip(self.ring.names, e) if d
            )
            cs = format_gauss(c)
            if not mono:
                piece = cs if c.is_real() or c.re == 0 else f"({cs})"
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = "-" + mono
            elif c.is_real() or c.re == 0:
                piece = f"{cs}*{mono}"
            else:
                piece = f"({cs})*{mono}"
            pieces.append(piece)
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def normalize_tuple(t: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Canonical representative of a projective tuple up to monomial and scalar content.

    The common block-variable monomial is removed, then the tuple is scaled so the
    graded-lex leading coefficient of its first nonzero entry equals 1.
    """
    nonzero = [p for p in t if not p.is_zero()]
    if not nonzero:
        raise ValueError("all-zero tuple")
    ring = nonzero[0].ring
    nv = ring.nvars
    contents = [p.content_exponent() for p in nonzero]
    common = tuple(min(c[k] for c in contents) for k in range(nv))
    if any(common):
        t = [p.divide_monomial(common) for p in t]
    lead = next(p for p in t if not p.is_zero()).leading_term()[1]
    scale = lead.inv()
    return [p * scale for p in t]


def poly_tuple_str(t: Sequence[MultiPoly]) -> str:
    return "[" + " : ".join(str(p) for p in t) + "]"


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, text: str, ring: VarBlocks):
        self.ring = ring
        self.tokens: list[tuple[str, str]] = []
        for m in _TOKEN_RE.finditer(text):
            if m.group(1):
                self.tokens.append(("num", m.group(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2)))
            elif m.group(3):
                self.tokens.append(("op", m.group(3)))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"parse error: expected {value!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek()[0] is not None:
            raise ValueError(f"parse error: trailing token {self.peek()[1]!r}")
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.peek() == ("op", "*") or self.peek()[0] in ("num", "name") or self.peek() == ("op", "("):
            if self.peek() == ("op", "*"):
                self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.ring.const(parse_gauss(val))
        if kind == "name":
            self.take()
            if val == "i" and "i" not in self.ring.names:
                return self.ring.const(GaussRat(0, 1))
            return self.ring.var(val)
        if val == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ValueError(f"parse error: unexpected {val!r}")


def parse_poly(text: str, ring: VarBlocks) -> MultiPoly:
    """Parse ``+ - * ^`` expressions over declared names; ``i`` is the imaginary unit."""
    return _Parser(text, ring).parse()


def polys(ring: VarBlocks, *texts: str) -> list[MultiPoly]:
    return [parse_poly(t, ring) for t in texts]
