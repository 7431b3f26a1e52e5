"""Picard lattices of degree-6 del Pezzo models and the induced hexagon actions.

All models share the complex basis h, e1, e2, e3 of the blow-up of P2 in three
points. The six (-1)-classes, in cyclic order, are

    e1, h-e1-e2, e2, h-e2-e3, e3, h-e1-e3

and each model's named curves are matched to them by walking the incidence
cycle of the curves themselves.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .maps import (
    CurveOnModel,
    ModelPoint,
    RationalMap,
    apply_at,
    compose,
    image_of_curve,
    pullback_poly,
    vanishes_on_model_via,
)
from .univariate import BinaryForm, binary_gcd, roots_low_degree
from .exact import ONE, ZERO

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


class NotAnAutomorphism(ValueError):
    pass


class UnmatchedCurve(ValueError):
    pass


class NotDihedral(ValueError):
    pass


class OrbitEscape(RuntimeError):
    pass


BASIS = ("h", "e1", "e2", "e3")
FORM: Matrix = ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1))
K: Vector = (-3, 1, 1, 1)
HEXAGON_CLASSES: tuple[Vector, ...] = (
    (0, 1, 0, 0),
    (1, -1, -1, 0),
    (0, 0, 1, 0),
    (1, 0, -1, -1),
    (0, 0, 0, 1),
    (1, -1, 0, -1),
)
HEXAGON_LABELS = ("e1", "h-e1-e2", "e2", "h-e2-e3", "e3", "h-e1-e3")


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(a[i] * FORM[i][i] * b[i] for i in range(4))


def class_label(v: Sequence[int]) -> str:
    return HEXAGON_LABELS[HEXAGON_CLASSES.index(tuple(v))]


class PicLattice:
    """Rank-4 lattice with the hexagon of (-1)-classes attached to a model's curves."""

    def __init__(self, model):
        if len(model.hexagon) != 6:
            raise ValueError(f"{model.id} is not a degree-6 model")
        self.model = model
        self.rank = 4
        self.basis = BASIS
        self.form = FORM
        self.K = K
        self.cycle: tuple[str, ...] = hexagon_cycle(model)
        self.classes: dict[str, Vector] = {c: HEXAGON_CLASSES[k] for k, c in enumerate(self.cycle)}
        self.position: dict[str, int] = {c: k for k, c in enumerate(self.cycle)}

    def check(self) -> bool:
        """Self-intersections, adjacency with the model's incidences, signature."""
        for c, v in self.classes.items():
            if dot(v, v) != -1 or dot(v, self.K) != -1:
                return False
        for a in self.cycle:
            for b in self.cycle:
                if a == b:
                    continue
                if dot(self.classes[a], self.classes[b]) != (1 if curves_meet(self.model, a, b) else 0):
                    return False
        return True

    def action_from_permutation(self, perm: dict[str, str]) -> "LatticeAction":
        pos = {self.position[a]: self.position[b] for a, b in perm.items()}
        return LatticeAction(self, tuple(pos[k] for k in range(6)))

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "form": [list(r) for r in self.form],
            "K": list(self.K),
            "hexagon": [{"curve": c, "class": class_label(self.classes[c])} for c in self.cycle],
        }


class LatticeAction:
    """A hexagon symmetry (perm[i] = image position of curve i) with its matrix."""

    def __init__(self, lattice: PicLattice, perm: Sequence[int]):
        self.lattice = lattice
        self.perm: tuple[int, ...] = tuple(perm)
        if sorted(self.perm) != list(range(6)):
            raise ValueError("not a permutation of the six classes")
        self.matrix: Matrix = _solve_matrix(self.perm)

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(self.matrix[i][j] * v[j] for j in range(4)) for i in range(4))

    def valid(self) -> bool:
        cols = [self.apply(b) for b in _unit_vectors()]
        for i in range(4):
            for j in range(4):
                if dot(cols[i], cols[j]) != FORM[i][j]:
                    return False
        if self.apply(K) != K:
            return False
        return all(self.apply(HEXAGON_CLASSES[i]) == HEXAGON_CLASSES[self.perm[i]] for i in range(6))

    def __mul__(self, other: "LatticeAction") -> "LatticeAction":
        # (self * other)(i) = self(other(i))
        return LatticeAction(self.lattice, tuple(self.perm[other.perm[i]] for i in range(6)))

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeAction) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def curve_permutation(self) -> dict[str, str]:
        cyc = self.lattice.cycle
        return {cyc[i]: cyc[self.perm[i]] for i in range(6)}

    def to_json(self) -> dict:
        kind, order = classify_dihedral(self)
        return {
            "permutation": self.curve_permutation(),
            "matrix": [list(r) for r in self.matrix],
            "type": kind,
            "order": order,
            "invariant_rank": invariant_rank(self),
        }


def _unit_vectors() -> list[Vector]:
    return [tuple(1 if i == j else 0 for j in range(4)) for i in range(4)]


def _solve_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix with M(class_i) = class_perm(i) and M(K) = K, via h = (e1+e2+e3-K)/3."""
    img_e = [HEXAGON_CLASSES[perm[k]] for k in (0, 2, 4)]
    h_num = [img_e[0][i] + img_e[1][i] + img_e[2][i] - K[i] for i in range(4)]
    if any(x % 3 for x in h_num):
        raise ValueError("permutation does not induce an integral lattice map")
    img_h = tuple(x // 3 for x in h_num)
    cols = [img_h, *img_e]
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def identity_action(lattice: PicLattice) -> LatticeAction:
    return LatticeAction(lattice, range(6))


# ---------------------------------------------------------------------------
# Incidence of named curves
# ---------------------------------------------------------------------------

def _meet_form(model, a: str, b: str) -> BinaryForm:
    ca, cb = model.curve(a), model.curve(b)
    forms = [BinaryForm.from_poly(pullback_poly(eq, ca.param)) for eq in cb.equations]
    return binary_gcd(forms)


def curves_meet(model, a: str, b: str) -> bool:
    g = _meet_form(model, a, b)
    if g.is_zero():
        raise ValueError(f"curves {a} and {b} coincide")
    return g.deg > 0


def hexagon_cycle(model) -> tuple[str, ...]:
    """Cyclic order of the six curves from pairwise incidences."""
    names = list(model.hexagon)
    nbrs = {a: [b for b in names if b != a and curves_meet(model, a, b)] for a in names}
    if any(len(v) != 2 for v in nbrs.values()):
        raise ValueError(f"curves of {model.id} do not form a hexagon: {nbrs}")
    start = names[0]
    cycle = [start, min(nbrs[start], key=names.index)]
    while len(cycle) < 6:
        prev, cur = cycle[-2], cycle[-1]
        nxt = next(b for b in nbrs[cur] if b != prev)
        cycle.append(nxt)
    if cycle[0] not in nbrs[cycle[-1]]:
        raise ValueError("incidence graph is not a single 6-cycle")
    return tuple(cycle)


def intersection_points(model) -> list[ModelPoint]:
    """The six points where consecutive hexagon curves meet."""
    cyc = hexagon_cycle(model)
    pts = []
    for k in range(6):
        a, b = cyc[k], cyc[(k + 1) % 6]
        g = _meet_form(model, a, b)
        if g.deg != 1:
            raise ValueError(f"{a} and {b} do not meet transversally in one point")
        t = (ZERO, ONE) if g.inf_multiplicity else (ONE, roots_low_degree(g.uni)[0])
        param = model.curve(a).param
        vals = {"t0": t[0], "t1": t[1]}
        pts.append(ModelPoint([[p.evaluate(vals).constant_value() for p in block[0]] for block in param.components]))
    return pts


# ---------------------------------------------------------------------------
# Actions of maps
# ---------------------------------------------------------------------------

def curve_permutation(f: RationalMap, model) -> dict[str, str]:
    perm = {}
    for c in model.hexagon:
        img = image_of_curve(f, model.curve(c))
        if isinstance(img, ModelPoint) or img.name not in model.hexagon:
            raise UnmatchedCurve(f"image of {c} is not a hexagon curve")
        perm[c] = img.name
    if len(set(perm.values())) != 6:
        raise NotAnAutomorphism("curves are not permuted bijectively")
    return perm


def induced_action(f: RationalMap, inverse: RationalMap | None = None) -> LatticeAction:
    model = f.source
    if f.target.id != model.id:
        raise NotAnAutomorphism("source and target differ")
    if not all(vanishes_on_model_via(f, eq) for eq in model.equations):
        raise NotAnAutomorphism("map does not preserve the model")
    if inverse is not None:
        from .maps import is_identity

        if not is_identity(compose(f, inverse)):
            raise NotAnAutomorphism("supplied inverse does not invert the map")
    lattice = lattice_of(model)
    action = lattice.action_from_permutation(curve_permutation(f, model))
    if not action.valid():
        raise NotAnAutomorphism("curve permutation is not induced by a lattice isometry")
    return action


def sigma_action(model) -> LatticeAction:
    return induced_action(model.sigma)


_LATTICES: dict[str, PicLattice] = {}


def lattice_of(model) -> PicLattice:
    if model.id not in _LATTICES or _LATTICES[model.id].model is not model:
        _LATTICES[model.id] = PicLattice(model)
    return _LATTICES[model.id]


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                q = rows[r][col] / rows[rank][col]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def invariant_rank(a: LatticeAction) -> int:
    """Dimension of ker(M - I) over Q."""
    m = a.matrix
    rows = [[Fraction(m[i][j] - (1 if i == j else 0)) for j in range(4)] for i in range(4)]
    return 4 - _rank(rows)


def classify_dihedral(a: LatticeAction) -> tuple[str, int]:
    """('rotation', order) or ('reflection through vertices' | 'reflection through edges', 2)."""
    p = a.perm
    k = (p[0]) % 6
    if all(p[i] == (i + k) % 6 for i in range(6)):
        return "rotation", 6 // gcd(k, 6) if k else 1
    c = p[0] % 6
    if all(p[i] == (c - i) % 6 for i in range(6)):
        return ("reflection through vertices" if c % 2 == 0 else "reflection through edges"), 2
    raise NotDihedral(f"{p} is not a hexagon symmetry")


def fixed_curves(a: LatticeAction) -> list[str]:
    return [c for c, d in a.curve_permutation().items() if c == d]


def generated_group(actions: Iterable[LatticeAction]) -> set[LatticeAction]:
    acts = list(actions)
    if not acts:
        return set()
    ident = identity_action(acts[0].lattice)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in acts:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def finite_orbit_check(generators: Sequence[RationalMap], points: Sequence[ModelPoint], bound: int = 64) -> list[list[ModelPoint]]:
    """Close the point set under the generators and return its orbits."""
    pts = list(dict.fromkeys(points))
    index = {p: k for k, p in enumerate(pts)}
    edges: list[tuple[int, int]] = []
    k = 0
    while k < len(pts):
        for g in generators:
            q = apply_at(g, pts[k])
            if q not in index:
                if len(pts) >= bound:
                    raise OrbitEscape(f"orbit exceeds {bound} points")
                index[q] = len(pts)
                pts.append(q)
            edges.append((k, index[q]))
        k += 1
    parent = list(range(len(pts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[ModelPoint]] = {}
    for i, p in enumerate(pts):
        groups.setdefault(find(i), []).append(p)
    return [groups[r] for r in sorted(groups)]


def invariant_subsets_exist(generators: Sequence[RationalMap], points: Sequence[ModelPoint]) -> bool:
    """Whether some nonempty proper subset of the points is mapped into itself."""
    return len(finite_orbit_check(generators, points)) > 1


def picard_report(model) -> dict:
    lat = lattice_of(model)
    sig = sigma_action(model)
    return {
        "surface": model.id,
        "lattice": lat.to_json(),
        "sigma_action": sig.to_json(),
        "invariant_rank": invariant_rank(sig),
    }
