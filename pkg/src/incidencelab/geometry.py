"""Geometric objects with exact containment and intersection predicates.

Curves are polynomially parametrized (lines are the degree-1 case), surfaces
are affine 2-flats or bivariate parametrizations, varieties are generator
lists.  Intersection coordinates may be irrational and are then carried as
AlgebraicNumbers so that rich points deduplicate correctly across pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (
    AlgebraicNumber,
    MPoly,
    UPoly,
    apply_upoly,
    coord_cmp,
    coord_eq,
    coord_normalize,
    isolate_roots,
    mgcd,
    nullspace,
    resultant,
    solve_full,
    squarefree_part,
    ueval,
    udeg,
    uderiv,
    upoly,
    upoly_from_json,
    upoly_to_json,
    usub,
    uconst,
    utrim,
)

Coord = "Fraction | AlgebraicNumber"


class IdenticalCurvesError(ValueError):
    """Raised when an operation requires pairwise distinct curve images."""


class UnsupportedSurfaceError(ValueError):
    """Raised for surfaces given only implicitly with no parametrization."""


class Identical:
    """Sentinel outcome: the two inputs have the same image."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Identical"


IDENTICAL = Identical()


# ---------------------------------------------------------------------------
# curves


class ParamCurve:
    """Polynomially parametrized curve t -> (c_0(t), ..., c_{d-1}(t))."""

    __slots__ = ("ambient_dim", "components", "degree", "label")

    def __init__(self, components: list[UPoly], label: str, ambient_dim: int | None = None):
        comps = [utrim([Fraction(c) for c in comp]) for comp in components]
        d = ambient_dim if ambient_dim is not None else len(comps)
        if len(comps) != d:
            raise ValueError("component count must equal the ambient dimension")
        if all(udeg(c) < 1 for c in comps):
            raise ValueError("constant parametrization is not a curve")
        self.ambient_dim = d
        self.components = comps
        self.degree = max(udeg(c) for c in comps)
        self.label = label

    @staticmethod
    def line(base, direction, label: str) -> ParamCurve:
        base = [Fraction(x) for x in base]
        direction = [Fraction(x) for x in direction]
        if all(v == 0 for v in direction):
            raise ValueError("zero direction")
        comps = [utrim([b, v]) for b, v in zip(base, direction)]
        return ParamCurve(comps, label, ambient_dim=len(base))

    def is_line(self) -> bool:
        return self.degree == 1

    def point_at(self, t) -> tuple[Fraction, ...]:
        t = Fraction(t)
        return tuple(ueval(c, t) for c in self.components)

    def point_at_coord(self, t) -> tuple:
        """Point with a possibly algebraic parameter."""
        return tuple(apply_upoly(c, t) for c in self.components)

    def line_base_dir(self) -> tuple[list[Fraction], list[Fraction]]:
        if not self.is_line():
            raise ValueError("not a line")
        base = [c[0] if c else Fraction(0) for c in self.components]
        dirv = [c[1] if len(c) > 1 else Fraction(0) for c in self.components]
        return base, dirv

    def __repr__(self):
        return f"ParamCurve({self.label!r}, dim={self.ambient_dim}, deg={self.degree})"

    def to_json(self) -> dict:
        return {"label": self.label, "components": [upoly_to_json(c) for c in self.components]}

    @staticmethod
    def from_json(data: dict, ambient_dim: int) -> ParamCurve:
        comps = [upoly_from_json(c) for c in data["components"]]
        return ParamCurve(comps, data["label"], ambient_dim=ambient_dim)


def curve_contained_in(curve: ParamCurve, f: MPoly) -> bool:
    """Exact containment of the curve image in the zero set of f."""
    if f.nvars != curve.ambient_dim:
        raise ValueError("dimension mismatch")
    return not f.compose_upolys(curve.components)


def point_on_curve(point, curve: ParamCurve) -> bool:
    """Does the (rational) point lie on the image of the curve?"""
    pt = [Fraction(x) for x in point]
    if len(pt) != curve.ambient_dim:
        raise ValueError("dimension mismatch")
    j = next(i for i, c in enumerate(curve.components) if udeg(c) >= 1)
    probe = usub(curve.components[j], uconst(pt[j]))
    if not probe:
        candidates: list = []
    else:
        candidates = isolate_roots(probe)
    for t in candidates:
        ok = True
        for i, comp in enumerate(curve.components):
            diff = usub(comp, uconst(pt[i]))
            if not diff:
                continue
            r = t.as_rational()
            if r is not None:
                if ueval(diff, r) != 0:
                    ok = False
                    break
            elif t.sign_of(diff) != 0:
                ok = False
                break
        if ok:
            return True
    return False


def curves_identical(c1: ParamCurve, c2: ParamCurve) -> bool:
    """Image equality, decided by mutual containment of deg1*deg2 + 1 samples."""
    if c1.ambient_dim != c2.ambient_dim:
        raise ValueError("dimension mismatch")
    if c1.is_line() and c2.is_line():
        b1, v1 = c1.line_base_dir()
        b2, v2 = c2.line_base_dir()
        # parallel directions and base offset along the direction
        return _parallel(v1, v2) and _parallel(v1, [a - b for a, b in zip(b1, b2)], allow_zero=True)
    m = c1.degree * c2.degree + 1
    return all(point_on_curve(c1.point_at(t), c2) for t in range(m)) and \
        all(point_on_curve(c2.point_at(t), c1) for t in range(m))


def _parallel(u: list[Fraction], v: list[Fraction], allow_zero: bool = False) -> bool:
    if all(x == 0 for x in v):
        return allow_zero
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] - u[j] * v[i] != 0:
                return False
    return True


def _intersect_lines(c1: ParamCurve, c2: ParamCurve):
    """Exact line-line meet: None (disjoint), IDENTICAL, or a single point."""
    b1, v1 = c1.line_base_dir()
    b2, v2 = c2.line_base_dir()
    d = len(b1)
    if _parallel(v1, v2):
        if _parallel(v1, [a - b for a, b in zip(b1, b2)], allow_zero=True):
            return IDENTICAL
        return None
    # solve b1 + t v1 = b2 + s v2 from two independent rows, check the rest
    rows = []
    rhs = []
    for i in range(d):
        rows.append([v1[i], -v2[i]])
        rhs.append(b2[i] - b1[i])
    for i in range(d):
        for j in range(i + 1, d):
            det = rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1]
            if det == 0:
                continue
            t = (rhs[i] * rows[j][1] - rhs[j] * rows[i][1]) / det
            s = (rows[i][0] * rhs[j] - rows[j][0] * rhs[i]) / det
            for k in range(d):
                if b1[k] + t * v1[k] != b2[k] + s * v2[k]:
                    return None
            return tuple(b1[k] + t * v1[k] for k in range(d)), t, s
    return None


def intersect_curves(c1: ParamCurve, c2: ParamCurve):
    """All common image points of two curves, with exact coordinates.

    Returns IDENTICAL when the images coincide, else a list of
    (coords, t_param, s_param) triples.  Lines are solved linearly; general
    pairs eliminate one parameter with resultants and verify every candidate
    pair coordinatewise.
    """
    if c1.ambient_dim != c2.ambient_dim:
        raise ValueError("dimension mismatch")
    if c1.is_line() and c2.is_line():
        hit = _intersect_lines(c1, c2)
        if hit is IDENTICAL:
            return IDENTICAL
        return [hit] if hit else []
    if curves_identical(c1, c2):
        return IDENTICAL

    d = c1.ambient_dim
    # constraint polynomials c1_i(t) - c2_i(s) in Q[t, s]
    cons = []
    for i in range(d):
        p = MPoly(2, {(k, 0): c for k, c in enumerate(c1.components[i]) if c})
        q = MPoly(2, {(0, k): c for k, c in enumerate(c2.components[i]) if c})
        cons.append(p - q)

    t_poly = _eliminate(cons, keep=0)
    s_poly = _eliminate(cons, keep=1)
    if t_poly is None or s_poly is None:
        # every pairwise resultant vanished: heavy common structure that the
        # identity check did not catch; report no isolated intersections
        return []
    t_roots = isolate_roots(t_poly) if udeg(t_poly) >= 1 else []
    s_roots = isolate_roots(s_poly) if udeg(s_poly) >= 1 else []
    s_images = [(s, [apply_upoly(comp, s) for comp in c2.components]) for s in s_roots]
    points = []
    for t in t_roots:
        p1 = [apply_upoly(comp, t) for comp in c1.components]
        for s, p2 in s_images:
            if all(coord_eq(a, b) for a, b in zip(p1, p2)):
                points.append((tuple(coord_normalize(x) for x in p1),
                               coord_normalize(t), coord_normalize(s)))
                break
    # distinct t-roots can still map to the same image point (e.g. nodes)
    out = []
    for pt in points:
        if not any(all(coord_eq(a, b) for a, b in zip(pt[0], q[0])) for q in out):
            out.append(pt)
    return out


def _eliminate(cons: list[MPoly], keep: int) -> UPoly | None:
    """Gcd of the pairwise resultants eliminating the other parameter."""
    other = 1 - keep
    polys: list[UPoly] = []
    direct: list[MPoly] = []
    for c in cons:
        if c.is_zero():
            continue
        if c.degree_in(other) == 0:
            direct.append(c)
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            a, b = cons[i], cons[j]
            if a.is_zero() or b.is_zero():
                continue
            if a.degree_in(other) == 0 and b.degree_in(other) == 0:
                continue
            r = resultant(a, b, other)
            if not r.is_zero():
                polys.append(_to_upoly(r, keep))
    for c in direct:
        if c.degree_in(keep) >= 1:
            polys.append(_to_upoly(c, keep))
    polys = [p for p in polys if udeg(p) >= 1]
    if not polys:
        return None
    from .exactmath import ugcd

    g = polys[0]
    for p in polys[1:]:
        if udeg(g) == 0:
            break
        g = ugcd(g, p)
    # every true intersection parameter is a root of every collected
    # polynomial, so a constant gcd certifies an empty intersection
    return g


def _to_upoly(p: MPoly, var: int) -> UPoly:
    out = [Fraction(0)] * (p.degree_in(var) + 1)
    for e, c in p.terms.items():
        out[e[var]] += c
    return utrim(out)


# ---------------------------------------------------------------------------
# surfaces


class SurfacePatch:
    """Two-dimensional object: affine 2-flat or bivariate parametrization."""

    __slots__ = ("ambient_dim", "kind", "point", "dirs", "components",
                 "implicit_generators", "degree", "label")

    def __init__(self, *, ambient_dim: int, kind: str, label: str,
                 point=None, dirs=None, components: list[MPoly] | None = None,
                 implicit_generators: list[MPoly] | None = None, degree: int | None = None):
        self.ambient_dim = ambient_dim
        self.kind = kind
        self.label = label
        self.implicit_generators = implicit_generators or []
        if kind == "flat":
            self.point = tuple(Fraction(x) for x in point)
            self.dirs = tuple(tuple(Fraction(x) for x in v) for v in dirs)
            if len(self.dirs) != 2:
                raise ValueError("a 2-flat needs two directions")
            if _parallel(list(self.dirs[0]), list(self.dirs[1])):
                raise ValueError("flat directions must be linearly independent")
            self.components = [
                MPoly(2, {(0, 0): self.point[i], (1, 0): self.dirs[0][i], (0, 1): self.dirs[1][i]})
                for i in range(ambient_dim)
            ]
            self.degree = 1 if degree is None else degree
        elif kind == "parametrized":
            self.point = None
            self.dirs = None
            self.components = list(components)
            if len(self.components) != ambient_dim:
                raise ValueError("component count must equal the ambient dimension")
            self.degree = degree if degree is not None else max(c.degree() for c in self.components)
        else:
            raise ValueError(f"unknown surface kind {kind!r}")
        for g in self.implicit_generators:
            if not g.compose_mpolys(self.components).is_zero():
                raise ValueError("implicit generator does not vanish on the parametrization")

    def flat_normal_forms(self) -> list[MPoly]:
        """For flats: affine linear forms cutting the flat out exactly."""
        if self.kind != "flat":
            raise UnsupportedSurfaceError("normal forms only available for flats")
        d = self.ambient_dim
        rows = [list(self.dirs[0]), list(self.dirs[1])]
        normals = nullspace(rows, cols=d)
        forms = []
        for n in normals:
            const = -sum(ni * pi for ni, pi in zip(n, self.point))
            terms = {tuple(int(i == j) for j in range(d)): n[i] for i in range(d) if n[i] != 0}
            terms[(0,) * d] = const
            forms.append(MPoly(d, terms))
        return forms

    def contains_curve(self, curve: ParamCurve) -> bool:
        if curve.ambient_dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if self.kind == "flat":
            return all(curve_contained_in(curve, f) for f in self.flat_normal_forms())
        if self.implicit_generators:
            return all(curve_contained_in(curve, g) for g in self.implicit_generators)
        raise UnsupportedSurfaceError(
            f"surface {self.label!r} has no flat structure or implicit generators")

    def sample_points(self, k: int) -> list[tuple[Fraction, ...]]:
        """(k*deg + 1)^2 grid of points on the surface."""
        n = k * max(1, self.degree) + 1
        pts = []
        for a in range(n):
            for b in range(n):
                pts.append(tuple(c.evaluate([a, b]) for c in self.components))
        return pts

    def __repr__(self):
        return f"SurfacePatch({self.label!r}, {self.kind}, dim={self.ambient_dim})"

    def to_json(self) -> dict:
        out = {"label": self.label, "kind": self.kind, "degree": self.degree}
        if self.kind == "flat":
            out["point"] = [_frac_str(x) for x in self.point]
            out["dirs"] = [[_frac_str(x) for x in v] for v in self.dirs]
        else:
            out["components"] = [c.to_json() for c in self.components]
        if self.implicit_generators:
            out["implicit"] = [g.to_json() for g in self.implicit_generators]
        return out

    @staticmethod
    def from_json(data: dict, ambient_dim: int) -> SurfacePatch:
        implicit = [MPoly.from_json(g) for g in data.get("implicit", [])]
        if data["kind"] == "flat":
            return SurfacePatch(
                ambient_dim=ambient_dim, kind="flat", label=data["label"],
                point=[Fraction(s) for s in data["point"]],
                dirs=[[Fraction(s) for s in v] for v in data["dirs"]],
                implicit_generators=implicit, degree=data.get("degree"))
        return SurfacePatch(
            ambient_dim=ambient_dim, kind="parametrized", label=data["label"],
            components=[MPoly.from_json(c) for c in data["components"]],
            implicit_generators=implicit, degree=data.get("degree"))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def surface_contained_in(surface: SurfacePatch, f: MPoly) -> bool:
    """Exact containment of the surface in the zero set of f."""
    if f.nvars != surface.ambient_dim:
        raise ValueError("dimension mismatch")
    return f.compose_mpolys(surface.components).is_zero()


def flats_identical(f1: SurfacePatch, f2: SurfacePatch) -> bool:
    if f1.kind != "flat" or f2.kind != "flat":
        raise UnsupportedSurfaceError("identity test implemented for flats")
    forms = f1.flat_normal_forms()
    def on(pt, form):
        return form.evaluate(pt) == 0
    pts = [f2.point,
           tuple(p + u for p, u in zip(f2.point, f2.dirs[0])),
           tuple(p + v for p, v in zip(f2.point, f2.dirs[1]))]
    return all(on(p, f) for p in pts for f in forms)


@dataclass(frozen=True)
class FlatMeet:
    kind: str                      # "line" | "point" | "empty" | "identical"
    line: ParamCurve | None = None


def common_line_of_flats(f1: SurfacePatch, f2: SurfacePatch) -> FlatMeet:
    """Classify the meet of two 2-flats in R^4; return the line when 1-dim."""
    if f1.ambient_dim != 4 or f2.ambient_dim != 4:
        raise ValueError("flats must live in R^4")
    if f1.kind != "flat" or f2.kind != "flat":
        raise UnsupportedSurfaceError("common_line_of_flats needs flats")
    if flats_identical(f1, f2):
        return FlatMeet("identical")
    a = [[f1.dirs[0][i], f1.dirs[1][i], -f2.dirs[0][i], -f2.dirs[1][i]] for i in range(4)]
    b = [f2.point[i] - f1.point[i] for i in range(4)]
    sol = solve_full(a, b)
    if sol is None:
        return FlatMeet("empty")
    x0, null = sol
    if len(null) == 0:
        return FlatMeet("point")
    if len(null) >= 2:
        return FlatMeet("identical")
    n = null[0]
    direction = [n[0] * f1.dirs[0][i] + n[1] * f1.dirs[1][i] for i in range(4)]
    base = [f1.point[i] + x0[0] * f1.dirs[0][i] + x0[1] * f1.dirs[1][i] for i in range(4)]
    return FlatMeet("line", ParamCurve.line(base, direction, f"meet({f1.label},{f2.label})"))


# ---------------------------------------------------------------------------
# varieties and rich points


@dataclass(frozen=True)
class Variety:
    """Zero set of a generator list, with declared dimension and degree."""

    generators: tuple[MPoly, ...]
    claimed_dim: int
    degree_bound: int
    label: str = ""

    def __post_init__(self):
        if not self.generators:
            raise ValueError("variety needs at least one generator")

    def contains_curve(self, curve: ParamCurve) -> bool:
        return all(curve_contained_in(curve, g) for g in self.generators)

    def to_json(self) -> dict:
        return {"label": self.label, "dim": self.claimed_dim,
                "degree_bound": self.degree_bound,
                "generators": [g.to_json() for g in self.generators]}

    @staticmethod
    def from_json(data: dict) -> Variety:
        return Variety(tuple(MPoly.from_json(g) for g in data["generators"]),
                       data["dim"], data["degree_bound"], data.get("label", ""))


@dataclass
class RichPoint:
    """A point on at least two curves, with exact coordinates."""

    coords: tuple
    incident_labels: frozenset[str]
    params: dict = field(default_factory=dict)   # label -> parameter Coord

    def multiplicity(self) -> int:
        return len(self.incident_labels)

    def same_point(self, other: RichPoint) -> bool:
        return all(coord_eq(a, b) for a, b in zip(self.coords, other.coords))

    def sort_key_cmp(self, other: RichPoint) -> int:
        for a, b in zip(self.coords, other.coords):
            c = coord_cmp(a, b)
            if c:
                return c
        return 0

    def to_json(self) -> dict:
        from .exactmath import coord_to_json

        return {"coords": [coord_to_json(c) for c in self.coords],
                "labels": sorted(self.incident_labels)}

    @staticmethod
    def from_json(data: dict) -> RichPoint:
        from .exactmath import coord_from_json

        coords = tuple(coord_from_json(c) for c in data["coords"])
        return RichPoint(coords, frozenset(data["labels"]))

    def revalidate(self, curves_by_label: dict[str, ParamCurve]) -> bool:
        """Re-check that every incident curve passes through the point."""
        for lab in self.incident_labels:
            curve = curves_by_label[lab]
            if lab in self.params:
                pt = curve.point_at_coord(self.params[lab])
                if not all(coord_eq(a, b) for a, b in zip(pt, self.coords)):
                    return False
            else:
                if not all(isinstance(coord_normalize(c), Fraction) for c in self.coords):
                    return False
                if not point_on_curve([coord_normalize(c) for c in self.coords], curve):
                    return False
        return True


# ---------------------------------------------------------------------------
# partial factorization


_PROBE_LINES = [
    ([0, 0, 0, 0], [1, 1, 1, 1]),
    ([1, 0, 0, 0], [1, 2, 3, 4]),
    ([0, 1, 0, 0], [2, -1, 1, 3]),
    ([0, 0, 1, 0], [1, -2, 2, -1]),
    ([1, 1, 0, 0], [3, 1, -1, 2]),
    ([0, 1, 1, 0], [1, 3, 2, 5]),
    ([2, 1, 1, 0], [1, -1, 3, 1]),
    ([1, 2, 3, 0], [5, 1, 2, -2]),
]


def _rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots, via divisor enumeration on the integer image."""
    from .exactmath import uclear_denominators

    ints = uclear_denominators(p)
    if len(ints) <= 1:
        return []
    k = 0
    while ints[k] == 0:
        k += 1
    roots = [Fraction(0)] if k > 0 else []
    ints = ints[k:]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10**12 or an > 10**12:
        # divisor enumeration would be too costly; report none found
        return roots
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if ueval(p, cand) == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _find_linear_factor(f: MPoly) -> MPoly | None:
    """One rational linear factor of f, or None if none is detected."""
    d = f.nvars
    grads = [f.deriv(i) for i in range(d)]
    for base, dirv in _PROBE_LINES:
        comps = [upoly([Fraction(base[i % 4]), Fraction(dirv[i % 4] + (7 * i if i >= 4 else 0))])
                 for i in range(d)]
        restr = f.compose_upolys(comps)
        if udeg(restr) != f.degree():
            continue
        for r in _rational_roots(restr):
            pt = [ueval(c, r) for c in comps]
            n = [g.evaluate(pt) for g in grads]
            if all(x == 0 for x in n):
                continue
            const = -sum(ni * pi for ni, pi in zip(n, pt))
            terms = {tuple(int(i == j) for j in range(d)): n[i] for i in range(d) if n[i] != 0}
            if const != 0:
                terms[(0,) * d] = const
            cand = MPoly(d, terms).normalized()
            if cand.divides(f):
                return cand
    return None


def _diagonalize_quadratic(q: MPoly) -> list[tuple[Fraction, MPoly]]:
    """Write a homogeneous quadratic as sum of lam_i * (linear form)^2."""
    forms: list[tuple[Fraction, MPoly]] = []
    work = q
    n = q.nvars
    while not work.is_zero():
        sq = next((i for i in range(n) if work.terms.get(_unit(n, i, 2), 0) != 0), None)
        if sq is not None:
            lam = work.terms[_unit(n, sq, 2)]
            ell = work.deriv(sq).scale(Fraction(1, 2) / lam)
            work = work - ell * ell * MPoly.const(n, lam)
            forms.append((lam, ell))
            continue
        cross = next((e for e in work.terms if sum(e) == 2), None)
        if cross is None:
            break
        i = next(k for k in range(n) if cross[k])
        j = next(k for k in range(n) if cross[k] and k != i)
        # substitute x_i -> x_i + x_j to create a square, then undo on output
        subs = [MPoly.var(n, k) for k in range(n)]
        subs[i] = MPoly.var(n, i) + MPoly.var(n, j)
        inner = _diagonalize_quadratic(work.compose_mpolys(subs))
        undo = [MPoly.var(n, k) for k in range(n)]
        undo[i] = MPoly.var(n, i) - MPoly.var(n, j)
        forms.extend((lam, ell.compose_mpolys(undo)) for lam, ell in inner)
        return forms
    return forms


def _unit(n: int, i: int, k: int) -> tuple:
    return tuple(k if j == i else 0 for j in range(n))


def _frac_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _split_quadratic(f: MPoly) -> tuple[list[MPoly], bool]:
    """Factor a total-degree-2 polynomial over Q via its symmetric matrix.

    Returns (factors, complete).  Incomplete only in the rank-2 case whose
    split needs an irrational square root.
    """
    d = f.nvars
    terms = {}
    for e, c in f.terms.items():
        k = 2 - sum(e)
        terms[(k,) + e] = c
    hom = MPoly(d + 1, terms)
    forms = _diagonalize_quadratic(hom)
    rank_ = len(forms)
    if rank_ >= 3:
        return [f], True
    if rank_ == 1:
        lam, ell = forms[0]
        return [_dehom(ell)], True
    (l1, e1), (l2, e2) = forms
    ratio = -l2 / l1
    tau = _frac_sqrt(ratio)
    if tau is None:
        if ratio < 0:
            return [f], True          # definite pair: irreducible over R
        return [f], False             # splits over R but not over Q
    g1 = _dehom(e1 - e2.scale(tau)).normalized()
    g2 = _dehom(e1 + e2.scale(tau)).normalized()
    return [g1, g2], True


def _dehom(form: MPoly) -> MPoly:
    """Substitute the homogenizing variable x_0 = 1 and drop it."""
    n = form.nvars
    out = {}
    for e, c in form.terms.items():
        out[e[1:]] = out.get(e[1:], Fraction(0)) + c
    return MPoly(n - 1, {e: c for e, c in out.items() if c})


def irreducible_components(f: MPoly) -> tuple[list[MPoly], bool]:
    """Factor f over Q as far as the limited facility goes.

    Returns (factors with multiplicity, complete).  Always splits off
    monomial content and rational linear factors, fully factors total degree
    <= 2, and collapses repeated factors; a residual of degree >= 3 (or an
    irrationally-split quadratic) is returned whole with complete = False.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no components")
    d = f.nvars
    factors: list[MPoly] = []
    work = f.normalized()
    content = work.content_monomial()
    if any(content):
        for i, k in enumerate(content):
            factors.extend([MPoly.var(d, i)] * k)
        work = work.div_exact(MPoly(d, {content: Fraction(1)}))
    while work.degree() >= 1:
        if work.degree() == 1:
            factors.append(work.normalized())
            return factors, True
        lin = _find_linear_factor(work)
        if lin is not None:
            while lin.divides(work):
                factors.append(lin)
                work = work.div_exact(lin).normalized()
            continue
        if work.degree() == 2:
            quad, complete = _split_quadratic(work)
            factors.extend(q.normalized() for q in quad)
            return factors, complete
        sf = squarefree_part(work)
        if 1 <= sf.degree() < work.degree():
            # recurse on the squarefree part, divide its factors out of work
            sub_factors, sub_complete = irreducible_components(sf)
            progressed = False
            for g in sub_factors:
                g = g.normalized()
                while g.divides(work):
                    factors.append(g)
                    work = work.div_exact(g).normalized()
                    progressed = True
            if work.degree() <= 0:
                return factors, sub_complete
            if not progressed or not sub_complete:
                factors.append(work)
                return factors, False
            continue
        factors.append(work)
        return factors, False
    return factors, True
