"""Realification of complex polynomials and component counting.

The 1-variable component counter is exact-with-certificate: the boundary
circle analysis is done by Sturm root isolation of the circle restriction
(via the rational parametrization of the circle), which pins the number of
boundary sign arcs at no more than twice the degree; interior connectivity
between arcs is then established by union-find over an adaptively refined
sign grid.  Since the real part of a complex polynomial is harmonic on every
complex line, no component of the complement is bounded, so every component
meets the boundary circle and the component count equals the number of arc
classes.  The 2-variable stress mode is sampling-based and labeled heuristic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    MPoly,
    isolate_real_roots,
    uclear_denominators,
    udeg,
    ueval,
    upoly,
    usquarefree,
    utrim,
)


@dataclass
class ComplexPoly:
    """Polynomial in C[z_1..z_d] with exact rational coefficient pairs."""

    nvars: int
    terms: dict[tuple, tuple[Fraction, Fraction]]

    def __post_init__(self):
        clean = {}
        for e, (re, im) in self.terms.items():
            re, im = Fraction(re), Fraction(im)
            if re != 0 or im != 0:
                clean[tuple(e)] = (re, im)
        self.terms = clean

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point: list[tuple[Fraction, Fraction]]) -> tuple[Fraction, Fraction]:
        """Exact complex evaluation; the point is a list of (re, im) pairs."""
        acc_re, acc_im = Fraction(0), Fraction(0)
        for e, (cre, cim) in self.terms.items():
            vre, vim = cre, cim
            for (xre, xim), k in zip(point, e):
                for _ in range(k):
                    vre, vim = vre * xre - vim * xim, vre * xim + vim * xre
            acc_re += vre
            acc_im += vim
        return acc_re, acc_im

    @staticmethod
    def from_univariate(coeffs: list[tuple[Fraction, Fraction]]) -> ComplexPoly:
        return ComplexPoly(1, {(k,): c for k, c in enumerate(coeffs)})

    @staticmethod
    def random(nvars: int, degree: int, rng: random.Random, bound: int = 9) -> ComplexPoly:
        terms = {}
        from .exactmath import monomials_upto

        for e in monomials_upto(nvars, degree, include_const=True):
            terms[e] = (Fraction(rng.randint(-bound, bound)),
                        Fraction(rng.randint(-bound, bound)))
        # force exact degree
        top = tuple(degree if i == 0 else 0 for i in range(nvars))
        while terms.get(top, (0, 0)) == (0, 0):
            terms[top] = (Fraction(rng.randint(-bound, bound)),
                          Fraction(rng.randint(-bound, bound)))
        return ComplexPoly(nvars, terms)


def realify(p: ComplexPoly) -> tuple[MPoly, MPoly]:
    """Real and imaginary parts as polynomials in 2d real variables.

    Variable layout: z_j = x_{2j} + i * x_{2j+1}."""
    d = p.nvars
    re_acc = MPoly.zero(2 * d)
    im_acc = MPoly.zero(2 * d)
    for e, (cre, cim) in p.terms.items():
        tre, tim = MPoly.const(2 * d, cre), MPoly.const(2 * d, cim)
        for j, k in enumerate(e):
            xj = MPoly.var(2 * d, 2 * j)
            yj = MPoly.var(2 * d, 2 * j + 1)
            for _ in range(k):
                tre, tim = tre * xj - tim * yj, tre * yj + tim * xj
        re_acc = re_acc + tre
        im_acc = im_acc + tim
    return re_acc, im_acc


def dominance_radius(p: ComplexPoly) -> Fraction:
    """Radius beyond which the top-degree term of a univariate p dominates the
    rest on the circle: R = 1 + sum_{k<E}(|re_k| + |im_k|) / max(|re_E|, |im_E|)."""
    if p.nvars != 1:
        raise ValueError("univariate polynomials only")
    e = p.degree()
    if e < 1:
        raise ValueError("need degree >= 1")
    top = p.terms[(e,)]
    lead = max(abs(top[0]), abs(top[1]))
    rest = sum(abs(re) + abs(im) for k, (re, im) in p.terms.items() if k[0] < e)
    return Fraction(1) + rest / lead


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _circle_restriction(f: MPoly, radius: Fraction) -> list[Fraction]:
    """Numerator of f on the circle |z| = R under the rational parametrization
    x = R(1-u^2)/(1+u^2), y = 2Ru/(1+u^2), cleared by (1+u^2)^deg."""
    e = f.degree()
    one_u2 = upoly([1, 0, 1])
    x_num = upoly([radius, 0, -radius])
    y_num = upoly([0, 2 * radius])
    from .exactmath import uadd, umul, upow, uscale

    acc: list[Fraction] = []
    for exps, c in f.terms.items():
        j, k = exps
        term = upow(x_num, j)
        term = umul(term, upow(y_num, k))
        term = umul(term, upow(one_u2, e - j - k))
        acc = uadd(acc, uscale(term, c))
    return acc


def _boundary_arcs(f: MPoly, radius: Fraction):
    """Sign arcs of f around the circle |z| = R.

    Returns a list of (representative point inside the disc, sign) per arc and
    the number of boundary sign changes.  The representative sits at radius
    R * (1 - 1/64) along the arc's midpoint direction."""
    num = _circle_restriction(f, radius)
    minus_r_val = f.evaluate([-radius, Fraction(0)])
    if minus_r_val == 0 or not num:
        return None     # caller bumps the radius
    roots = isolate_real_roots(num) if udeg(num) >= 1 else []
    shrink = Fraction(63, 64)

    def point_at(u: Fraction) -> tuple[Fraction, Fraction]:
        den = 1 + u * u
        return (radius * (1 - u * u) / den * shrink, 2 * radius * u / den * shrink)

    # sample points: one per open interval between consecutive roots, plus the
    # wrap-around arc through z = -R (u = infinity); the samples are chosen
    # with the smallest denominators available so downstream exact segment
    # arithmetic stays cheap
    reps: list[tuple[tuple[Fraction, Fraction], int]] = []
    signs_seq: list[int] = []
    if not roots:
        v = f.evaluate([radius * shrink, Fraction(0)])
        s = 1 if v > 0 else -1 if v < 0 else 0
        return [(point_at(Fraction(0)), s)], 0
    interval_samples = [_simplest_rational(roots[0][0] - 1, roots[0][0])]
    for i in range(len(roots) - 1):
        interval_samples.append(_simplest_rational(roots[i][1], roots[i + 1][0]))
    interval_samples.append(_simplest_rational(roots[-1][1], roots[-1][1] + 1))
    for u in interval_samples:
        v = ueval(num, u)
        s = 1 if v > 0 else -1 if v < 0 else 0
        if s == 0:
            return None
        reps.append((point_at(u), s))
        signs_seq.append(s)
    # wrap arc through z = -R joins the two end intervals when their signs
    # match the sign at -R; with distinct isolated roots they always do
    sign_minus_r = 1 if minus_r_val > 0 else -1
    if signs_seq[0] != sign_minus_r or signs_seq[-1] != sign_minus_r:
        return None     # a root sits between the sample and infinity; bump R
    merged = reps[:-1]
    merged[0] = (reps[0][0], signs_seq[0])
    changes = sum(1 for a, b in zip(signs_seq, signs_seq[1:]) if a != b)
    return merged, changes


def complement_components_1d(p: ComplexPoly, radius: Fraction | None = None,
                             grid: int | None = None) -> dict:
    """Connected components of the disc minus the zero set of Re p.

    Exact boundary arcs (Sturm on the circle restriction) are merged through
    the interior on an adaptively refined sign grid; every component is
    unbounded (Re p is harmonic), so components correspond to arc classes.
    """
    if p.nvars != 1:
        raise ValueError("d = 1 only; the 2-variable mode is conjecture_stress")
    if p.degree() < 1:
        raise ValueError("need degree >= 1")
    re_p, _ = realify(p)
    rmin = dominance_radius(p)
    if radius is not None and Fraction(radius) < rmin:
        raise ValueError(f"radius below the all-roots bound {rmin}")
    # integer radius keeps every grid coordinate a dyadic-style rational
    r = Fraction(radius) if radius is not None else Fraction(math.ceil(rmin))
    arcs = None
    for _bump in range(64):
        arcs = _boundary_arcs(re_p, r)
        if arcs is not None:
            break
        r = r + max(Fraction(1), r / 8)
    if arcs is None:
        raise RuntimeError("could not find a clean boundary radius")
    arc_reps, changes = arcs

    start = grid if grid is not None else 16
    cells = start
    prev_counts: list[int] = []
    count = None
    h_final = None
    for _ in range(6):
        count = _merge_through_grid(re_p, r, cells, arc_reps)
        h_final = (2 * r) / cells
        prev_counts.append(count)
        if len(prev_counts) >= 2 and prev_counts[-1] == prev_counts[-2]:
            break
        cells *= 2
    return {
        "count": count,
        "certificate": {
            "radius": f"{r.numerator}/{r.denominator}",
            "boundary_sign_changes": changes,
            "arcs": len(arc_reps),
            "grid_h": f"{h_final.numerator}/{h_final.denominator}",
            "degree_bound": 2 * p.degree(),
        },
    }


def _sign_grid(f: MPoly, radius: Fraction, q: int) -> list[list[int]]:
    """Exact signs of f at the q x q grid of cell centers, via one
    denominator clearing and integer Horner per row."""
    deg = f.degree()
    int_terms: dict[tuple, Fraction] = {}
    for (j, k), c in f.terms.items():
        int_terms[(j, k)] = c * radius ** (j + k) * Fraction(q) ** (deg - j - k)
    den = 1
    for c in int_terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    poly_int = {e: int(c * den) for e, c in int_terms.items()}
    coords = [2 * i + 1 - q for i in range(q)]      # odd numerators of a/q in [-1, 1]
    max_k = max(k for _, k in poly_int)
    grid = [[0] * q for _ in range(q)]
    for ai, a in enumerate(coords):
        row = [0] * (max_k + 1)
        for (j, k), n in poly_int.items():
            row[k] += n * a**j
        for bi, b in enumerate(coords):
            acc = 0
            for coef in reversed(row):
                acc = acc * b + coef
            grid[ai][bi] = 1 if acc > 0 else -1 if acc < 0 else 0
    return grid


def _bernstein_one_signed(g) -> bool:
    """Sufficient certificate: all Bernstein coefficients of g on [0, 1] share
    one strict sign, so g has no zero there.  Cheap; inconclusive on mixed
    signs."""
    n = udeg(g)
    if n < 1:
        return bool(g) and g[0] != 0
    b = []
    for k in range(n + 1):
        acc = Fraction(0)
        for j in range(min(k, n) + 1):
            if j < len(g):
                acc += Fraction(math.comb(k, j), math.comb(n, j)) * g[j]
        b.append(acc)
    return all(x > 0 for x in b) or all(x < 0 for x in b)


def _segment_poly(f: MPoly, p0, p1):
    """Integer-coefficient restriction of f to the segment p0 -> p1, t in [0,1].

    All arithmetic is on plain ints (one global denominator clearing), which
    is far cheaper than Fraction polynomial composition."""
    den = 1
    for v in (*p0, *p1):
        den = den * v.denominator // math.gcd(den, v.denominator)
    x0, y0 = int(p0[0] * den), int(p0[1] * den)
    dx, dy = int(p1[0] * den) - x0, int(p1[1] * den) - y0
    cden = 1
    for c in f.terms.values():
        cden = cden * c.denominator // math.gcd(cden, c.denominator)
    deg = f.degree()

    def int_mul(a: list[int], b: list[int]) -> list[int]:
        out = [0] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    out[i + j] += av * bv
        return out

    powx: list[list[int]] = [[1]]
    powy: list[list[int]] = [[1]]
    max_x = max((e[0] for e in f.terms), default=0)
    max_y = max((e[1] for e in f.terms), default=0)
    for _ in range(max_x):
        powx.append(int_mul(powx[-1], [x0, dx]))
    for _ in range(max_y):
        powy.append(int_mul(powy[-1], [y0, dy]))
    acc = [0] * (deg + 1)
    for (j, k), c in f.terms.items():
        ci = int(c * cden) * den ** (deg - j - k)
        term = int_mul(powx[j], powy[k])
        for i, tv in enumerate(term):
            acc[i] += ci * tv
    while acc and acc[-1] == 0:
        acc.pop()
    return [Fraction(v) for v in acc]


def _restrict_axis(f: MPoly, fixed_axis: int, value: Fraction):
    """f with one of its two variables pinned, as a dense UPoly in the other;
    direct coefficient accumulation, no polynomial products."""
    free_deg = max((e[1 - fixed_axis] for e in f.terms), default=0)
    out = [Fraction(0)] * (free_deg + 1)
    powers = [Fraction(1)]
    max_fixed = max((e[fixed_axis] for e in f.terms), default=0)
    for _ in range(max_fixed):
        powers.append(powers[-1] * value)
    for e, c in f.terms.items():
        out[e[1 - fixed_axis]] += c * powers[e[fixed_axis]]
    return utrim(out)


def _simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo == hi:
        return lo
    q = 1
    while True:
        p = math.ceil(lo * q)
        if Fraction(p, q) <= hi:
            return Fraction(p, q)
        q += 1


def _segment_root_free(f: MPoly, p0, p1, exact: bool = True) -> bool:
    """f has no zero on the closed segment between two points where it is
    already known nonzero.  The Bernstein certificate answers most queries;
    the exact Sturm count is the fallback (skipped when exact=False, making
    the test conservative: inconclusive means 'do not merge')."""
    from .exactmath import sturm_root_count

    g = _segment_poly(f, p0, p1)
    if not g:
        return False
    if udeg(g) < 1:
        return True
    if _bernstein_one_signed(g):
        return True
    if not exact:
        return False
    return sturm_root_count(g, Fraction(0), Fraction(1)) == 0


def _grid_structure(f: MPoly, radius: Fraction, q: int, arc_reps):
    """Union-find over grid cells plus arc nodes, with certified merges.

    Away from the zero set, adjacent same-sign cells merge freely; next to a
    sign change (or a zero cell) the segment between the two centers must be
    certified root-free by an exact Sturm count.  Arc nodes always use the
    certified link.  Under-merging can only split true components further,
    never join distinct ones, and vanishes under grid refinement."""
    sign_grid = _sign_grid(f, radius, q)
    h = 2 * radius / q

    def center(ai, bi):
        return (-radius + h * ai + h / 2, -radius + h * bi + h / 2)

    hot = [[False] * q for _ in range(q)]
    for ai in range(q):
        for bi in range(q):
            s = sign_grid[ai][bi]
            if s == 0:
                hot[ai][bi] = True
                continue
            for da in (-1, 0, 1):
                for db in (-1, 0, 1):
                    na, nb = ai + da, bi + db
                    if 0 <= na < q and 0 <= nb < q and sign_grid[na][nb] != s:
                        hot[ai][bi] = True
    n_cells = q * q
    dsu = _DSU(n_cells + len(arc_reps))

    # hot edges are axis-parallel, so one Sturm chain per grid row or column
    # answers all of them exactly: two variation counts per edge; chains are
    # rescaled to integer coefficients in the integer center index m, making
    # each variation count a handful of int Horner evaluations
    from .exactmath import sturm_chain, usquarefree

    cs = [-radius + h * i + h / 2 for i in range(q)]
    ms = [2 * i + 1 - q for i in range(q)]          # center index: c = r*m/q
    scale = radius / q
    chain_cache: dict[tuple, object] = {}

    def _int_chain(chain):
        out = []
        for elem in chain:
            coeffs = [c * scale**k for k, c in enumerate(elem)]
            den = 1
            for c in coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
            out.append([int(c * den) for c in coeffs])
        return out

    def edge_root_free(fixed_axis: int, fixed_idx: int, j0: int, j1: int) -> bool:
        """No zero of f strictly between centers j0 < j1 along the free axis."""
        key = (fixed_axis, fixed_idx)
        entry = chain_cache.get(key)
        if entry is None:
            g = _restrict_axis(f, fixed_axis, cs[fixed_idx])
            if not g:
                entry = (None, None)
            elif udeg(g) < 1:
                entry = ("const", None)
            else:
                # the classical chain counts distinct roots without needing a
                # squarefree pass
                entry = (_int_chain(sturm_chain(g)), {})
            chain_cache[key] = entry
        if entry[0] is None:
            return False
        if entry[0] == "const":
            return True
        chain, var_cache = entry

        def variations(j: int) -> int:
            v = var_cache.get(j)
            if v is None:
                m = ms[j]
                signs = []
                for elem in chain:
                    acc = 0
                    for coef in reversed(elem):
                        acc = acc * m + coef
                    if acc:
                        signs.append(1 if acc > 0 else -1)
                v = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
                var_cache[j] = v
            return v

        return variations(j0) == variations(j1)

    for ai in range(q):
        for bi in range(q):
            s = sign_grid[ai][bi]
            if s == 0:
                continue
            if ai + 1 < q and sign_grid[ai + 1][bi] == s:
                if not (hot[ai][bi] or hot[ai + 1][bi]) or \
                        edge_root_free(1, bi, ai, ai + 1):
                    dsu.union(ai * q + bi, (ai + 1) * q + bi)
            if bi + 1 < q and sign_grid[ai][bi + 1] == s:
                if not (hot[ai][bi] or hot[ai][bi + 1]) or \
                        edge_root_free(0, ai, bi, bi + 1):
                    dsu.union(ai * q + bi, ai * q + bi + 1)

    def locate(px, py, s):
        """Cell index whose center connects to (px, py) without crossing the
        zero set, or None."""
        ai = min(max(int((px + radius) / h), 0), q - 1)
        bi = min(max(int((py + radius) / h), 0), q - 1)
        offsets = sorted(((da, db) for da in (-2, -1, 0, 1, 2)
                          for db in (-2, -1, 0, 1, 2)),
                         key=lambda o: abs(o[0]) + abs(o[1]))
        for da, db in offsets:
            na, nb = ai + da, bi + db
            if 0 <= na < q and 0 <= nb < q and sign_grid[na][nb] == s:
                if _segment_root_free(f, (px, py), center(na, nb)):
                    return na * q + nb
        return None

    for arc_id, ((px, py), s) in enumerate(arc_reps):
        cell = locate(px, py, s)
        if cell is not None:
            dsu.union(n_cells + arc_id, cell)
    return dsu, sign_grid, locate, n_cells


def _merge_through_grid(f: MPoly, radius: Fraction, cells: int,
                        arc_reps: list[tuple[tuple[Fraction, Fraction], int]]) -> int:
    """Number of arc classes after certified union-find over the sign grid."""
    dsu, _grid, _locate, n_cells = _grid_structure(f, radius, cells, arc_reps)
    roots = {dsu.find(n_cells + i) for i in range(len(arc_reps))}
    return len(roots)


def conjecture_stress(points: list, degree: int, trials: int = 20, seed: int = 0,
                      d: int = 1) -> dict:
    """Stress the complex-partitioning idea: over trial degree-E polynomials,
    report the smallest achievable maximum per-component point load.

    For d = 1 the component structure is exact and some component always
    holds at least ceil(n / (2 E)) points (there are at most 2E components).
    For d = 2 connectivity is sampled along segments and labeled heuristic.
    """
    n = len(points)
    if degree >= n:
        return {"E": degree, "n": n, "trials": 0, "min_max_load": None,
                "lemma_bound": max(1, math.ceil(Fraction(n, 2 * degree))),
                "trivial_regime": True}
    rng = random.Random(seed)
    lemma_bound = math.ceil(Fraction(n, 2 * degree))
    loads = []
    if d == 1:
        pts = [(Fraction(a), Fraction(b)) for a, b in points]
        for _ in range(trials):
            p = ComplexPoly.random(1, degree, rng)
            load = _max_component_load_1d(p, pts)
            loads.append(load)
    elif d == 2:
        pts = [tuple(Fraction(x) for x in pt) for pt in points]
        for _ in range(trials):
            p = ComplexPoly.random(2, degree, rng)
            load = _max_component_load_sampled(p, pts, rng)
            loads.append(load)
    else:
        raise ValueError("d must be 1 or 2")
    return {
        "E": degree,
        "n": n,
        "trials": trials,
        "min_max_load": min(loads) if loads else None,
        "max_loads": loads,
        "lemma_bound": lemma_bound,
        "floor_holds": all(v >= lemma_bound for v in loads) if d == 1 else None,
        "heuristic": d == 2,
        "trivial_regime": False,
    }


def _max_component_load_1d(p: ComplexPoly, pts: list[tuple[Fraction, Fraction]]) -> int:
    re_p, _ = realify(p)
    r = dominance_radius(p)
    extent = max((max(abs(a), abs(b)) for a, b in pts), default=Fraction(1))
    r = max(r, 2 * extent + 1)
    arcs = None
    for _bump in range(64):
        arcs = _boundary_arcs(re_p, r)
        if arcs is not None:
            break
        r = r + max(Fraction(1), r / 8)
    if arcs is None:
        raise RuntimeError("no clean boundary radius")
    arc_reps, _changes = arcs
    cells = 32
    for _refine in range(5):
        loads = _grid_point_loads(re_p, r, cells, arc_reps, pts)
        if loads is not None:
            return max(loads.values(), default=0)
        cells *= 2
    raise RuntimeError("grid refinement failed to separate the points")


def _grid_point_loads(f: MPoly, radius: Fraction, cells: int, arc_reps, pts):
    """Per-class point loads, or None when some point cannot be linked to a
    same-sign cell by a certified segment (grid too coarse there)."""
    signed = []
    for (a, b) in pts:
        v = f.evaluate([a, b])
        if v == 0:
            continue        # points on the zero set carry no load
        signed.append(((a, b), 1 if v > 0 else -1))
    dsu, _grid, locate, _n_cells = _grid_structure(f, radius, cells, arc_reps)
    loads: dict[int, int] = {}
    for (a, b), s in signed:
        cell = locate(a, b, s)
        if cell is None:
            return None
        root = dsu.find(cell)
        loads[root] = loads.get(root, 0) + 1
    return loads


def _max_component_load_sampled(p: ComplexPoly, pts, rng: random.Random,
                                segment_samples: int = 16) -> int:
    """Heuristic d = 2 load: connect two points when Re p keeps one sign on
    sampled segment points between them."""
    re_p, _ = realify(p)

    def sgn(pt) -> int:
        v = re_p.evaluate(list(pt))
        return 1 if v > 0 else -1 if v < 0 else 0

    signs = [sgn(pt) for pt in pts]
    n = len(pts)
    dsu = _DSU(n)
    for i in range(n):
        if signs[i] == 0:
            continue
        for j in range(i + 1, n):
            if signs[j] != signs[i]:
                continue
            ok = True
            for t in range(1, segment_samples):
                lam = Fraction(t, segment_samples)
                mid = tuple(a + (b - a) * lam for a, b in zip(pts[i], pts[j]))
                if sgn(mid) != signs[i]:
                    ok = False
                    break
            if ok:
                dsu.union(i, j)
    loads: dict[int, int] = {}
    for i in range(n):
        if signs[i] == 0:
            continue
        r = dsu.find(i)
        loads[r] = loads.get(r, 0) + 1
    return max(loads.values(), default=0)
