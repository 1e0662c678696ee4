"""Polynomial partitioning for point sets and curve sets.

A partition polynomial is kept as an ordered list of factors.  Cells are the
sign vectors of the factor list over {-, +}; they are unions of connected
components of the complement of the zero set, so every per-cell load audit
here upper-bounds the per-component load and the budget comparisons are
conservative.  Construction is iterated approximate ham-sandwich halving in
Veronese-lifted space: each level seeks one polynomial whose zero set splits
every current sign class within relative imbalance 1/2 + delta.  Exact
balance is not attempted (the discrete problem is exponential); quality is
certified post hoc by partition_audit.

Before any halving, a structure sweep looks for low-degree polynomials that
vanish on all (or a large seeded subset) of the objects and promotes them to
factors; clustered inputs therefore land on the zero set, where the
decomposition pipelines pick them up as variety components.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (
    EchelonBasis,
    MPoly,
    isolate_roots,
    monomials_upto,
    nullspace,
    udeg,
    ueval,
    veronese_lift,
)
from .geometry import ParamCurve, curve_contained_in
from .reduction import (
    _canonical_scale,
    evaluation_rows,
    min_vanishing_polynomial,
    vanishing_kernel_basis,
)

DELTA_DEFAULT = Fraction(1, 16)


class PartitionBalanceError(RuntimeError):
    """The halving search could not reach the accepted imbalance."""


class OnZeroSet:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "OnZeroSet"


ON_ZERO_SET = OnZeroSet()


@dataclass(frozen=True)
class Cell:
    signs: tuple[int, ...]

    def key(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass
class PartitionPoly:
    nvars: int
    dprime: int
    factors: list[MPoly]
    delta: Fraction
    requested_degree: int = 0
    log: list[dict] = field(default_factory=list)

    @property
    def total_degree(self) -> int:
        return sum(f.degree() for f in self.factors)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "dprime": self.dprime,
            "requested_degree": self.requested_degree,
            "delta": f"{self.delta.numerator}/{self.delta.denominator}",
            "total_degree": self.total_degree,
            "factors": [f.to_json() for f in self.factors],
            "log": self.log,
        }


@dataclass
class PartitionAudit:
    max_cell_load: int
    nonempty_cells: int
    objects_on_zero_set: int
    n_objects: int
    budget_value: Fraction
    c_meas: Fraction | None
    cell_loads: dict[str, int]
    degenerate_input: bool = False

    def to_json(self) -> dict:
        return {
            "max_cell_load": self.max_cell_load,
            "nonempty_cells": self.nonempty_cells,
            "objects_on_zero_set": self.objects_on_zero_set,
            "n_objects": self.n_objects,
            "budget_value": f"{self.budget_value.numerator}/{self.budget_value.denominator}",
            "c_meas": None if self.c_meas is None else float(self.c_meas),
            "degenerate_input": self.degenerate_input,
            "cell_loads": dict(sorted(self.cell_loads.items())),
        }

    def to_csv(self) -> str:
        lines = ["cell;load"]
        for key in sorted(self.cell_loads):
            lines.append(f"{key};{self.cell_loads[key]}")
        return "\n".join(lines) + "\n"


def lift_dim(dprime: int, e: int) -> int:
    return len(monomials_upto(dprime, e))


def degree_schedule(E: int, dprime: int) -> list[int]:
    """Greedy halving schedule: level j must lift into a space of dimension at
    least the class count 2^(j-1); degrees accumulate until E is exhausted."""
    degs: list[int] = []
    classes = 1
    used = 0
    while True:
        e = 1
        while lift_dim(dprime, e) < classes:
            e += 1
        if used + e > E:
            break
        degs.append(e)
        used += e
        classes *= 2
    return degs


def sign_cell(partition: PartitionPoly, point):
    """Exact sign vector of the factors at a rational point, or ON_ZERO_SET."""
    pt = [Fraction(x) for x in point]
    if len(pt) != partition.nvars:
        raise ValueError("dimension mismatch")
    signs = []
    for f in partition.factors:
        v = f.evaluate(pt)
        if v == 0:
            return ON_ZERO_SET
        signs.append(1 if v > 0 else -1)
    return Cell(tuple(signs))


# ---------------------------------------------------------------------------
# halving search


def _lower_median(vals: list[Fraction]) -> Fraction:
    s = sorted(vals)
    return s[(len(s) - 1) // 2]


def _balanced(counts: list[tuple[int, int, int]], delta: Fraction) -> bool:
    # per-side cap is rounded up: tiny odd classes cannot split better than
    # (k, k+1) unless the cut passes exactly through a point
    import math

    for plus, minus, total in counts:
        if total == 0:
            continue
        lim = math.ceil((Fraction(1, 2) + delta) * total)
        if plus > lim or minus > lim:
            return False
    return True


def _score(counts) -> Fraction:
    worst = Fraction(0)
    for plus, minus, total in counts:
        if total:
            worst = max(worst, Fraction(max(plus, minus), total))
    return worst


def _eval_candidate(w: list[Fraction], c: Fraction, lifts_by_class: list[list[list[Fraction]]],
                    limit: Fraction | None = None):
    """Per-class (plus, minus, total) counts of sign(w . lift - c)."""
    counts = []
    for cls in lifts_by_class:
        plus = minus = 0
        for y in cls:
            v = sum(a * b for a, b in zip(w, y)) - c
            if v > 0:
                plus += 1
            elif v < 0:
                minus += 1
        counts.append((plus, minus, len(cls)))
        if limit is not None and max(plus, minus) > limit * len(cls) and len(cls):
            return counts, False
    return counts, True


def _admissible_threshold(projections: list[list[Fraction]], delta: Fraction):
    """Intersection over classes of the thresholds c that split every class
    within the ceiling bound, as an interval; None when the per-class
    intervals miss each other."""
    lo = hi = None
    for proj in projections:
        t = len(proj)
        if t == 0:
            continue
        lim = math.ceil((Fraction(1, 2) + delta) * t)
        s = sorted(proj)
        # at most lim strictly below c and at most lim strictly above c
        a = s[t - lim - 1] if t - lim - 1 >= 0 else None
        b = s[lim] if lim < t else None
        if a is not None:
            lo = a if lo is None or a > lo else lo
        if b is not None:
            hi = b if hi is None or b < hi else hi
    if lo is not None and hi is not None and lo > hi:
        return None
    if lo is None and hi is None:
        return Fraction(0), Fraction(0)
    if lo is None:
        return hi, hi
    if hi is None:
        return lo, lo
    return lo, hi


def find_halving_polynomial(classes: list[list], dprime: int, e: int, delta: Fraction,
                            rng: random.Random, trials: int = 96,
                            containment_cost=None) -> tuple[MPoly, list]:
    """A degree-e polynomial in the first dprime coordinates splitting every
    class within relative imbalance 1/2 + delta (per-side counts rounded up).

    For each candidate direction in the lifted space the admissible threshold
    window of every class is intersected exactly, so a direction succeeds
    whenever any single cut along it works; directions are the lifted
    coordinates, random integer vectors, and normal directions of hyperplanes
    through per-class anchors.  When `containment_cost` is given (a callable
    scoring a candidate factor), thresholds inside the window are shopped to
    minimize it; this steers cuts away from accidentally containing whole
    curves of lattice-aligned data.  Raises PartitionBalanceError when every
    candidate direction fails.
    """
    k = lift_dim(dprime, e)
    lifts_by_class = [[veronese_lift(p[:dprime], e) for p in cls] for cls in classes]
    monos = monomials_upto(dprime, e)

    best_score = None

    def try_direction(w: list[Fraction]):
        nonlocal best_score
        if all(x == 0 for x in w):
            return None
        projections = [[sum(a * b for a, b in zip(w, y)) for y in cls]
                       for cls in lifts_by_class]
        window = _admissible_threshold(projections, delta)
        if window is None:
            # remember how close this direction came, for the error message
            for cand in {_lower_median(p) for p in projections if p}:
                counts = [( sum(1 for v in p if v > cand),
                            sum(1 for v in p if v < cand), len(p)) for p in projections]
                sc = _score(counts)
                if best_score is None or sc < best_score:
                    best_score = sc
            return None
        lo, hi = window
        cands = [(lo + hi) / 2]
        if lo < hi:
            span = hi - lo
            cands += [lo + span * Fraction(5, 11), lo + span * Fraction(7, 13),
                      lo + span * Fraction(1, 3), lo + span * Fraction(2, 3)]
        chosen = None
        chosen_cost = None
        for c in cands:
            counts = [(sum(1 for v in p if v > c), sum(1 for v in p if v < c), len(p))
                      for p in projections]
            if not _balanced(counts, delta):
                continue
            cost = 0 if containment_cost is None else \
                containment_cost(_assemble(w, c, monos, dprime))
            if chosen is None or cost < chosen_cost:
                chosen, chosen_cost = (c, counts), cost
            if cost == 0:
                break
        if chosen is None:
            return None
        return chosen[0], chosen[1], chosen_cost

    directions: list[list[Fraction]] = []
    for j in range(k):
        directions.append([Fraction(int(i == j)) for i in range(k)])
    order = sorted(range(len(classes)), key=lambda i: -len(classes[i]))
    anchor_classes = order[: min(len(classes), k)]
    for trial in range(trials):
        use_anchor = trial % 3 == 0 and len(anchor_classes) >= 2
        if use_anchor:
            # normal direction of a hyperplane through per-class anchors;
            # rejected if the exact solve produces oversized coefficients
            if trial % 2 == 0:
                anchors = [[_lower_median([y[j] for y in lifts_by_class[ci]])
                            for j in range(k)] for ci in anchor_classes]
            else:
                anchors = [list(rng.choice(lifts_by_class[ci])) for ci in anchor_classes]
            rows = [[a - b for a, b in zip(anchor, anchors[0])] for anchor in anchors[1:]]
            rows = [r for r in rows if any(x != 0 for x in r)]
            basis = nullspace(rows, cols=k) if rows else []
            if basis:
                combo = [Fraction(rng.randint(-9, 9)) for _ in basis]
                if all(x == 0 for x in combo):
                    combo[0] = Fraction(1)
                w = [sum(cb * bv[i] for cb, bv in zip(combo, basis)) for i in range(k)]
                if max(max(abs(x.numerator), x.denominator) for x in w) <= 10**6:
                    directions.append(w)
                    continue
        directions.append([Fraction(rng.randint(-9, 9)) for _ in range(k)])

    # a balanced zero-containment cut wins outright; otherwise keep searching
    # a while before settling for the cheapest balanced cut found
    fallback = None
    fallback_cost = None
    balanced_seen = 0
    for w in directions:
        hit = try_direction(w)
        if hit is None:
            continue
        c, counts, cost = hit
        if cost == 0:
            return _assemble(w, c, monos, dprime), counts
        balanced_seen += 1
        if fallback is None or cost < fallback_cost:
            fallback, fallback_cost = (w, c, counts), cost
        if balanced_seen >= 12:
            break

    if fallback is None and len(classes) <= k:
        # rescue sweep: hyperplane directions normal to sampled point tuples,
        # one point per class (a simultaneous bisector of this kind exists;
        # dense sampling finds an approximate one)
        total = sum(len(c) for c in classes)
        rescue_trials = 1400 if total <= 512 else 300
        for _ in range(rescue_trials):
            anchors = [list(rng.choice(cls)) for cls in lifts_by_class]
            rows = [[a - b for a, b in zip(anchor, anchors[0])] for anchor in anchors[1:]]
            rows = [r for r in rows if any(x != 0 for x in r)]
            basis = nullspace(rows, cols=k) if rows else \
                [[Fraction(int(i == j)) for i in range(k)] for j in range(k)]
            if not basis:
                continue
            combo = [Fraction(rng.randint(-9, 9)) for _ in basis]
            if all(x == 0 for x in combo):
                combo[0] = Fraction(1)
            w = [sum(cb * bv[i] for cb, bv in zip(combo, basis)) for i in range(k)]
            hit = try_direction(w)
            if hit is not None:
                c, counts, cost = hit
                if cost == 0:
                    return _assemble(w, c, monos, dprime), counts
                if fallback is None or cost < fallback_cost:
                    fallback, fallback_cost = (w, c, counts), cost
                if fallback_cost == 0 or balanced_seen >= 4:
                    break
                balanced_seen += 1

    if fallback is not None:
        w, c, counts = fallback
        return _assemble(w, c, monos, dprime), counts
    raise PartitionBalanceError(
        f"no degree-{e} cut reached imbalance <= 1/2 + {delta} "
        f"(best {None if best_score is None else float(best_score):.4f})")


def _assemble(w: list[Fraction], c: Fraction, monos, dprime: int) -> MPoly:
    terms = {m: coef for m, coef in zip(monos, w) if coef != 0}
    if c != 0:
        terms[(0,) * dprime] = -c
    return _canonical_scale(MPoly(dprime, terms))


def _embed(poly: MPoly, nvars: int) -> MPoly:
    if poly.nvars == nvars:
        return poly
    return poly.insert_vars(nvars, list(range(poly.nvars)))


# ---------------------------------------------------------------------------
# partition of point sets


def partition_points(points: list, E: int, dprime: int | None = None,
                     delta: Fraction = DELTA_DEFAULT, seed: int = 0) -> PartitionPoly:
    """Partition polynomial for a finite point set, total degree <= E.

    The factor list starts with structure factors (exact vanishing
    polynomials found by kernel extraction, when the input is degenerate or
    clustered) and continues with halving factors per the degree schedule.
    """
    if E < 1:
        raise ValueError("degree budget must be at least 1")
    if not points:
        raise ValueError("need at least one point")
    pts = [tuple(Fraction(x) for x in p) for p in points]
    d = len(pts[0])
    dprime = d if dprime is None else dprime
    if not 1 <= dprime <= d:
        raise ValueError("dprime out of range")
    rng = random.Random(seed)
    part = PartitionPoly(nvars=d, dprime=dprime, factors=[], delta=delta, requested_degree=E)
    budget = E
    active = list(pts)

    # structure sweep: exact vanishing polynomial on all active points
    while budget >= 1 and active:
        found = _point_kernel(active, min(budget, 2), d)
        if found is None:
            break
        kdeg, poly = found
        part.factors.append(poly)
        part.log.append({"kind": "structure", "degree": kdeg})
        budget -= kdeg
        active = [p for p in active if poly.evaluate(p) != 0]

    schedule = degree_schedule(budget, dprime)
    for level, e in enumerate(schedule):
        if not active:
            break
        classes = _classify_points(active, part.factors)
        poly, counts = find_halving_polynomial(classes, dprime, e, delta, rng)
        emb = _embed(poly, d)
        part.factors.append(emb)
        part.log.append({
            "kind": "halving", "degree": e,
            "imbalances": [[p, m, t] for p, m, t in counts],
        })
        active = [p for p in active if emb.evaluate(p) != 0]
    return part


def _point_kernel(points: list, kmax: int, d: int):
    for k in range(1, kmax + 1):
        ncols = lift_dim(d, k) + 1
        basis = EchelonBasis(ncols)
        for p in points:
            basis.add([Fraction(1)] + veronese_lift(p, k))
            if basis.rank == ncols:
                break
        if basis.rank < ncols:
            null = nullspace(basis.rows, cols=ncols)
            poly = MPoly.from_coeff_vector(d, k, null[0], include_const=True)
            return k, _canonical_scale(poly)
    return None


def _classify_points(points: list, factors: list[MPoly]) -> list[list]:
    groups: dict[tuple, list] = {}
    for p in points:
        key = tuple(1 if f.evaluate(p) > 0 else -1 for f in factors)
        groups.setdefault(key, []).append(p)
    return [groups[k] for k in sorted(groups)]


# ---------------------------------------------------------------------------
# partition of curve sets


def curve_t_window(curve: ParamCurve, bound: Fraction) -> tuple[Fraction, Fraction]:
    """Parameter window where the curve stays inside the coordinate box
    [-bound, bound]^d (exact for lines; a symmetric window otherwise)."""
    if curve.is_line():
        lo, hi = Fraction(-10) * bound, Fraction(10) * bound
        base, dirv = curve.line_base_dir()
        for b, v in zip(base, dirv):
            if v == 0:
                continue
            t1, t2 = (-bound - b) / v, (bound - b) / v
            if t1 > t2:
                t1, t2 = t2, t1
            lo, hi = max(lo, t1), min(hi, t2)
        if lo >= hi:
            lo, hi = Fraction(-1), Fraction(1)
        return lo, hi
    return -bound, bound


def _uncut_midpoint(curve: ParamCurve, factors: list[MPoly],
                    window: tuple[Fraction, Fraction]) -> Fraction:
    """Midpoint of the largest open parameter interval not cut by any factor."""
    lo, hi = window
    cuts: list[Fraction] = []
    for f in factors:
        u = f.compose_upolys(curve.components)
        if not u or udeg(u) < 1:
            continue
        for r in isolate_roots(u):
            if r.compare_rational(lo) > 0 and r.compare_rational(hi) < 0:
                r.refine_below((hi - lo) / 1024)
                cuts.append((r.lo + r.hi) / 2)   # rational stand-in inside the window
    pts = sorted([lo] + cuts + [hi])
    best = (pts[0], pts[1])
    for a, b in zip(pts, pts[1:]):
        if b - a > best[1] - best[0]:
            best = (a, b)
    return (best[0] + best[1]) / 2


def partition_curves(curves: list[ParamCurve], E: int, dprime: int | None = None,
                     delta: Fraction = DELTA_DEFAULT, seed: int = 0,
                     struct_degree_cap: int = 2, probe_structures: bool = True,
                     coord_bound: Fraction | None = None,
                     exclude_divisors: tuple[MPoly, ...] = (),
                     probe_draws: int | None = None) -> PartitionPoly:
    """Partition polynomial adapted to a curve set, total degree <= E.

    Halving levels bisect the curve multiset through one representative point
    per curve (the midpoint of its largest uncut parameter interval,
    resampled every level).  Certification of per-cell loads is deferred to
    partition_audit, which traces curves exactly.
    """
    if E < 1:
        raise ValueError("degree budget must be at least 1")
    if not curves:
        raise ValueError("need at least one curve")
    d = curves[0].ambient_dim
    dprime = d if dprime is None else dprime
    rng = random.Random(seed)
    if coord_bound is None:
        coord_bound = Fraction(1) + max(
            abs(x) for c in curves for comp in c.components for x in comp)
    windows = {c.label: curve_t_window(c, coord_bound) for c in curves}
    part = PartitionPoly(nvars=d, dprime=dprime, factors=[], delta=delta, requested_degree=E)
    budget = E
    active = sorted(curves, key=lambda c: c.label)

    def drop_contained(polys: list[MPoly]):
        nonlocal active
        active = [c for c in active
                  if not any(curve_contained_in(c, f) for f in polys)]

    def _admissible(poly: MPoly) -> bool:
        # a factor divisible by an ambient generator fails to cut the ambient
        # variety properly and carries no new structure
        return not any(g.divides(poly) for g in exclude_divisors)

    # structure sweep: vanishing polynomials on all of, or rich subsets of,
    # the active curves become factors, routing clusters onto the zero set;
    # the full kernel is taken so codimension-2 clusters keep both cutting
    # forms (their pairwise intersections matter downstream)
    while budget >= 1 and active:
        cap = min(budget, struct_degree_cap)
        found = vanishing_kernel_basis(active, cap) if cap >= 1 else None
        polys: list[MPoly] = []
        if found is not None:
            kdeg, basis_polys = found
            for poly in basis_polys:
                if not _admissible(poly):
                    continue
                if budget - kdeg < 0:
                    break
                polys.append(poly)
                budget -= kdeg
        if not polys and probe_structures and cap >= 1:
            probe = _probe_rich_structure(active, cap, rng, admissible=_admissible,
                                          extra_draws=probe_draws)
            if probe is not None:
                kdeg, poly = probe
                polys.append(poly)
                budget -= kdeg
        if not polys:
            break
        for poly in polys:
            part.factors.append(poly)
            part.log.append({"kind": "structure", "degree": poly.degree(),
                             "contained": sum(1 for c in active
                                              if curve_contained_in(c, poly))})
        drop_contained(polys)

    schedule = degree_schedule(budget, dprime)
    for e in schedule:
        if not active:
            break
        reps = {c.label: _uncut_midpoint(c, part.factors, windows[c.label]) for c in active}
        rep_points = {c.label: c.point_at(reps[c.label]) for c in active}
        groups: dict[tuple, list] = {}
        for c in active:
            key = tuple(1 if f.evaluate(rep_points[c.label]) > 0 else -1 for f in part.factors)
            groups.setdefault(key, []).append(rep_points[c.label])
        classes = [groups[k] for k in sorted(groups)]

        def containment_cost(cand: MPoly) -> int:
            # cost against every input curve: a cut through an inactive curve
            # still spawns spurious variety intersections downstream
            cand_emb = _embed(cand, d)
            return sum(1 for c in curves if curve_contained_in(c, cand_emb))

        poly, counts = find_halving_polynomial(classes, dprime, e, delta, rng,
                                               containment_cost=containment_cost)
        emb = _embed(poly, d)
        part.factors.append(emb)
        part.log.append({
            "kind": "halving", "degree": e,
            "imbalances": [[p, m, t] for p, m, t in counts],
        })
        drop_contained([emb])
    return part


def _probe_rich_structure(active: list[ParamCurve], cap: int, rng: random.Random,
                          subset_size: int = 6, extra_draws: int | None = None,
                          admissible=None):
    """Look for a low-degree polynomial vanishing on a large subfamily by
    fitting seeded small subsets and counting exact containments."""
    n = len(active)
    if n < 4:
        return None
    need = max(3, (n + 3) // 4)
    subsets: list[list[ParamCurve]] = []
    step = max(1, subset_size // 2)
    for start in range(0, n - subset_size + 1, step):
        subsets.append(active[start:start + subset_size])
    draws = n if extra_draws is None else extra_draws
    for _ in range(draws):
        subsets.append(rng.sample(active, min(subset_size, n)))
    seen_polys: set = set()
    for sub in subsets:
        found = vanishing_kernel_basis(sub, cap)
        if found is None:
            continue
        kdeg, basis_polys = found
        for poly in basis_polys:
            if poly in seen_polys:
                continue
            seen_polys.add(poly)
            if admissible is not None and not admissible(poly):
                continue
            members = sum(1 for c in active if curve_contained_in(c, poly))
            if members >= need:
                return kdeg, poly
    return None


# ---------------------------------------------------------------------------
# tracing and audit


def curve_cell_trace(partition: PartitionPoly, curve: ParamCurve,
                     t_range: tuple[Fraction, Fraction] | None = None) -> dict:
    """Exact set of sign cells the curve visits over the parameter window.

    Factors containing the whole curve are flagged; a curve inside any factor
    lies in the zero set and visits no open cells.
    """
    if curve.ambient_dim != partition.nvars:
        raise ValueError("dimension mismatch")
    if t_range is None:
        bound = Fraction(1) + max(abs(x) for comp in curve.components for x in comp)
        t_range = curve_t_window(curve, bound)
    lo, hi = Fraction(t_range[0]), Fraction(t_range[1])
    contained = []
    restrictions = []
    for f in partition.factors:
        u = f.compose_upolys(curve.components)
        contained.append(not u)
        restrictions.append(u)
    if any(contained):
        return {"cells": set(), "contained_in_factor": contained, "crossings": 0}

    roots = []
    for u in restrictions:
        if udeg(u) < 1:
            continue
        for r in isolate_roots(u):
            if r.compare_rational(lo) > 0 and r.compare_rational(hi) < 0:
                roots.append(r)
    # order and deduplicate the crossing parameters exactly
    roots_sorted: list = []
    for r in sorted(roots, key=lambda x: (x.lo, x.hi)):
        placed = False
        for ex in roots_sorted:
            if ex.equals(r):
                placed = True
                break
        if not placed:
            roots_sorted.append(r)
    roots_sorted.sort(key=_cmp_key(roots_sorted))

    samples = []
    if not roots_sorted:
        samples.append((lo + hi) / 2)
    else:
        first = roots_sorted[0]
        while not first.lo > lo:
            first.refine()
        samples.append((lo + first.lo) / 2)
        for a, b in zip(roots_sorted, roots_sorted[1:]):
            while not a.hi < b.lo:
                a.refine()
                b.refine()
            samples.append((a.hi + b.lo) / 2)
        last = roots_sorted[-1]
        while not last.hi < hi:
            last.refine()
        samples.append((last.hi + hi) / 2)

    cells = set()
    for t in samples:
        signs = []
        on_zero = False
        for u in restrictions:
            v = ueval(u, t)
            if v == 0:
                on_zero = True
                break
            signs.append(1 if v > 0 else -1)
        if not on_zero:
            cells.add(Cell(tuple(signs)))
    return {"cells": cells, "contained_in_factor": contained, "crossings": len(roots_sorted)}


def _cmp_key(roots):
    import functools

    def cmp(a, b):
        return a.compare(b)

    return functools.cmp_to_key(cmp)


def partition_audit(partition: PartitionPoly, objects, kind: str = "points",
                    t_range=None) -> PartitionAudit:
    """Per-cell load report with the measured constant against the budget
    |objects| * E^(e - dprime), where e is 0 for points and 1 for curves."""
    e_obj = 0 if kind == "points" else 1
    loads: dict[str, int] = {}
    on_zero = 0
    if kind == "points":
        for p in objects:
            cell = sign_cell(partition, p)
            if cell is ON_ZERO_SET:
                on_zero += 1
            else:
                loads[cell.key()] = loads.get(cell.key(), 0) + 1
    elif kind == "curves":
        if t_range is None:
            bound = Fraction(1) + max(
                abs(x) for c in objects for comp in c.components for x in comp)
        for c in objects:
            window = t_range if t_range is not None else curve_t_window(c, bound)
            trace = curve_cell_trace(partition, c, window)
            if any(trace["contained_in_factor"]):
                on_zero += 1
                continue
            if not trace["cells"]:
                on_zero += 1
                continue
            for cell in trace["cells"]:
                loads[cell.key()] = loads.get(cell.key(), 0) + 1
    else:
        raise ValueError("kind must be 'points' or 'curves'")

    n = len(objects)
    total_deg = max(partition.requested_degree or partition.total_degree, 1)
    budget_value = Fraction(n) * Fraction(total_deg) ** (e_obj - partition.dprime)
    max_load = max(loads.values(), default=0)
    c_meas = None if n == 0 or budget_value == 0 else Fraction(max_load) / budget_value
    return PartitionAudit(
        max_cell_load=max_load,
        nonempty_cells=len(loads),
        objects_on_zero_set=on_zero,
        n_objects=n,
        budget_value=budget_value,
        c_meas=c_meas,
        cell_loads=loads,
        degenerate_input=(len(loads) <= 1 and n > 1),
    )
