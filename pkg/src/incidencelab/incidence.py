"""Exact counting of rich points, rich curves, and union bounds.

The two-rich point set is a set of distinct points (multiplicity is carried
as metadata), deduplicated across curve pairs by exact coordinate
comparison.  Pairs are visited in label order; optional thread parallelism
only fans out the pairwise tests and merges in the same deterministic order.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import coord_eq, coord_normalize, coord_to_json
from .geometry import (
    IDENTICAL,
    IdenticalCurvesError,
    MPoly,
    ParamCurve,
    RichPoint,
    SurfacePatch,
    Variety,
    curve_contained_in,
    curves_identical,
    common_line_of_flats,
    intersect_curves,
)


@dataclass
class IncidenceReport:
    n_objects: int
    rich_points: list[RichPoint]
    counts_by_multiplicity: dict[int, int]
    pair_tests: int
    wall_time: float = 0.0

    @property
    def two_rich_count(self) -> int:
        return self.counts_by_multiplicity.get(2, 0)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "n_objects": self.n_objects,
            "counts_by_multiplicity": {str(k): v for k, v in
                                       sorted(self.counts_by_multiplicity.items())},
            "pair_tests": self.pair_tests,
            "points": [p.to_json() for p in self.rich_points],
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def to_csv(self) -> str:
        import json as _json

        lines = ["point;multiplicity"]
        for p in self.rich_points:
            coords = _json.dumps([coord_to_json(c) for c in p.coords], separators=(",", ":"))
            lines.append(f"{coords};{p.multiplicity()}")
        return "\n".join(lines) + "\n"


class _PointPool:
    """Deduplicating accumulator for intersection points."""

    def __init__(self):
        self.rational: dict[tuple, RichPoint] = {}
        self.algebraic: list[RichPoint] = []

    def add(self, coords: tuple, labels: tuple[str, str], params: tuple) -> None:
        coords = tuple(coord_normalize(c) for c in coords)
        new_params = {labels[0]: params[0], labels[1]: params[1]}
        if all(isinstance(c, Fraction) for c in coords):
            hit = self.rational.get(coords)
            if hit is None:
                self.rational[coords] = RichPoint(coords, frozenset(labels), new_params)
            else:
                hit.incident_labels = hit.incident_labels | frozenset(labels)
                hit.params.update(new_params)
            return
        for p in self.algebraic:
            if all(coord_eq(a, b) for a, b in zip(p.coords, coords)):
                p.incident_labels = p.incident_labels | frozenset(labels)
                p.params.update(new_params)
                return
        self.algebraic.append(RichPoint(coords, frozenset(labels), new_params))

    def finish(self) -> list[RichPoint]:
        import functools

        pts = list(self.rational.values()) + self.algebraic
        rationals = sorted((p for p in pts if all(isinstance(c, Fraction) for c in p.coords)),
                           key=lambda p: p.coords)
        others = sorted((p for p in pts if not all(isinstance(c, Fraction) for c in p.coords)),
                        key=functools.cmp_to_key(lambda a, b: a.sort_key_cmp(b)))
        return rationals + others


def two_rich_points(curves: list[ParamCurve], threads: int = 1) -> IncidenceReport:
    """The exact set of distinct points lying on at least two of the curves.

    Raises IdenticalCurvesError if two inputs have the same image.
    """
    t0 = time.perf_counter()
    ordered = sorted(curves, key=lambda c: c.label)
    pairs = [(i, j) for i in range(len(ordered)) for j in range(i + 1, len(ordered))]

    def work(pair):
        i, j = pair
        res = intersect_curves(ordered[i], ordered[j])
        if res is IDENTICAL:
            raise IdenticalCurvesError(
                f"curves {ordered[i].label!r} and {ordered[j].label!r} have identical images")
        return pair, res

    pool = _PointPool()
    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, pairs))
    else:
        results = [work(p) for p in pairs]
    for (i, j), res in results:
        for coords, t, s in res:
            pool.add(coords, (ordered[i].label, ordered[j].label), (t, s))

    points = pool.finish()
    counts: dict[int, int] = {}
    if points:
        top = max(p.multiplicity() for p in points)
        for k in range(2, top + 1):
            counts[k] = sum(1 for p in points if p.multiplicity() >= k)
    report = IncidenceReport(
        n_objects=len(curves),
        rich_points=points,
        counts_by_multiplicity=counts,
        pair_tests=len(pairs),
        wall_time=time.perf_counter() - t0,
    )
    return report


def curves_in_variety(curves: list[ParamCurve], variety) -> list[ParamCurve]:
    """Exactly the curves contained in the zero set of every generator."""
    if isinstance(variety, MPoly):
        gens = [variety]
    elif isinstance(variety, Variety):
        gens = list(variety.generators)
    else:
        raise TypeError("variety must be an MPoly or a Variety")
    out = []
    for c in curves:
        if all(curve_contained_in(c, g) for g in gens):
            out.append(c)
    return out


def two_rich_curves(surfaces: list[SurfacePatch],
                    candidates: list[ParamCurve] | None = None
                    ) -> list[tuple[ParamCurve, list[str]]]:
    """Curves contained in at least two of the surfaces.

    With no candidate list every surface must be a flat; the candidate set is
    then all pairwise intersection lines, which makes the result exhaustive.
    For parametrized surfaces the result is exhaustive relative to the
    candidates supplied.
    """
    surfaces = sorted(surfaces, key=lambda s: s.label)
    if candidates is None:
        if not all(s.kind == "flat" for s in surfaces):
            raise ValueError("candidates are required unless all surfaces are flats")
        candidates = []
        for i in range(len(surfaces)):
            for j in range(i + 1, len(surfaces)):
                meet = common_line_of_flats(surfaces[i], surfaces[j])
                if meet.kind == "line":
                    if not any(curves_identical(meet.line, c) for c in candidates):
                        candidates.append(meet.line)
    out = []
    for cand in candidates:
        containing = [s.label for s in surfaces if s.contains_curve(cand)]
        if len(containing) >= 2:
            out.append((cand, containing))
    return out


def incidence_sum(surfaces: list[SurfacePatch],
                  candidates: list[ParamCurve] | None = None) -> int:
    """Total curve-surface containment count over the two-rich curves."""
    return sum(len(cont) for _, cont in two_rich_curves(surfaces, candidates))


def union_bound_check(surfaces: list[SurfacePatch], curves: list[ParamCurve],
                      c1) -> dict:
    """Union-counting report: does each surface hold >= c1*|surfaces| curves,
    and if so does the containment sum stay within twice the union size; the
    min(A^2, A*|S|) lower-bound comparison is always reported."""
    c1 = Fraction(c1)
    members: dict[str, set[str]] = {}
    for s in sorted(surfaces, key=lambda x: x.label):
        members[s.label] = {c.label for c in curves if s.contains_curve(c)}
    sizes = {lab: len(v) for lab, v in members.items()}
    union: set[str] = set()
    for v in members.values():
        union |= v
    lhs = sum(sizes.values())
    rhs = 2 * len(union)
    a = min(sizes.values()) if sizes else 0
    hypothesis = all(size >= c1 * len(surfaces) for size in sizes.values()) if surfaces else False
    return {
        "hypothesis_holds": hypothesis,
        "lhs": lhs,
        "rhs": rhs,
        "inequality_holds": (lhs <= rhs) if hypothesis else None,
        "union_size": len(union),
        "min_member_count": a,
        "min_bound": min(a * a, a * len(surfaces)),
        "min_bound_attained": len(union) >= min(a * a, a * len(surfaces)),
        "per_surface": sizes,
    }
