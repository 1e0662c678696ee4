"""Independent brute-force two-rich point counter.

This is the reference path for oracle diffs: iterate all pairs, intersect,
deduplicate by exact comparison.  The line-line solve goes through the
generic rational row reduction of the stacked d x 2 system (a different code
path from the production intersection routine), and deduplication is a
sort-and-group pass rather than a hash pool.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .exactmath import solve_full
from .geometry import IDENTICAL, IdenticalCurvesError, ParamCurve, RichPoint, intersect_curves


def _line_meet_rref(c1: ParamCurve, c2: ParamCurve):
    """Line-line meet via rref of the stacked linear system."""
    b1, v1 = c1.line_base_dir()
    b2, v2 = c2.line_base_dir()
    d = len(b1)
    a = [[v1[i], -v2[i]] for i in range(d)]
    rhs = [b2[i] - b1[i] for i in range(d)]
    sol = solve_full(a, rhs)
    if sol is None:
        return None
    x0, null = sol
    if null:
        raise IdenticalCurvesError(
            f"curves {c1.label!r} and {c2.label!r} have identical images")
    t = x0[0]
    return tuple(b1[i] + t * v1[i] for i in range(d)), t, x0[1]


def brute_force_two_rich_points(curves: list[ParamCurve]) -> list[RichPoint]:
    """Exact two-rich point set, ordered like the production report."""
    ordered = sorted(curves, key=lambda c: c.label)
    hits = []
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            a, b = ordered[i], ordered[j]
            if a.is_line() and b.is_line():
                got = _line_meet_rref(a, b)
                pts = [got] if got else []
            else:
                got = intersect_curves(a, b)
                if got is IDENTICAL:
                    raise IdenticalCurvesError(
                        f"curves {a.label!r} and {b.label!r} have identical images")
                pts = got
            for coords, t, s in pts:
                hits.append((coords, a.label, b.label, t, s))

    rational = [h for h in hits if all(isinstance(c, Fraction) for c in h[0])]
    algebraic = [h for h in hits if not all(isinstance(c, Fraction) for c in h[0])]
    rational.sort(key=lambda h: h[0])
    groups: list[RichPoint] = []
    for coords, la, lb, t, s in rational:
        if groups and groups[-1].coords == coords:
            groups[-1].incident_labels = groups[-1].incident_labels | {la, lb}
            groups[-1].params.update({la: t, lb: s})
        else:
            groups.append(RichPoint(coords, frozenset((la, lb)), {la: t, lb: s}))
    alg_groups: list[RichPoint] = []
    for coords, la, lb, t, s in algebraic:
        placed = False
        for g in alg_groups:
            if all(_coord_eq(x, y) for x, y in zip(g.coords, coords)):
                g.incident_labels = g.incident_labels | {la, lb}
                g.params.update({la: t, lb: s})
                placed = True
                break
        if not placed:
            alg_groups.append(RichPoint(coords, frozenset((la, lb)), {la: t, lb: s}))
    alg_groups.sort(key=functools.cmp_to_key(lambda a, b: a.sort_key_cmp(b)))
    return groups + alg_groups


def _coord_eq(a, b) -> bool:
    from .exactmath import coord_eq

    return coord_eq(a, b)
