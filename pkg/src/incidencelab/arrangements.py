"""Deterministic, seedable generators of curve and surface arrangements.

Every generator is a pure function of its parameters and seed.  Genericity is
verified rather than assumed: draws that collide with a degenerate
configuration are rejected and retried, with a bounded retry count so a bad
seed fails loudly instead of looping.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exactmath import MPoly, nullspace, rational_from_json, rational_to_json, udeg, upoly
from .geometry import ParamCurve, SurfacePatch, curves_identical, common_line_of_flats, curve_contained_in

MAX_RETRIES = 64


class ArrangementFormatError(ValueError):
    """Malformed arrangement file."""


@dataclass
class Arrangement:
    ambient_dim: int
    curves: list[ParamCurve] = field(default_factory=list)
    surfaces: list[SurfacePatch] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = [c.label for c in self.curves] + [s.label for s in self.surfaces]
        if len(labels) != len(set(labels)):
            raise ArrangementFormatError("duplicate labels in arrangement")
        for c in self.curves:
            if c.ambient_dim != self.ambient_dim:
                raise ArrangementFormatError("curve dimension mismatch")
        for s in self.surfaces:
            if s.ambient_dim != self.ambient_dim:
                raise ArrangementFormatError("surface dimension mismatch")

    def curve_map(self) -> dict[str, ParamCurve]:
        return {c.label: c for c in self.curves}

    def coordinate_bound(self) -> Fraction:
        """1 + the largest |coefficient| appearing in any object."""
        b = Fraction(1)
        for c in self.curves:
            for comp in c.components:
                for x in comp:
                    b = max(b, abs(x))
        for s in self.surfaces:
            for comp in s.components:
                for x in comp.terms.values():
                    b = max(b, abs(x))
        return b + 1

    def to_json(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "curves": [c.to_json() for c in self.curves],
            "surfaces": [s.to_json() for s in self.surfaces],
            "provenance": self.provenance,
        }

    @staticmethod
    def from_json(data: dict) -> Arrangement:
        try:
            dim = int(data["dim"])
            curves = [ParamCurve.from_json(c, dim) for c in data.get("curves", [])]
            surfaces = [SurfacePatch.from_json(s, dim) for s in data.get("surfaces", [])]
        except (KeyError, TypeError, ZeroDivisionError, ValueError) as e:
            raise ArrangementFormatError(f"bad arrangement data: {e}") from e
        for c in curves:
            for comp in c.components:
                for x in comp:
                    if x.denominator == 0:   # unreachable with Fraction, kept as guard
                        raise ArrangementFormatError("zero denominator")
        return Arrangement(dim, curves, surfaces, data.get("provenance", {}))


def save(arr: Arrangement, path) -> None:
    Path(path).write_text(json.dumps(arr.to_json(), indent=2) + "\n", encoding="utf-8")


def load(path) -> Arrangement:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ArrangementFormatError(f"malformed JSON: {e}") from e
    return Arrangement.from_json(data)


# ---------------------------------------------------------------------------
# helpers


def _rand_int_vec(rng: random.Random, d: int, bound: int) -> list[Fraction]:
    return [Fraction(rng.randint(-bound, bound)) for _ in range(d)]


def _nonzero_vec(rng: random.Random, d: int, bound: int) -> list[Fraction]:
    for _ in range(MAX_RETRIES):
        v = _rand_int_vec(rng, d, bound)
        if any(x != 0 for x in v):
            return v
    raise RuntimeError("could not draw a nonzero vector")


def _add_line_checked(lines: list[ParamCurve], cand: ParamCurve) -> bool:
    return not any(curves_identical(cand, ex) for ex in lines)


# ---------------------------------------------------------------------------
# curve generators


def gen_random_lines(d: int, n: int, coord_bound: int = 8, seed: int = 0) -> Arrangement:
    """n lines with integer base points and directions on a bounded lattice."""
    if n < 1 or coord_bound < 1:
        raise ValueError("need n >= 1 and coord_bound >= 1")
    rng = random.Random(seed)
    lines: list[ParamCurve] = []
    while len(lines) < n:
        for attempt in range(MAX_RETRIES):
            base = _rand_int_vec(rng, d, coord_bound)
            dirv = _nonzero_vec(rng, d, coord_bound)
            cand = ParamCurve.line(base, dirv, f"L{len(lines)}")
            if _add_line_checked(lines, cand):
                lines.append(cand)
                break
        else:
            raise RuntimeError("exhausted retries drawing distinct lines")
    return Arrangement(d, lines, [], {
        "generator": "random-lines", "seed": seed,
        "params": {"dim": d, "n": n, "coord_bound": coord_bound}})


def gen_regulus_lines(n_per_ruling: int, seed: int = 0) -> Arrangement:
    """Both rulings of z = xy: lines (a, t, a t) and (t, b, b t)."""
    if n_per_ruling < 1:
        raise ValueError("need n_per_ruling >= 1")
    rng = random.Random(seed)
    span = max(3 * n_per_ruling, 8)
    avals = rng.sample(range(-span, span + 1), n_per_ruling)
    bvals = rng.sample(range(-span, span + 1), n_per_ruling)
    lines = []
    for i, a in enumerate(avals):
        a = Fraction(a)
        lines.append(ParamCurve([upoly([a]), upoly([0, 1]), upoly([0, a])], f"A{i}", ambient_dim=3))
    for i, b in enumerate(bvals):
        b = Fraction(b)
        lines.append(ParamCurve([upoly([0, 1]), upoly([b]), upoly([0, b])], f"B{i}", ambient_dim=3))
    return Arrangement(3, lines, [], {
        "generator": "regulus", "seed": seed, "params": {"n_per_ruling": n_per_ruling}})


def gen_lines_in_flat(d: int, n: int, flat: SurfacePatch | None = None, seed: int = 0,
                      coord_bound: int = 8, common_point: bool = False) -> Arrangement:
    """n lines inside a 2-flat, generic within it (pairwise meeting, no three
    concurrent) unless common_point forces a single shared point."""
    if flat is None:
        flat = SurfacePatch(ambient_dim=d, kind="flat", label="__flat__",
                            point=[Fraction(0)] * d,
                            dirs=[[Fraction(int(i == 0)) for i in range(d)],
                                  [Fraction(int(i == 1)) for i in range(d)]])
    if flat.kind != "flat":
        raise ValueError("flat must be 2-dimensional affine")
    rng = random.Random(seed)
    p0, (u, v) = flat.point, flat.dirs

    def embed(alpha: Fraction, beta: Fraction) -> list[Fraction]:
        return [p0[i] + alpha * u[i] + beta * v[i] for i in range(d)]

    lines: list[ParamCurve] = []
    params2d: list[tuple] = []          # (point2d, dir2d) in flat coordinates
    meets: list[tuple] = []             # existing pairwise meets, 2d coords
    center = (Fraction(0), Fraction(0))
    while len(lines) < n:
        for attempt in range(MAX_RETRIES):
            if common_point:
                pt2 = center
                dir2 = (Fraction(rng.randint(-coord_bound, coord_bound)),
                        Fraction(rng.randint(-coord_bound, coord_bound)))
            else:
                pt2 = (Fraction(rng.randint(-coord_bound, coord_bound)),
                       Fraction(rng.randint(-coord_bound, coord_bound)))
                dir2 = (Fraction(rng.randint(-coord_bound, coord_bound)),
                        Fraction(rng.randint(-coord_bound, coord_bound)))
            if dir2 == (0, 0):
                continue
            if any(dir2[0] * q[1] - dir2[1] * q[0] == 0 for _, q in params2d):
                continue    # parallel to an existing line
            if not common_point and any(
                    (m[0] - pt2[0]) * dir2[1] - (m[1] - pt2[1]) * dir2[0] == 0 for m in meets):
                continue    # would create a triple point
            new_meets = []
            ok = True
            for p, q in params2d:
                det = dir2[0] * (-q[1]) - dir2[1] * (-q[0])
                rhs = (p[0] - pt2[0], p[1] - pt2[1])
                t = (rhs[0] * (-q[1]) - rhs[1] * (-q[0])) / det
                mx, my = pt2[0] + t * dir2[0], pt2[1] + t * dir2[1]
                new_meets.append((mx, my))
            base = embed(*pt2)
            dirv = [dir2[0] * u[i] + dir2[1] * v[i] for i in range(d)]
            cand = ParamCurve.line(base, dirv, f"F{len(lines)}")
            if not _add_line_checked(lines, cand):
                continue
            lines.append(cand)
            params2d.append((pt2, dir2))
            meets.extend(new_meets)
            break
        else:
            raise RuntimeError("exhausted retries drawing generic lines in flat")
    return Arrangement(d, lines, [], {
        "generator": "flat-lines", "seed": seed,
        "params": {"dim": d, "n": n, "coord_bound": coord_bound, "common_point": common_point}})


def gen_grid_lines(k: int) -> Arrangement:
    """3 k^2 axis-parallel lines through the k x k x k integer grid."""
    if k < 2:
        raise ValueError("need k >= 2")
    lines = []
    for i in range(k):
        for j in range(k):
            lines.append(ParamCurve.line([0, i, j], [1, 0, 0], f"X{i}_{j}"))
            lines.append(ParamCurve.line([i, 0, j], [0, 1, 0], f"Y{i}_{j}"))
            lines.append(ParamCurve.line([i, j, 0], [0, 0, 1], f"Z{i}_{j}"))
    return Arrangement(3, lines, [], {"generator": "grid", "seed": 0, "params": {"k": k}})


def _hyperplane_frame(f: MPoly) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Point on the hyperplane f = 0 plus an integer basis of its directions."""
    d = f.nvars
    coeffs = [f.terms.get(tuple(int(i == j) for j in range(d)), Fraction(0)) for i in range(d)]
    const = f.terms.get((0,) * d, Fraction(0))
    i0 = next(i for i in range(d) if coeffs[i] != 0)
    point = [Fraction(0)] * d
    point[i0] = -const / coeffs[i0]
    basis = nullspace([coeffs], cols=d)
    return point, basis


def gen_lines_in_hypersurface(f: MPoly, n: int, seed: int = 0, coord_bound: int = 8) -> Arrangement:
    """n lines inside Z(f) for supported f: hyperplanes, or two-term ruled
    quadrics of graph type a*x_k + b*x_i*x_j."""
    if n < 1:
        raise ValueError("need n >= 1")
    d = f.nvars
    rng = random.Random(seed)
    lines: list[ParamCurve] = []

    if f.degree() == 1:
        point, basis = _hyperplane_frame(f)
        while len(lines) < n:
            for attempt in range(MAX_RETRIES):
                coeffs_b = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in basis]
                coeffs_v = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in basis]
                base = [point[i] + sum(cb * bv[i] for cb, bv in zip(coeffs_b, basis))
                        for i in range(d)]
                dirv = [sum(cv * bv[i] for cv, bv in zip(coeffs_v, basis)) for i in range(d)]
                if all(x == 0 for x in dirv):
                    continue
                cand = ParamCurve.line(base, dirv, f"H{len(lines)}")
                if _add_line_checked(lines, cand):
                    lines.append(cand)
                    break
            else:
                raise RuntimeError("exhausted retries in hyperplane generator")
    elif f.degree() == 2 and len(f.terms) == 2:
        items = sorted(f.terms.items(), key=lambda kv: sum(kv[0]))
        (ek, a), (eij, b) = items
        if sum(ek) != 1 or sum(eij) != 2 or max(eij) != 1:
            raise ValueError("unsupported hypersurface: need a*x_k + b*x_i*x_j shape")
        k = ek.index(1)
        i, j = [idx for idx, v in enumerate(eij) if v == 1]
        ratio = -b / a      # x_k = ratio * x_i * x_j on Z(f)
        free = [idx for idx in range(d) if idx not in (i, j, k)]
        count = 0
        while len(lines) < n:
            for attempt in range(MAX_RETRIES):
                c = Fraction(rng.randint(-coord_bound, coord_bound))
                extras = {idx: Fraction(rng.randint(-coord_bound, coord_bound)) for idx in free}
                comps = [upoly([extras[idx]]) for idx in range(d)]
                if count % 2 == 0:
                    # ruling x_i = c:  x_j = t, x_k = ratio*c*t
                    comps[i] = upoly([c])
                    comps[j] = upoly([0, 1])
                    comps[k] = upoly([0, ratio * c])
                else:
                    comps[i] = upoly([0, 1])
                    comps[j] = upoly([c])
                    comps[k] = upoly([0, ratio * c])
                if all(udeg(cc) < 1 for cc in comps):
                    continue
                cand = ParamCurve(comps, f"Q{len(lines)}", ambient_dim=d)
                if not curve_contained_in(cand, f):
                    continue
                if _add_line_checked(lines, cand):
                    lines.append(cand)
                    count += 1
                    break
            else:
                raise RuntimeError("exhausted retries in quadric generator")
    else:
        raise ValueError("unsupported hypersurface for line generation")

    return Arrangement(d, lines, [], {
        "generator": "hypersurface-lines", "seed": seed,
        "params": {"n": n, "coord_bound": coord_bound, "f": f.to_json()}})


# ---------------------------------------------------------------------------
# flat generators


def gen_random_flats(n: int, seed: int = 0, coord_bound: int = 8) -> Arrangement:
    """n generic 2-flats in R^4 (pairwise meets are points or empty)."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    flats: list[SurfacePatch] = []
    while len(flats) < n:
        for attempt in range(MAX_RETRIES):
            base = _rand_int_vec(rng, 4, coord_bound)
            d1 = _nonzero_vec(rng, 4, coord_bound)
            d2 = _nonzero_vec(rng, 4, coord_bound)
            try:
                cand = SurfacePatch(ambient_dim=4, kind="flat", label=f"P{len(flats)}",
                                    point=base, dirs=[d1, d2])
            except ValueError:
                continue
            if all(common_line_of_flats(cand, ex).kind in ("point", "empty") for ex in flats):
                flats.append(cand)
                break
        else:
            raise RuntimeError("exhausted retries drawing generic flats")
    return Arrangement(4, [], flats, {
        "generator": "random-flats", "seed": seed, "params": {"n": n, "coord_bound": coord_bound}})


def gen_flats_in_hyperplane(n: int, hyperplane: MPoly | None = None, seed: int = 0,
                            coord_bound: int = 8, label_prefix: str = "P") -> Arrangement:
    """n distinct 2-flats confined to a hyperplane of R^4."""
    if n < 1:
        raise ValueError("need n >= 1")
    if hyperplane is None:
        hyperplane = MPoly.var(4, 3)        # x_4 = 0
    if hyperplane.nvars != 4 or hyperplane.degree() != 1:
        raise ValueError("hyperplane must be a linear polynomial in 4 variables")
    rng = random.Random(seed)
    point, basis = _hyperplane_frame(hyperplane)
    flats: list[SurfacePatch] = []
    while len(flats) < n:
        for attempt in range(MAX_RETRIES):
            cb = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in basis]
            c1 = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in basis]
            c2 = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in basis]
            base = [point[i] + sum(c * bv[i] for c, bv in zip(cb, basis)) for i in range(4)]
            d1 = [sum(c * bv[i] for c, bv in zip(c1, basis)) for i in range(4)]
            d2 = [sum(c * bv[i] for c, bv in zip(c2, basis)) for i in range(4)]
            try:
                cand = SurfacePatch(ambient_dim=4, kind="flat",
                                    label=f"{label_prefix}{len(flats)}", point=base, dirs=[d1, d2])
            except ValueError:
                continue
            if all(common_line_of_flats(cand, ex).kind != "identical" for ex in flats):
                flats.append(cand)
                break
        else:
            raise RuntimeError("exhausted retries drawing flats in hyperplane")
    return Arrangement(4, [], flats, {
        "generator": "flats-hyperplane", "seed": seed,
        "params": {"n": n, "coord_bound": coord_bound, "hyperplane": hyperplane.to_json()}})


def gen_flats_through_line(n: int, line: ParamCurve | None = None, seed: int = 0,
                           coord_bound: int = 8) -> Arrangement:
    """n distinct 2-flats in R^4 all containing a common line."""
    if line is None:
        line = ParamCurve.line([0, 0, 0, 0], [1, 0, 0, 0], "__axis__")
    if not line.is_line() or line.ambient_dim != 4:
        raise ValueError("need a line in R^4")
    rng = random.Random(seed)
    base, dirv = line.line_base_dir()
    flats: list[SurfacePatch] = []
    while len(flats) < n:
        for attempt in range(MAX_RETRIES):
            other = _nonzero_vec(rng, 4, coord_bound)
            try:
                cand = SurfacePatch(ambient_dim=4, kind="flat", label=f"P{len(flats)}",
                                    point=base, dirs=[dirv, other])
            except ValueError:
                continue
            if all(common_line_of_flats(cand, ex).kind != "identical" for ex in flats):
                flats.append(cand)
                break
        else:
            raise RuntimeError("exhausted retries drawing flats through line")
    return Arrangement(4, [], flats, {
        "generator": "flats-line", "seed": seed, "params": {"n": n, "coord_bound": coord_bound}})
