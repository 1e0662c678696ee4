"""Degree reduction and greedy hypersurface clustering.

min_vanishing_polynomial finds the smallest-degree polynomial vanishing on a
family of curves or surfaces by kernel extraction from an evaluation matrix;
the sample counts (k*deg + 1 per curve, a (k*deg + 1)^2 grid per surface)
make vanishing on the samples equivalent to exact containment, so the output
is certified, not heuristic.  cluster_hypersurfaces grows clusters greedily
and verifies every accepted member exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import EchelonBasis, MPoly, monomials_upto, nullspace, veronese_lift
from .geometry import ParamCurve, SurfacePatch, curve_contained_in, surface_contained_in


def _object_samples(obj, k: int) -> list[tuple[Fraction, ...]]:
    if isinstance(obj, ParamCurve):
        n = k * max(1, obj.degree) + 1
        return [obj.point_at(t) for t in range(n)]
    if isinstance(obj, SurfacePatch):
        return obj.sample_points(k)
    raise TypeError(f"cannot sample {type(obj).__name__}")


def _object_dim(obj) -> int:
    return obj.ambient_dim


def _row(point, k: int) -> list[Fraction]:
    return [Fraction(1)] + veronese_lift(point, k)


def evaluation_rows(obj, k: int) -> list[list[Fraction]]:
    """Evaluation-matrix rows of one object at lift degree k (constant column
    first, then monomials in graded-lex order)."""
    return [_row(p, k) for p in _object_samples(obj, k)]


def _kernel_poly(objects, k: int) -> MPoly | None:
    """First kernel vector (in column order) of the joint evaluation matrix,
    as a polynomial of degree <= k, or None if the matrix has full rank."""
    d = _object_dim(objects[0])
    ncols = len(monomials_upto(d, k)) + 1
    basis = EchelonBasis(ncols)
    for obj in objects:
        for row in evaluation_rows(obj, k):
            basis.add(row)
            if basis.rank == ncols:
                return None
    null = nullspace(basis.rows, cols=ncols)
    if not null:
        return None
    vec = null[0]
    poly = MPoly.from_coeff_vector(d, k, vec, include_const=True)
    return _canonical_scale(poly)


def _canonical_scale(poly: MPoly) -> MPoly:
    """Primitive integer coefficients with positive graded-lex lead."""
    from math import gcd

    if poly.is_zero():
        return poly
    denoms = 1
    for c in poly.terms.values():
        denoms = denoms * c.denominator // gcd(denoms, c.denominator)
    nums = [int(c * denoms) for c in poly.terms.values()]
    g = 0
    for v in nums:
        g = gcd(g, abs(v))
    scale = Fraction(denoms, g)
    out = poly.scale(scale)
    if out.lead()[1] < 0:
        out = -out
    return out


def min_vanishing_polynomial(objects, kmax: int):
    """Smallest k <= kmax with a nonzero polynomial of degree <= k vanishing
    on every object, as (k, polynomial); None if no degree works.

    Vanishing on the sample grids implies exact containment for parametrized
    objects, so the returned polynomial contains every input exactly.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    if not objects:
        raise ValueError("need at least one object")
    for k in range(1, kmax + 1):
        poly = _kernel_poly(objects, k)
        if poly is not None:
            return k, poly
    return None


def vanishing_kernel_basis(objects, kmax: int):
    """All independent vanishing polynomials at the smallest working degree.

    Returns (k, [polynomials]) or None.  Useful when the objects span a
    variety of codimension greater than one (a 2-flat in R^4 is cut out by
    two linear forms, and both matter downstream).
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    d = _object_dim(objects[0])
    for k in range(1, kmax + 1):
        ncols = len(monomials_upto(d, k)) + 1
        basis = EchelonBasis(ncols)
        for obj in objects:
            for row in evaluation_rows(obj, k):
                basis.add(row)
            if basis.rank == ncols:
                break
        if basis.rank < ncols:
            null = nullspace(basis.rows, cols=ncols)
            polys = [_canonical_scale(MPoly.from_coeff_vector(d, k, v, include_const=True))
                     for v in null]
            return k, polys
    return None


@dataclass
class ClusterResult:
    hypersurfaces: list[tuple[MPoly, list[str]]]
    residual: list[str]
    iterations: int
    A_used: Fraction

    def to_json(self) -> dict:
        return {
            "hypersurfaces": [{"poly": p.to_json(), "members": m}
                              for p, m in self.hypersurfaces],
            "residual": self.residual,
            "iterations": self.iterations,
            "A_used": f"{self.A_used.numerator}/{self.A_used.denominator}",
        }


def _contained(obj, poly: MPoly) -> bool:
    if isinstance(obj, ParamCurve):
        return curve_contained_in(obj, poly)
    return surface_contained_in(obj, poly)


def cluster_hypersurfaces(objects, a_threshold, degcap: int) -> ClusterResult:
    """Greedy clustering of curves or surfaces into low-degree hypersurfaces.

    Seeds are scanned in label order; a cluster grows by adding any object
    that keeps a degree <= degcap vanishing polynomial alive, and is accepted
    once its membership reaches the threshold.  Accepted members are removed
    and the scan restarts; objects that never joined an accepted cluster form
    the residual.
    """
    if degcap < 1:
        raise ValueError("degcap must be >= 1")
    a_threshold = Fraction(a_threshold)
    if a_threshold < 1:
        raise ValueError("cluster size threshold must be >= 1")
    remaining = sorted(objects, key=lambda o: o.label)
    d = _object_dim(remaining[0]) if remaining else 0
    ncols = len(monomials_upto(d, degcap)) + 1 if remaining else 0
    accepted: list[tuple[MPoly, list[str]]] = []
    iterations = 0

    progress = True
    while progress and remaining:
        progress = False
        for seed_idx in range(len(remaining)):
            seed = remaining[seed_idx]
            basis = EchelonBasis(ncols)
            for row in evaluation_rows(seed, degcap):
                basis.add(row)
            if basis.rank == ncols:
                continue
            cluster = [seed]
            for cand in remaining:
                if cand is seed:
                    continue
                rows = evaluation_rows(cand, degcap)
                snap = basis.snapshot()
                for row in rows:
                    basis.add(row)
                if basis.rank < ncols:
                    cluster.append(cand)
                else:
                    basis.restore(snap)
            if len(cluster) >= a_threshold:
                found = min_vanishing_polynomial(cluster, degcap)
                assert found is not None, "grown cluster lost its vanishing polynomial"
                _, poly = found
                for member in cluster:
                    assert _contained(member, poly), "member fails exact containment"
                accepted.append((poly, [o.label for o in cluster]))
                taken = {o.label for o in cluster}
                remaining = [o for o in remaining if o.label not in taken]
                iterations += 1
                progress = True
                break
    return ClusterResult(
        hypersurfaces=accepted,
        residual=[o.label for o in remaining],
        iterations=iterations,
        A_used=a_threshold,
    )


def rich_curve_degree_audit(surface: SurfacePatch, curves: list[ParamCurve], c1) -> dict:
    """Check the rich-family degree bound on one surface.

    Requires every curve to lie in the surface; reports whether the rich-point
    hypothesis |P2| >= c1*|curves| holds and whether deg(surface) <= 100*D^2.
    """
    from .incidence import two_rich_points

    for c in curves:
        if not surface.contains_curve(c):
            raise ValueError(f"curve {c.label!r} is not contained in surface {surface.label!r}")
    c1 = Fraction(c1)
    rep = two_rich_points(curves)
    dmax = max((c.degree for c in curves), default=1)
    hypothesis = rep.two_rich_count >= c1 * len(curves)
    degree_ok = surface.degree <= 100 * dmax * dmax
    return {
        "two_rich_count": rep.two_rich_count,
        "n_curves": len(curves),
        "hypothesis": hypothesis,
        "degree_ok": degree_ok,
        "applicable": hypothesis,
        "violation": hypothesis and not degree_ok,
    }
