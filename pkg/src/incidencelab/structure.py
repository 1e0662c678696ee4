"""Structure decompositions for curve arrangements in R^3 and R^4.

Both pipelines follow the same skeleton: partition the curves with a
low-degree polynomial whose zero-set components become candidate varieties,
recurse inside the cells, then process the candidate sets with exact pruning
thresholds; the four-dimensional pipeline additionally exchanges material
between the 3-dimensional and 2-dimensional candidate sets (pairwise variety
intersections, per-variety re-decomposition, component splitting, degree and
count pruning, and hypersurface clustering).  All threshold comparisons of
the form count vs coeff * n^(p/q) are carried out in exact integer
arithmetic on the exponents.

Residual points are computed by exact counting at the top level: the
decomposition's two-rich points minus every point covered inside a member
family.  The asymptotic cardinality claims of the underlying bounds are
existential; audits report the measured constants instead of asserting them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .exactmath import EchelonBasis, MPoly, monomials_upto, nullspace
from .geometry import (
    ParamCurve,
    RichPoint,
    Variety,
    curve_contained_in,
    curves_identical,
    irreducible_components,
)
from .incidence import IncidenceReport, two_rich_points
from .partition import partition_curves
from .reduction import evaluation_rows


@dataclass
class DecompConfig:
    """Pipeline parameters.  Exponent arithmetic is exact (epsilon rational)."""

    epsilon: Fraction = Fraction(1, 10)
    partition_degree: int = 4
    base_case_n: int = 8
    variety_prune_factor: Fraction = Fraction(2)      # the "twice" in the variety prune
    surface_prune_coeff: Fraction = Fraction(1)       # count-prune coefficient, desk scale
    degcap_surface: int | None = None                 # audit bound, default 100 * D^2
    degcap_hypersurface: int | None = None            # cluster search degree cap
    delta: Fraction = Fraction(1, 16)
    struct_degree_cap: int = 2
    seed: int = 0
    max_depth: int = 24
    threads: int = 1

    def resolved_degcaps(self, max_curve_degree: int) -> tuple[int, int]:
        # the surface cap is a declared-degree audit bound and can afford the
        # full 100 D^2; the hypersurface cap sizes an evaluation matrix whose
        # column count is binomial(4 + cap, 4), so it defaults small
        cap = 100 * max_curve_degree * max_curve_degree
        return (self.degcap_surface or cap,
                self.degcap_hypersurface or max(2, self.struct_degree_cap))


def cmp_count_power(value: int, coeff: Fraction, n: int, expo: Fraction) -> int:
    """Exact sign of value - coeff * n^expo for nonnegative inputs."""
    if value < 0:
        raise ValueError("value must be nonnegative")
    if n == 0:
        return (value > 0) - (value < 0)
    p, q = expo.numerator, expo.denominator
    if coeff == 0:
        return 1 if value > 0 else 0
    lhs = (Fraction(value) / coeff) ** q
    rhs = Fraction(n) ** p
    return (lhs > rhs) - (lhs < rhs)


def ceil_power(n: int, expo: Fraction) -> int:
    """Smallest integer k with k >= n^expo, exactly."""
    if n <= 1:
        return n
    k = max(1, int(round(n ** float(expo))))
    while cmp_count_power(k, Fraction(1), n, expo) < 0:
        k += 1
    while k > 1 and cmp_count_power(k - 1, Fraction(1), n, expo) >= 0:
        k -= 1
    return k


@dataclass
class Decomposition:
    """Output of a structure pipeline: 3-dim varieties, 2-dim surfaces, and
    the residual two-rich points not covered inside any member family."""

    varieties: list[tuple[Variety, list[str]]] = field(default_factory=list)
    surfaces: list[tuple[Variety, list[str]]] = field(default_factory=list)
    residual: list[RichPoint] = field(default_factory=list)
    stage_log: dict = field(default_factory=dict)

    def member_sets(self) -> list[set[str]]:
        return [set(m) for _, m in self.varieties] + [set(m) for _, m in self.surfaces]

    def to_json(self) -> dict:
        return {
            "varieties": [{"variety": v.to_json(), "members": m} for v, m in self.varieties],
            "surfaces": [{"variety": s.to_json(), "members": m} for s, m in self.surfaces],
            "residual": [p.to_json() for p in self.residual],
            "stage_log": self.stage_log,
        }

    @staticmethod
    def from_json(data: dict) -> Decomposition:
        return Decomposition(
            varieties=[(Variety.from_json(e["variety"]), list(e["members"]))
                       for e in data.get("varieties", [])],
            surfaces=[(Variety.from_json(e["variety"]), list(e["members"]))
                      for e in data.get("surfaces", [])],
            residual=[RichPoint.from_json(p) for p in data.get("residual", [])],
            stage_log=data.get("stage_log", {}),
        )


def _check_distinct(curves: list[ParamCurve]) -> None:
    from .geometry import IdenticalCurvesError

    by_sig: dict[tuple, list[ParamCurve]] = {}
    for c in curves:
        sig = (c.degree,)
        by_sig.setdefault(sig, []).append(c)
    ordered = sorted(curves, key=lambda c: c.label)
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            if curves_identical(ordered[i], ordered[j]):
                raise IdenticalCurvesError(
                    f"curves {ordered[i].label!r} and {ordered[j].label!r} coincide")


def _variety_key(v: Variety) -> frozenset:
    return frozenset(v.generators)


def _covered(points: list[RichPoint], member_sets: list[set[str]]) -> list[RichPoint]:
    out = []
    for p in points:
        if not any(len(p.incident_labels & m) >= 2 for m in member_sets):
            out.append(p)
    return out


def _members(curves: list[ParamCurve], variety: Variety) -> list[str]:
    return [c.label for c in curves if variety.contains_curve(c)]


# ---------------------------------------------------------------------------
# three-dimensional pipeline


def decompose_r3(curves: list[ParamCurve], epsilon: Fraction | None = None,
                 cfg: DecompConfig | None = None, ambient: Variety | None = None,
                 *, _depth: int = 0, _compute_residual: bool = True) -> Decomposition:
    """Structure decomposition for curves in a 3-dimensional ambient.

    Partition the curves (structure factors catch clustered families),
    recurse in the cells, collect the partition zero set's irreducible
    components as candidate surfaces, and keep exactly those containing at
    least twice n^(1/2 + epsilon) curves.  The residual is the exact set of
    two-rich points not covered inside a kept surface's member family.

    When the curves live in a 3-dimensional variety inside a larger space,
    pass it as `ambient`: partition factors divisible by an ambient generator
    are rejected (they would not cut the ambient properly) and the output
    surfaces carry the ambient generators alongside the cutting polynomial.
    """
    cfg = cfg or DecompConfig()
    if epsilon is not None:
        cfg = replace(cfg, epsilon=Fraction(epsilon))
    eps = Fraction(cfg.epsilon)
    if not 0 < eps < Fraction(1, 3):
        raise ValueError("epsilon must lie in (0, 1/3)")
    n = len(curves)
    log: dict = {"n": n, "depth": _depth}
    if _depth == 0:
        _check_distinct(curves)
    if n == 0:
        return Decomposition(stage_log=log)
    if n <= cfg.base_case_n or _depth >= cfg.max_depth:
        residual = two_rich_points(curves, threads=cfg.threads).rich_points \
            if _compute_residual else []
        log["base_case"] = True
        return Decomposition(residual=residual, stage_log=log)

    ambient_gens = tuple(ambient.generators) if ambient is not None else ()
    part = partition_curves(
        curves, cfg.partition_degree, dprime=min(3, curves[0].ambient_dim),
        delta=cfg.delta, seed=cfg.seed, struct_degree_cap=cfg.struct_degree_cap,
        exclude_divisors=ambient_gens, probe_structures=(_depth == 0),
        probe_draws=min(len(curves), 64))
    on_zero = [c for c in curves
               if any(curve_contained_in(c, f) for f in part.factors)]
    log["partition"] = {"factors": len(part.factors),
                        "total_degree": part.total_degree,
                        "on_zero_set": len(on_zero)}

    # candidate surfaces from the zero set components
    zero_components: dict[frozenset, Variety] = {}
    incomplete = 0
    for f in part.factors:
        comps, complete = irreducible_components(f)
        if not complete:
            incomplete += 1
        for g in comps:
            gens = tuple(dict.fromkeys(ambient_gens + (g,)))
            bound_deg = max(1, g.degree())
            for a in ambient_gens:
                bound_deg *= max(1, a.degree())
            v = Variety(gens, 2, bound_deg, label=f"S(deg{g.degree()})")
            zero_components.setdefault(_variety_key(v), v)
    log["incomplete_factorizations"] = incomplete

    # recurse inside the cells
    from .partition import curve_cell_trace, curve_t_window

    bound = Fraction(1) + max(abs(x) for c in curves for comp in c.components for x in comp)
    cell_members: dict = {}
    for c in curves:
        if c in on_zero:
            continue
        trace = curve_cell_trace(part, c, curve_t_window(c, bound))
        for cell in trace["cells"]:
            cell_members.setdefault(cell.signs, []).append(c)
    log["cells"] = sorted(len(v) for v in cell_members.values())

    s_from_cells: dict[frozenset, Variety] = {}
    for key in sorted(cell_members, key=str):
        sub_curves = cell_members[key]
        if len(sub_curves) <= cfg.base_case_n or len(sub_curves) >= n:
            continue
        sub = decompose_r3(sub_curves, cfg=cfg, ambient=ambient,
                           _depth=_depth + 1, _compute_residual=False)
        for v, _m in sub.surfaces:
            s_from_cells.setdefault(_variety_key(v), v)

    candidates = dict(s_from_cells)
    candidates.update(zero_components)
    log["surface_candidates"] = len(candidates)

    kept: list[tuple[Variety, list[str]]] = []
    threshold_coeff = cfg.variety_prune_factor
    expo = Fraction(1, 2) + eps
    for key in sorted(candidates, key=str):
        v = candidates[key]
        members = _members(curves, v)
        if cmp_count_power(len(members), threshold_coeff, n, expo) >= 0:
            kept.append((v, members))
    log["surfaces_kept"] = len(kept)
    log["prune"] = f"members >= {threshold_coeff} * {n}^({expo})"

    residual: list[RichPoint] = []
    if _compute_residual:
        report = two_rich_points(curves, threads=cfg.threads)
        residual = _covered(report.rich_points, [set(m) for _, m in kept])
        log["two_rich_total"] = len(report.rich_points)
        log["residual"] = len(residual)
    return Decomposition(surfaces=kept, residual=residual, stage_log=log)


# ---------------------------------------------------------------------------
# four-dimensional pipeline


def decompose_r4(curves: list[ParamCurve], epsilon: Fraction | None = None,
                 cfg: DecompConfig | None = None, *, _depth: int = 0,
                 _compute_residual: bool = True) -> Decomposition:
    """Structure decomposition for curves in R^4.

    Stages, in order: partition; per-cell recursion; pairwise intersections
    of the 3-dim candidates; exclusive-member accounting and hybrid-point
    count; pruning of rich 3-varieties; re-decomposition of the remaining
    ones at epsilon/2; component splitting of the surface candidates; degree
    and member-count pruning; hypersurface clustering of the survivors; and
    the final exact residual count.
    """
    cfg = cfg or DecompConfig()
    if epsilon is not None:
        cfg = replace(cfg, epsilon=Fraction(epsilon))
    eps = Fraction(cfg.epsilon)
    if not 0 < eps < Fraction(1, 3):
        raise ValueError("epsilon must lie in (0, 1/3)")
    n = len(curves)
    log: dict = {"n": n, "depth": _depth}
    if _depth == 0:
        _check_distinct(curves)
    if n == 0:
        return Decomposition(stage_log=log)
    if curves[0].ambient_dim != 4:
        raise ValueError("decompose_r4 expects curves in R^4")
    dmax = max(c.degree for c in curves)
    cap_surface, cap_hyper = cfg.resolved_degcaps(dmax)

    if n <= cfg.base_case_n or _depth >= cfg.max_depth:
        residual = two_rich_points(curves, threads=cfg.threads).rich_points \
            if _compute_residual else []
        log["base_case"] = True
        return Decomposition(residual=residual, stage_log=log)

    part = partition_curves(
        curves, cfg.partition_degree, dprime=4,
        delta=cfg.delta, seed=cfg.seed, struct_degree_cap=cfg.struct_degree_cap,
        probe_structures=(_depth == 0), probe_draws=min(len(curves), 64))
    on_zero = [c for c in curves
               if any(curve_contained_in(c, f) for f in part.factors)]
    log["partition"] = {"factors": len(part.factors),
                        "total_degree": part.total_degree,
                        "on_zero_set": len(on_zero)}

    # m_initial: zero-set components plus recursion output
    m_initial: dict[frozenset, Variety] = {}
    for f in part.factors:
        comps, complete = irreducible_components(f)
        for g in comps:
            v = Variety((g,), 3, max(1, g.degree()), label=f"M(deg{g.degree()})")
            m_initial.setdefault(_variety_key(v), v)

    from .partition import curve_cell_trace, curve_t_window

    bound = Fraction(1) + max(abs(x) for c in curves for comp in c.components for x in comp)
    cell_members: dict = {}
    for c in curves:
        if c in on_zero:
            continue
        trace = curve_cell_trace(part, c, curve_t_window(c, bound))
        for cell in trace["cells"]:
            cell_members.setdefault(cell.signs, []).append(c)

    s_initial: dict[frozenset, Variety] = {}
    for key in sorted(cell_members, key=str):
        sub_curves = cell_members[key]
        if len(sub_curves) <= cfg.base_case_n or len(sub_curves) >= n:
            continue
        sub = decompose_r4(sub_curves, cfg=cfg, _depth=_depth + 1, _compute_residual=False)
        for v, _m in sub.varieties:
            m_initial.setdefault(_variety_key(v), v)
        for v, _m in sub.surfaces:
            s_initial.setdefault(_variety_key(v), v)
    log["m_initial"] = len(m_initial)
    log["s_from_cells"] = len(s_initial)

    # pairwise intersections of the 3-dim candidates join the surface pool
    m_list = [m_initial[k] for k in sorted(m_initial, key=str)]
    s_pool: dict[frozenset, Variety] = dict(s_initial)
    for i in range(len(m_list)):
        for j in range(i + 1, len(m_list)):
            gens = tuple(dict.fromkeys(m_list[i].generators + m_list[j].generators))
            if len(gens) < 2:
                continue
            v = Variety(gens, 2, m_list[i].degree_bound * m_list[j].degree_bound,
                        label=f"S({m_list[i].label}&{m_list[j].label})")
            s_pool.setdefault(_variety_key(v), v)
    log["s_plus_intersections"] = len(s_pool)

    # exclusive members and the hybrid-point count
    m_members = {k: set(_members(curves, m_initial[k])) for k in m_initial}
    s_members_pool = {k: set(_members(curves, s_pool[k])) for k in s_pool}
    s_union: set[str] = set()
    for mem in s_members_pool.values():
        s_union |= mem
    exclusive = {k: m_members[k] - s_union for k in m_members}
    log["hybrid_points"] = hybrid_points(
        curves, list(m_members.values()), list(s_members_pool.values()),
        threads=cfg.threads)

    # prune 3-varieties on exclusive-member count
    expo_m = Fraction(2, 3) + eps
    m_kept: list[tuple[Variety, list[str]]] = []
    m_rest: list[tuple[Variety, set[str]]] = []
    for k in sorted(m_initial, key=str):
        count = len(exclusive[k])
        if cmp_count_power(count, cfg.variety_prune_factor, n, expo_m) > 0:
            m_kept.append((m_initial[k], sorted(m_members[k])))
        else:
            m_rest.append((m_initial[k], exclusive[k]))
    log["m_pruned"] = len(m_kept)

    # re-decompose the exclusive families of the remaining 3-varieties inside
    # their variety, at half the exponent gap
    curve_by_label = {c.label: c for c in curves}
    for variety, excl in m_rest:
        sub_curves = [curve_by_label[lab] for lab in sorted(excl)]
        if len(sub_curves) < 2:
            continue
        sub_cfg = replace(cfg, epsilon=eps / 2)
        sub = decompose_r3(sub_curves, cfg=sub_cfg, ambient=variety,
                           _depth=_depth + 1, _compute_residual=False)
        for v, _m in sub.surfaces:
            s_pool.setdefault(_variety_key(v), v)
    log["s_after_reduction"] = len(s_pool)

    # split surfaces into irreducible components where the facility allows
    s_components: dict[frozenset, Variety] = {}
    for k in sorted(s_pool, key=str):
        v = s_pool[k]
        split_ok = True
        split_gens: list[list[MPoly]] = []
        for g in v.generators:
            comps, complete = irreducible_components(g)
            if not complete:
                split_ok = False
                break
            split_gens.append(comps)
        if not split_ok or not split_gens:
            s_components.setdefault(_variety_key(v), v)
            continue
        import itertools as _it

        for combo in _it.product(*split_gens):
            gens = tuple(dict.fromkeys(combo))
            if len(v.generators) >= 2 and len(gens) < 2:
                continue        # the component lives in the 3-dim diagonal
            deg = 1
            for g in gens:
                deg *= max(1, g.degree())
            nv = Variety(gens, 2, deg, label=v.label)
            s_components.setdefault(_variety_key(nv), nv)
    log["s_components"] = len(s_components)

    # degree prune, then member-count prune
    s_low = {k: v for k, v in s_components.items() if v.degree_bound <= cap_surface}
    log["s_low_degree"] = len(s_low)
    expo_s = Fraction(1, 3) + 2 * eps
    s_rich: list[tuple[Variety, list[str]]] = []
    for k in sorted(s_low, key=str):
        members = _members(curves, s_low[k])
        if cmp_count_power(len(members), cfg.surface_prune_coeff, n, expo_s) > 0:
            s_rich.append((s_low[k], members))
    log["s_rich"] = len(s_rich)

    # cluster the rich surfaces into hypersurfaces through their curve bundles
    a_expo = (Fraction(2, 3) - 2 * eps) * (Fraction(1, 2) + eps / 2)
    a_threshold = ceil_power(n, a_expo)
    clustered_keys: set[frozenset] = set()
    m_clustered: list[tuple[Variety, list[str]]] = []
    if s_rich:
        clusters = _cluster_surface_entries(s_rich, curve_by_label, a_threshold, cap_hyper)
        for poly, surf_keys in clusters:
            v = Variety((poly,), 3, max(1, poly.degree()), label=f"M(cluster deg{poly.degree()})")
            m_clustered.append((v, _members(curves, v)))
            clustered_keys |= surf_keys
    log["m_clustered"] = len(m_clustered)
    log["cluster_threshold"] = a_threshold

    final_m: dict[frozenset, tuple[Variety, list[str]]] = {}
    for v, mem in m_kept + m_clustered:
        final_m.setdefault(_variety_key(v), (v, mem))
    final_s = [(v, mem) for v, mem in s_rich if _variety_key(v) not in clustered_keys]
    log["final_m"] = len(final_m)
    log["final_s"] = len(final_s)

    residual: list[RichPoint] = []
    if _compute_residual:
        report = two_rich_points(curves, threads=cfg.threads)
        member_sets = [set(m) for _, (v, m) in final_m.items()] + \
                      [set(m) for v, m in final_s]
        residual = _covered(report.rich_points, member_sets)
        log["two_rich_total"] = len(report.rich_points)
        log["residual"] = len(residual)
    return Decomposition(
        varieties=[vm for _, vm in sorted(final_m.items(), key=lambda kv: str(kv[0]))],
        surfaces=final_s,
        residual=residual,
        stage_log=log,
    )


def _cluster_surface_entries(s_entries: list[tuple[Variety, list[str]]],
                             curve_by_label: dict[str, ParamCurve],
                             a_threshold: int, degcap: int):
    """Greedy clustering of surfaces via their member-curve bundles.

    A surface joins a cluster when a polynomial of degree <= degcap still
    vanishes on all member curves gathered so far; a cluster is accepted when
    it holds at least a_threshold surfaces."""
    entries = sorted(s_entries, key=lambda e: str(_variety_key(e[0])))
    remaining = list(range(len(entries)))
    if not remaining:
        return []
    some_curve = next(iter(curve_by_label.values()))
    d = some_curve.ambient_dim
    ncols = len(monomials_upto(d, degcap)) + 1
    out = []
    progress = True
    while progress and remaining:
        progress = False
        for seed_pos in list(remaining):
            basis = EchelonBasis(ncols)
            def add_entry(idx) -> bool:
                snap = basis.snapshot()
                for lab in entries[idx][1]:
                    for row in evaluation_rows(curve_by_label[lab], degcap):
                        basis.add(row)
                if basis.rank == ncols:
                    basis.restore(snap)
                    return False
                return True

            if not add_entry(seed_pos):
                continue
            cluster = [seed_pos]
            for idx in remaining:
                if idx != seed_pos and add_entry(idx):
                    cluster.append(idx)
            if len(cluster) >= a_threshold and len(cluster) >= 1:
                null = nullspace(basis.rows, cols=ncols)
                from .reduction import _canonical_scale

                poly = _canonical_scale(
                    MPoly.from_coeff_vector(d, degcap, null[0], include_const=True))
                keys = {_variety_key(entries[i][0]) for i in cluster}
                out.append((poly, keys))
                remaining = [i for i in remaining if i not in set(cluster)]
                progress = True
                break
    return out


# ---------------------------------------------------------------------------
# hybrid points and audits


def hybrid_points(curves: list[ParamCurve], m_member_sets: list[set[str]],
                  s_member_sets: list[set[str]], threads: int = 1) -> int:
    """Exact count of two-rich points on some 3-variety family whose witness
    pairs are neither both exclusive to that family nor both inside one
    surface family."""
    if not m_member_sets:
        return 0
    s_union: set[str] = set()
    for s in s_member_sets:
        s_union |= s
    exclusive = [m - s_union for m in m_member_sets]
    report = two_rich_points(curves, threads=threads)
    count = 0
    for p in report.rich_points:
        labs = p.incident_labels
        if not any(len(labs & m) >= 2 for m in m_member_sets):
            continue
        if any(len(labs & e) >= 2 for e in exclusive):
            continue
        if any(len(labs & s) >= 2 for s in s_member_sets):
            continue
        count += 1
    return count


@dataclass
class AuditReport:
    n: int
    soundness: bool
    containment_ok: bool
    m_count_ok: bool
    m_members_ok: bool
    s_count_ok: bool
    s_members_ok: bool
    residual_count: int
    residual_matches: bool
    c_meas: float
    measured: dict

    def all_contract_bools(self) -> dict:
        return {
            "soundness": self.soundness,
            "containment_ok": self.containment_ok,
            "m_count_ok": self.m_count_ok,
            "m_members_ok": self.m_members_ok,
            "s_count_ok": self.s_count_ok,
            "s_members_ok": self.s_members_ok,
            "residual_matches": self.residual_matches,
        }

    def to_json(self) -> dict:
        out = dict(self.all_contract_bools())
        out.update({"n": self.n, "residual_count": self.residual_count,
                    "c_meas": self.c_meas, "measured": self.measured})
        return out


def audit_decomposition(curves: list[ParamCurve], dec: Decomposition,
                        epsilon: Fraction, threads: int = 1) -> AuditReport:
    """Recheck every output contract of a decomposition from scratch.

    Containment of every member curve, the cardinality and member-count
    bounds at their exact thresholds, and the residual recount (the soundness
    identity: the two-rich set equals the residual plus the union of the
    member families' two-rich sets)."""
    eps = Fraction(epsilon)
    n = len(curves)
    by_label = {c.label: c for c in curves}
    for _, members in dec.varieties + dec.surfaces:
        for lab in members:
            if lab not in by_label:
                raise ValueError(f"decomposition references unknown curve {lab!r}")

    containment_ok = True
    for v, members in dec.varieties + dec.surfaces:
        for lab in members:
            if not v.contains_curve(by_label[lab]):
                containment_ok = False

    m_count_ok = cmp_count_power(len(dec.varieties), Fraction(1), n,
                                 Fraction(1, 3) - eps) <= 0 if n else True
    s_count_ok = cmp_count_power(len(dec.surfaces), Fraction(1), n,
                                 Fraction(2, 3) - 2 * eps) <= 0 if n else True
    m_members_ok = all(
        cmp_count_power(len(m), Fraction(1), n, Fraction(2, 3) + eps) >= 0
        for _, m in dec.varieties) if dec.varieties else True
    s_members_ok = all(
        cmp_count_power(len(m), Fraction(1), n, Fraction(1, 3) + 2 * eps) >= 0
        for _, m in dec.surfaces) if dec.surfaces else True

    report = two_rich_points(curves, threads=threads) if n else \
        IncidenceReport(0, [], {}, 0)
    member_sets = dec.member_sets()
    recount = _covered(report.rich_points, member_sets)
    residual_matches = _same_point_set(recount, dec.residual)
    soundness = residual_matches and containment_ok

    expo = Fraction(4, 3) + 3 * eps
    c_meas = (len(recount) / float(n) ** float(expo)) if n else 0.0
    return AuditReport(
        n=n,
        soundness=soundness,
        containment_ok=containment_ok,
        m_count_ok=m_count_ok,
        m_members_ok=m_members_ok,
        s_count_ok=s_count_ok,
        s_members_ok=s_members_ok,
        residual_count=len(recount),
        residual_matches=residual_matches,
        c_meas=c_meas,
        measured={
            "m_count": len(dec.varieties),
            "s_count": len(dec.surfaces),
            "m_member_counts": sorted(len(m) for _, m in dec.varieties),
            "s_member_counts": sorted(len(m) for _, m in dec.surfaces),
            "two_rich_total": len(report.rich_points),
        },
    )


def _same_point_set(a: list[RichPoint], b: list[RichPoint]) -> bool:
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for p in a:
        hit = False
        for i, q in enumerate(b):
            if not used[i] and p.same_point(q):
                used[i] = True
                hit = True
                break
        if not hit:
            return False
    return True
