"""Command-line front end.

Subcommands: gen, count, partition, decompose, audit, cluster, complexlab,
bench.  Every command is deterministic given its flags and seed, reports
embed the full configuration, and all numeric flags parse as exact rationals
("1/10"), never floats.  Exit codes: 0 success, 1 audit failure, 2 input
error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import arrangements
from .arrangements import Arrangement, ArrangementFormatError
from .exactmath import MPoly
from .geometry import IdenticalCurvesError
from .incidence import two_rich_points
from .structure import DecompConfig, Decomposition, audit_decomposition, decompose_r3, decompose_r4

EXIT_OK = 0
EXIT_AUDIT = 1
EXIT_INPUT = 2


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r} ({e})")


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("INCIDENCE_LAB_THREADS")
    return int(env) if env else 1


def _write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _load_arrangement(path) -> Arrangement:
    return arrangements.load(path)


# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    kind = args.kind
    seed = args.seed
    if kind == "random-lines":
        arr = arrangements.gen_random_lines(args.dim, args.n, args.coord_bound, seed)
    elif kind == "regulus":
        arr = arrangements.gen_regulus_lines(args.n, seed)
    elif kind == "grid":
        arr = arrangements.gen_grid_lines(args.k)
    elif kind == "flat-lines":
        arr = arrangements.gen_lines_in_flat(args.dim, args.n, seed=seed,
                                             coord_bound=args.coord_bound,
                                             common_point=args.common_point)
    elif kind == "hyperplane-lines":
        f = MPoly.var(4, 3)
        arr = arrangements.gen_lines_in_hypersurface(f, args.n, seed, args.coord_bound)
    elif kind == "quadric-lines":
        f = MPoly.var(4, 3) - MPoly.var(4, 0) * MPoly.var(4, 1)
        arr = arrangements.gen_lines_in_hypersurface(f, args.n, seed, args.coord_bound)
    elif kind == "random-flats":
        arr = arrangements.gen_random_flats(args.n, seed, args.coord_bound)
    elif kind == "flats-hyperplane":
        arr = arrangements.gen_flats_in_hyperplane(args.n, seed=seed,
                                                   coord_bound=args.coord_bound)
    elif kind == "flats-line":
        arr = arrangements.gen_flats_through_line(args.n, seed=seed,
                                                  coord_bound=args.coord_bound)
    else:
        print(f"unknown generator {kind!r}", file=sys.stderr)
        return EXIT_INPUT
    arrangements.save(arr, args.out)
    print(f"wrote {args.out}: {len(arr.curves)} curves, {len(arr.surfaces)} surfaces")
    return EXIT_OK


def cmd_count(args) -> int:
    arr = _load_arrangement(args.input)
    report = two_rich_points(arr.curves, threads=_threads(args))
    payload = report.to_json(include_timing=args.timing)
    payload["config"] = {"input": str(args.input), "oracle": bool(args.oracle)}
    if args.oracle:
        from .oracle import brute_force_two_rich_points

        oracle_pts = brute_force_two_rich_points(arr.curves)
        match = len(oracle_pts) == len(report.rich_points) and all(
            a.same_point(b) and a.incident_labels == b.incident_labels
            for a, b in zip(report.rich_points, oracle_pts))
        payload["oracle_match"] = match
        if not match:
            _write_json(args.out, payload)
            print("oracle mismatch", file=sys.stderr)
            return EXIT_AUDIT
    _write_json(args.out, payload)
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    print(f"two-rich points: {report.two_rich_count}")
    return EXIT_OK


def cmd_partition(args) -> int:
    from .partition import partition_audit, partition_curves

    arr = _load_arrangement(args.input)
    part = partition_curves(arr.curves, args.degree, dprime=args.dprime,
                            delta=args.delta, seed=args.seed)
    audit = partition_audit(part, arr.curves, "curves")
    payload = part.to_json()
    payload["audit"] = audit.to_json()
    payload["config"] = {"input": str(args.input), "E": args.degree,
                         "dprime": args.dprime, "delta": str(args.delta),
                         "seed": args.seed}
    _write_json(args.out, payload)
    if args.audit_csv:
        Path(args.audit_csv).write_text(audit.to_csv(), encoding="utf-8")
    print(f"factors: {len(part.factors)} (total degree {part.total_degree}); "
          f"max cell load {audit.max_cell_load}")
    return EXIT_OK


def _decomp_config(args) -> DecompConfig:
    cfg = DecompConfig(epsilon=args.epsilon, seed=args.seed)
    if args.partition_degree is not None:
        cfg.partition_degree = args.partition_degree
    if args.delta is not None:
        cfg.delta = args.delta
    if args.base_case is not None:
        cfg.base_case_n = args.base_case
    cfg.threads = _threads(args)
    return cfg


def cmd_decompose(args) -> int:
    arr = _load_arrangement(args.input)
    cfg = _decomp_config(args)
    fn = decompose_r3 if args.dim == 3 else decompose_r4
    dec = fn(arr.curves, cfg=cfg)
    audit = audit_decomposition(arr.curves, dec, args.epsilon, threads=cfg.threads)
    payload = dec.to_json()
    payload["config"] = {"input": str(args.input), "dim": args.dim,
                         "epsilon": str(args.epsilon), "seed": args.seed}
    _write_json(args.out, payload)
    _write_json(args.audit_out, audit.to_json())
    print(f"varieties: {len(dec.varieties)}, surfaces: {len(dec.surfaces)}, "
          f"residual: {len(dec.residual)}; soundness {audit.soundness}")
    return EXIT_OK if audit.soundness else EXIT_AUDIT


def cmd_audit(args) -> int:
    arr = _load_arrangement(args.input)
    try:
        data = json.loads(Path(args.decomposition).read_text(encoding="utf-8"))
        dec = Decomposition.from_json(data)
    except (json.JSONDecodeError, KeyError, ValueError) as e:
        print(f"bad decomposition file: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        audit = audit_decomposition(arr.curves, dec, args.epsilon,
                                    threads=_threads(args))
    except ValueError as e:
        print(f"audit error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        _write_json(args.out, audit.to_json())
    print(json.dumps(audit.all_contract_bools()))
    return EXIT_OK if audit.soundness else EXIT_AUDIT


def cmd_cluster(args) -> int:
    from .reduction import cluster_hypersurfaces

    arr = _load_arrangement(args.input)
    objects = arr.surfaces if arr.surfaces else arr.curves
    result = cluster_hypersurfaces(objects, args.threshold, args.degcap)
    payload = result.to_json()
    payload["config"] = {"input": str(args.input), "A": str(args.threshold),
                         "degcap": args.degcap}
    _write_json(args.out, payload)
    print(f"clusters: {len(result.hypersurfaces)}, residual: {len(result.residual)}")
    return EXIT_OK


def cmd_complexlab(args) -> int:
    import random as _random

    from .complexlab import ComplexPoly, complement_components_1d, conjecture_stress

    rng = _random.Random(args.seed)
    pts = [(Fraction(rng.randint(-args.coord_bound, args.coord_bound)),
            Fraction(rng.randint(-args.coord_bound, args.coord_bound)))
           for _ in range(args.n)]
    stress = conjecture_stress(pts, args.degree, trials=args.trials, seed=args.seed)
    sweep = []
    srng = _random.Random(args.seed + 1)
    for _ in range(args.sweep):
        p = ComplexPoly.random(1, args.degree, srng)
        res = complement_components_1d(p)
        sweep.append(res["count"])
    payload = {
        "E": args.degree,
        "n": args.n,
        "trials": args.trials,
        "min_max_load": stress["min_max_load"],
        "lemma_bound": stress["lemma_bound"],
        "floor_holds": stress.get("floor_holds"),
        "component_counts": sweep,
        "component_bound": 2 * args.degree,
        "config": {"seed": args.seed, "coord_bound": args.coord_bound,
                   "sweep": args.sweep},
    }
    _write_json(args.out, payload)
    ok = (stress.get("floor_holds") in (True, None)) and \
        all(c <= 2 * args.degree for c in sweep)
    print(f"min-max load {stress['min_max_load']} (bound {stress['lemma_bound']}); "
          f"component counts max {max(sweep) if sweep else None} <= {2 * args.degree}")
    return EXIT_OK if ok else EXIT_AUDIT


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = []
    for size in sizes:
        if args.kind == "grid":
            arr = arrangements.gen_grid_lines(size)
            dim = 3
        elif args.kind == "regulus":
            arr = arrangements.gen_regulus_lines(size, args.seed)
            dim = 3
        elif args.kind == "random-lines":
            arr = arrangements.gen_random_lines(args.dim, size, seed=args.seed)
            dim = args.dim
        else:
            print(f"unknown bench kind {args.kind!r}", file=sys.stderr)
            return EXIT_INPUT
        t0 = time.perf_counter()
        report = two_rich_points(arr.curves, threads=_threads(args))
        residual = ""
        if not args.skip_decompose:
            fn = decompose_r3 if dim == 3 else decompose_r4
            dec = fn(arr.curves, cfg=DecompConfig(epsilon=args.epsilon, seed=args.seed))
            residual = len(dec.residual)
        elapsed = time.perf_counter() - t0
        rows.append((len(arr.curves), report.two_rich_count, residual, elapsed))
    lines = ["n;two_rich;residual;time"]
    for n, p2, residual, elapsed in rows:
        lines.append(f"{n};{p2};{residual};{elapsed:.3f}")
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    pts = [(math.log(n), math.log(p2)) for n, p2, _, _ in rows if p2 > 0]
    if len(pts) >= 2:
        xbar = sum(x for x, _ in pts) / len(pts)
        ybar = sum(y for _, y in pts) / len(pts)
        num = sum((x - xbar) * (y - ybar) for x, y in pts)
        den = sum((x - xbar) ** 2 for x, y in pts)
        slope = num / den if den else float("nan")
        print(f"log-log slope: {slope:.4f}")
    else:
        print("log-log slope: undefined (fewer than two nonzero counts)")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="incidence-lab",
                                 description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an arrangement file")
    g.add_argument("--kind", required=True)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--k", type=int, default=3, help="grid size for --kind grid")
    g.add_argument("--dim", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--coord-bound", type=int, default=8)
    g.add_argument("--common-point", action="store_true")
    g.add_argument("-o", "--out", required=True)
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("count", help="exact two-rich point report")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--csv")
    c.add_argument("--timing", action="store_true")
    c.add_argument("--threads", type=int, default=None)
    c.add_argument("-o", "--out", required=True)
    c.set_defaults(fn=cmd_count)

    p = sub.add_parser("partition", help="partition polynomial for a curve file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("-E", "--degree", type=int, required=True)
    p.add_argument("--dprime", type=int, default=None)
    p.add_argument("--delta", type=_frac, default=Fraction(1, 16))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--audit-csv")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(fn=cmd_partition)

    d = sub.add_parser("decompose", help="structure decomposition + audit")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--dim", type=int, choices=(3, 4), required=True)
    d.add_argument("--epsilon", type=_frac, default=Fraction(1, 10))
    d.add_argument("--partition-degree", type=int, default=None)
    d.add_argument("--delta", type=_frac, default=None)
    d.add_argument("--base-case", type=int, default=None)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--threads", type=int, default=None)
    d.add_argument("-o", "--out", required=True)
    d.add_argument("--audit-out", required=True)
    d.set_defaults(fn=cmd_decompose)

    a = sub.add_parser("audit", help="re-audit a decomposition file")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--decomposition", required=True)
    a.add_argument("--epsilon", type=_frac, default=Fraction(1, 10))
    a.add_argument("--threads", type=int, default=None)
    a.add_argument("-o", "--out")
    a.set_defaults(fn=cmd_audit)

    cl = sub.add_parser("cluster", help="greedy hypersurface clustering")
    cl.add_argument("--in", dest="input", required=True)
    cl.add_argument("-A", "--threshold", type=_frac, required=True)
    cl.add_argument("--degcap", type=int, required=True)
    cl.add_argument("-o", "--out", required=True)
    cl.set_defaults(fn=cmd_cluster)

    x = sub.add_parser("complexlab", help="component counts and stress report")
    x.add_argument("--degree", type=int, required=True)
    x.add_argument("--n", type=int, default=1000)
    x.add_argument("--trials", type=int, default=5)
    x.add_argument("--sweep", type=int, default=10,
                   help="random polynomials for the component-count sweep")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--coord-bound", type=int, default=50)
    x.add_argument("-o", "--out", required=True)
    x.set_defaults(fn=cmd_complexlab)

    b = sub.add_parser("bench", help="scaling CSV over arrangement sizes")
    b.add_argument("--kind", required=True)
    b.add_argument("--sizes", required=True, help="comma-separated size list")
    b.add_argument("--dim", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--epsilon", type=_frac, default=Fraction(1, 10))
    b.add_argument("--skip-decompose", action="store_true")
    b.add_argument("--threads", type=int, default=None)
    b.add_argument("-o", "--out", required=True)
    b.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ArrangementFormatError, FileNotFoundError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except IdenticalCurvesError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
