"""``geoclique`` command line: solve, gen, verify, bench, params.

Exit codes: 0 ok, 1 malformed input, 2 refusal (caps, unsupported input),
3 class assumption violated (strict mode, or a non-bipartite graph handed to
the bipartite solver), 4 a verification check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import replace
from itertools import combinations
from pathlib import Path
from statistics import mean

from . import __version__
from .bipartite import solve_bipartite
from .cliquefront import (
    DISK_BETA, UNIT_BALL_BETA, NEIGHBORHOOD_VC_DIM, UnequalRadiiError, exact_unit_disk_clique,
    max_clique_disk_graph, max_clique_disks, max_clique_unit_balls, max_diameter_one_subset,
)
from .docio import canonical_json, dumps_instance, load_input, write_text
from .eptas import (
    PAPER, PRACTICAL, ClassAssumptionViolated, EptasParams, RefusalError, compute_constants,
    constants_for, int_to_str, run_eptas_iocp,
)
from .generators import (
    KINDS, ConstructionInfeasible, embed_co2subdivision_eps_balls, embed_co2subdivision_r4,
    gen_random_instance, verify_embedding,
)
from .geometry import GeometricInstance, intersection_graph
from .graphkit import Graph, MalformedInputError, bipartite_2coloring, complement, from_edge_list, read_dimacs
from .oracle import BudgetExceeded, brute_force_max_clique, brute_force_mis, check_iocp_le_one, vc_dimension_neighborhood

EXIT_OK, EXIT_PARSE, EXIT_REFUSAL, EXIT_VIOLATION, EXIT_FAILED = 0, 1, 2, 3, 4
SEED_ENV = "GEOCLIQUE_SEED"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise CliError(EXIT_PARSE, f"{SEED_ENV}={raw!r} is not an integer") from None


# -- independent re-verification ---------------------------------------------

def _adjacent(obj, u: int, v: int) -> bool:
    if isinstance(obj, Graph):
        return obj.has_edge(u, v)
    if obj.kind == "points":
        a, b, thr = obj.points[u], obj.points[v], obj.threshold
    else:
        a, b = obj.balls[u].center, obj.balls[v].center
        thr = obj.balls[u].radius + obj.balls[v].radius
    return math.fsum((x - y) ** 2 for x, y in zip(a, b)) <= thr * thr


def check_solution(obj, problem: str, vertices) -> tuple[bool, str, list | None]:
    """Recheck a claimed solution from the raw input, not from solver state.

    Returns ``(ok, message, offending_pair)``.
    """
    n = obj.n if isinstance(obj, Graph) else len(obj)
    vs = list(vertices)
    if any(not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n for v in vs):
        return False, "vertex id out of range", None
    if len(set(vs)) != len(vs):
        return False, "repeated vertex", None
    for u, v in combinations(sorted(vs), 2):
        if problem == "clique" and not _adjacent(obj, u, v):
            return False, f"vertices {u} and {v} are not adjacent", [u, v]
        if problem == "mis" and _adjacent(obj, u, v):
            return False, f"vertices {u} and {v} are adjacent", [u, v]
        if problem == "diameter":
            a, b = obj.points[u], obj.points[v]
            if math.fsum((x - y) ** 2 for x, y in zip(a, b)) > 1.0:
                return False, f"vertices {u} and {v} are farther apart than 1", [u, v]
    return True, "ok", None


# -- solve ---------------------------------------------------------------------

def _load(path) -> Graph | GeometricInstance:
    try:
        return load_input(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _graph_of(obj) -> Graph:
    return obj if isinstance(obj, Graph) else intersection_graph(obj)


def _params(args, beta=None) -> EptasParams:
    try:
        return EptasParams(
            epsilon=args.epsilon, beta=beta if beta is not None else args.beta, d=args.d, i=args.i,
            mode=args.mode, failure_prob=args.failure_prob, seed=args.seed, s_cap=args.s_cap,
            t_cap=args.t_cap, robust=not args.strict,
        )
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None


def _solve_clique(obj, args, workers):
    if args.method == "eptas":
        if isinstance(obj, Graph):
            p = _params(args)
            return max_clique_disk_graph(obj, p, workers), p, "disk-graph"
        if obj.dim == 2:
            p = _params(args)
            return max_clique_disks(obj, p, workers), p, "disks"
        if obj.dim == 3:
            p = _params(args)
            try:
                return max_clique_unit_balls(obj, p, workers, force=args.force), p, "unit-balls"
            except UnequalRadiiError as exc:
                raise CliError(EXIT_REFUSAL, f"{exc}; rerun with --force") from None
        raise CliError(EXIT_REFUSAL, f"no clique frontend for dimension {obj.dim}")
    if args.method == "exact" and isinstance(obj, GeometricInstance) and obj.dim == 2 and obj.equal_radii():
        r = obj.threshold / 2 if obj.kind == "points" else obj.balls[0].radius if len(obj) else 1.0
        return exact_unit_disk_clique([tuple(c) for c in obj.centers()], r, obj.weights), None, "unit-disk"
    if args.method in ("exact", "brute-force"):
        return brute_force_max_clique(_graph_of(obj)), None, "graph"
    raise CliError(EXIT_PARSE, f"method {args.method!r} does not solve clique")


def _solve_mis(obj, args, workers):
    g = _graph_of(obj)
    if args.method == "eptas":
        p = _params(args)
        res = run_eptas_iocp(g, p, workers)
        return list(res.vertices), res.diagnostics, p
    if args.method == "bipartite":
        coloring = bipartite_2coloring(g)
        if coloring is None:
            raise CliError(EXIT_VIOLATION, "graph is not bipartite")
        return solve_bipartite(g, coloring), {"branch": "bipartite"}, None
    if args.method in ("exact", "brute-force"):
        return brute_force_mis(g), {"branch": "brute-force"}, None
    raise CliError(EXIT_PARSE, f"method {args.method!r} does not solve mis")


def _solve_diameter(obj, args, workers):
    if isinstance(obj, Graph) or obj.kind != "points" or obj.dim != 3:
        raise CliError(EXIT_REFUSAL, "diameter problem needs a 3-d point instance")
    if args.method == "eptas":
        p = _params(args)
        return max_diameter_one_subset(obj.points, p, workers), p
    if args.method in ("exact", "brute-force"):
        g = intersection_graph(GeometricInstance.from_points(obj.points, 1.0, dim=3))
        return brute_force_max_clique(g), None
    raise CliError(EXIT_PARSE, f"method {args.method!r} does not solve diameter")


def solve_document(path, args, workers: int) -> dict:
    obj = _load(path)
    start = time.perf_counter()
    p = None
    try:
        if args.problem == "clique":
            sol, p, frontend = _solve_clique(obj, args, workers)
            vertices, method, diag = list(sol.vertices), sol.method, {"frontend": frontend, **sol.diagnostics}
        elif args.problem == "mis":
            vertices, diag, p = _solve_mis(obj, args, workers)
            method = f"{args.method}-mis"
        else:
            sol, p = _solve_diameter(obj, args, workers)
            vertices, method, diag = list(sol.vertices), sol.method, sol.diagnostics
    except ClassAssumptionViolated as exc:
        raise CliError(EXIT_VIOLATION, f"class assumption violated: {exc}") from None
    except (RefusalError, BudgetExceeded) as exc:
        raise CliError(EXIT_REFUSAL, str(exc)) from None
    elapsed = (time.perf_counter() - start) * 1000
    vertices = sorted(vertices)
    ok, message, _ = check_solution(obj, args.problem, vertices)
    n = obj.n if isinstance(obj, Graph) else len(obj)
    weights = obj.weights if isinstance(obj, Graph) else (obj.weights or (1,) * n)
    weight = sum(weights[v] for v in vertices)
    doc = {
        "problem": args.problem,
        "method": method,
        "n": n,
        "vertices": vertices,
        "size": len(vertices),
        "weight": weight,
        "valid": ok,
        "params": None,
        "constants": None,
        "diagnostics": diag,
        "elapsed_ms": round(elapsed, 3),
    }
    if p is not None:
        doc["params"] = {"epsilon": p.epsilon, "beta": p.beta, "d": p.d, "i": p.i,
                         "mode": p.mode, "seed": p.seed}
        frontend_beta = {"disk-graph": DISK_BETA, "disks": DISK_BETA, "unit-balls": UNIT_BALL_BETA}
        beta = frontend_beta.get(diag.get("frontend"))
        if args.problem == "diameter":
            beta = UNIT_BALL_BETA
        if beta is not None:
            doc["params"].update(beta=float(beta), d=NEIGHBORHOOD_VC_DIM)
            p = replace(p, beta=float(beta), d=NEIGHBORHOOD_VC_DIM)
        doc["constants"] = compute_constants(p, n).as_dict()
    if not ok:
        doc["diagnostics"] = {**diag, "verification": message}
    return doc


def cmd_solve(args) -> int:
    doc = solve_document(args.input, args, args.threads)
    write_text(args.out, canonical_json(doc))
    return EXIT_OK if doc["valid"] else EXIT_FAILED


# -- gen -------------------------------------------------------------------------

GEN_KINDS = KINDS + ("co2sub-r4", "co2sub-balls")


def _read_graph(path) -> Graph:
    try:
        return read_dimacs(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def cmd_gen(args) -> int:
    if args.kind in KINDS:
        if args.n is None:
            raise CliError(EXIT_PARSE, "--n is required for random instances")
        try:
            inst = gen_random_instance(args.kind, args.n, (args.rmin, args.rmax), args.box, args.seed,
                                       args.threshold)
        except ValueError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
    else:
        if args.graph is None:
            raise CliError(EXIT_PARSE, f"{args.kind} needs --graph")
        g = _read_graph(args.graph)
        try:
            if args.kind == "co2sub-r4":
                inst = embed_co2subdivision_r4(g)
            else:
                inst = embed_co2subdivision_eps_balls(g, args.eps)
        except ConstructionInfeasible as exc:
            raise CliError(EXIT_REFUSAL, str(exc)) from None
        except ValueError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
    write_text(args.out, dumps_instance(inst))
    return EXIT_OK


# -- verify ------------------------------------------------------------------------

def _source_graph(inst) -> Graph:
    meta = inst.metadata.get("source_graph") if isinstance(inst, GeometricInstance) else None
    if not meta:
        raise CliError(EXIT_PARSE, "instance carries no source_graph metadata")
    return from_edge_list(meta["n"], [tuple(e) for e in meta["edges"]])


def verify_report(args) -> dict:
    obj = _load(args.input)
    if args.solution:
        try:
            sol = json.loads(Path(args.solution).read_text(encoding="utf-8"))
            problem, vertices = sol["problem"], sol["vertices"]
        except OSError as exc:
            raise CliError(EXIT_PARSE, f"cannot read {args.solution}: {exc.strerror}") from None
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CliError(EXIT_PARSE, f"malformed solution document: {exc}") from None
        if problem not in ("clique", "mis", "diameter"):
            raise CliError(EXIT_PARSE, f"unknown problem {problem!r}")
        if not isinstance(vertices, list):
            raise CliError(EXIT_PARSE, "solution vertices must be a list")
        ok, message, pair = check_solution(obj, problem, vertices)
        if ok and sol.get("size", len(vertices)) != len(vertices):
            ok, message = False, "size field disagrees with the vertex list"
        return {"check": "solution", "problem": problem, "passed": ok, "message": message,
                "offending_pair": pair}
    g = _graph_of(obj)
    try:
        if args.claim == "iocp-le-1":
            ok, witness = check_iocp_le_one(complement(g))
            return {"check": "iocp-le-1", "graph": "complement", "passed": ok,
                    "witness": [list(c) for c in witness] if witness else None}
        if args.claim == "vcdim-le-4":
            vc = vc_dimension_neighborhood(g)
            return {"check": "vcdim-le-4", "vc_dimension": vc, "passed": vc <= 4}
    except BudgetExceeded as exc:
        raise CliError(EXIT_REFUSAL, str(exc)) from None
    if args.claim == "embedding":
        report = verify_embedding(obj, _source_graph(obj))
        out = {"check": "embedding", "passed": report.passed, "graph_equal": report.graph_equal,
               "min_clearance": report.min_clearance, "offending": report.offending[:10],
               "message": report.message}
        target_eps = obj.metadata.get("target_eps")
        if target_eps is not None and obj.kind == "balls":
            radii = obj.radii()
            in_range = bool((radii >= 1).all() and (radii <= 1 + target_eps).all())
            out["radii_in_range"] = in_range
            out["passed"] = out["passed"] and in_range
        return out
    raise CliError(EXIT_PARSE, "verify needs --solution or --claim")


def cmd_verify(args) -> int:
    report = verify_report(args)
    write_text(args.out, canonical_json(report))
    return EXIT_OK if report["passed"] else EXIT_FAILED


# -- bench -------------------------------------------------------------------------

DEFAULT_SUITE = {
    "kinds": ["disks2d", "points3d"],
    "sizes": [10, 14, 18],
    "seeds": [0, 1, 2],
    "epsilons": [0.2, 0.4],
    "methods": ["eptas", "exact"],
    "box": {"disks2d": 4.0, "points3d": 1.6},
    "radius_range": [0.5, 1.0],
    "threshold": 1.0,
    "oracle_max_n": 20,
}

CSV_FIELDS = ["kind", "n", "m", "seed", "method", "epsilon", "size", "opt", "ratio", "ms", "valid", "status"]


def _bench_solve(inst, method, eps, seed, workers):
    g = intersection_graph(inst, warn=False)
    if method == "eptas":
        p = EptasParams(epsilon=eps, seed=seed)
        sol = max_clique_disks(inst, p, workers) if inst.dim == 2 else max_clique_unit_balls(inst, p, workers)
    elif inst.dim == 2 and inst.equal_radii():
        r = inst.threshold / 2 if inst.kind == "points" else inst.balls[0].radius
        sol = exact_unit_disk_clique([tuple(c) for c in inst.centers()], r)
    else:
        sol = brute_force_max_clique(g)
    return g, sol


def run_bench(suite: dict, workers: int = 1):
    cfg = {**DEFAULT_SUITE, **suite}
    rows = []
    for kind in cfg["kinds"]:
        box = cfg["box"].get(kind, 10.0) if isinstance(cfg["box"], dict) else cfg["box"]
        for n in cfg["sizes"]:
            for seed in cfg["seeds"]:
                inst = gen_random_instance(kind, n, tuple(cfg["radius_range"]), box, seed, cfg["threshold"])
                g = intersection_graph(inst, warn=False)
                opt = brute_force_max_clique(g).size if n <= cfg["oracle_max_n"] else None
                for method in cfg["methods"]:
                    for eps in cfg["epsilons"] if method == "eptas" else [None]:
                        row = {"kind": kind, "n": n, "m": g.m, "seed": seed, "method": method,
                               "epsilon": eps, "size": None, "opt": opt, "ratio": None, "ms": None,
                               "valid": None, "status": "ok"}
                        start = time.perf_counter()
                        try:
                            _, sol = _bench_solve(inst, method, eps, seed, workers)
                            row["size"] = sol.size
                            row["valid"] = check_solution(inst, "clique", sol.vertices)[0]
                            if opt:
                                row["ratio"] = sol.size / opt
                        except Exception as exc:  # failures become rows
                            row["status"] = f"error:{type(exc).__name__}"
                        row["ms"] = round((time.perf_counter() - start) * 1000, 3)
                        rows.append(row)
    return rows


def summarize(rows) -> list[dict]:
    groups = {}
    for r in rows:
        groups.setdefault((r["kind"], r["method"], r["epsilon"]), []).append(r)
    out = []
    for (kind, method, eps), rs in groups.items():
        ratios = [r["ratio"] for r in rs if r["ratio"] is not None]
        ok_bar = [r for r in rs if r["ratio"] is not None and eps is not None and r["ratio"] >= 1 - eps]
        out.append({
            "kind": kind, "method": method, "epsilon": eps, "runs": len(rs),
            "errors": sum(r["status"] != "ok" for r in rs),
            "invalid": sum(r["valid"] is False for r in rs),
            "mean_ratio": mean(ratios) if ratios else None,
            "min_ratio": min(ratios) if ratios else None,
            "meets_1_minus_eps": len(ok_bar) if eps is not None else None,
            "mean_ms": mean(r["ms"] for r in rs),
        })
    return out


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: "" if r[k] is None else repr(r[k]) if isinstance(r[k], float) else r[k] for k in CSV_FIELDS})
    return buf.getvalue()


def csv_to_rows(text: str) -> list[dict]:
    ints = {"n", "m", "seed", "size", "opt"}
    floats = {"epsilon", "ratio", "ms"}
    rows = []
    for r in csv.DictReader(io.StringIO(text)):
        row = {}
        for k in CSV_FIELDS:
            v = r[k]
            if v == "":
                row[k] = None
            elif k in ints:
                row[k] = int(v)
            elif k in floats:
                row[k] = float(v)
            elif k == "valid":
                row[k] = v == "True"
            else:
                row[k] = v
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    suite = {}
    if args.config:
        try:
            suite = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(EXIT_PARSE, f"cannot load suite config: {exc}") from None
        unknown = set(suite) - set(DEFAULT_SUITE)
        if unknown:
            raise CliError(EXIT_PARSE, f"unknown suite keys: {sorted(unknown)}")
    rows = run_bench(suite, args.threads)
    write_text(args.out, rows_to_csv(rows))
    summary = summarize(rows)
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    for s in summary:
        stream.write(json.dumps(s) + "\n")
    return EXIT_OK


# -- params --------------------------------------------------------------------------

def _fmt_big(x) -> str:
    if x is None:
        return "-"
    digits = int_to_str(x)
    return digits if len(digits) <= 40 else f"{digits[:6]}...({len(digits)} digits)"


def cmd_params(args) -> int:
    out = {}
    for mode in (PAPER, PRACTICAL):
        try:
            dc = constants_for(args.epsilon, args.beta, args.d, args.failure_prob, mode,
                               args.s_cap, args.t_cap, args.n)
        except ValueError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
        out[mode] = dc
    if args.json:
        doc = {"epsilon": args.epsilon, "beta": args.beta, "d": args.d,
               **{mode: dc.as_dict() for mode, dc in out.items()}}
        for mode in out:
            doc[mode]["c_exact"] = str(out[mode].c)
            doc[mode]["delta_exact"] = str(out[mode].delta)
            doc[mode]["t"] = int_to_str(out[mode].t) if out[mode].t is not None else None
        write_text(args.out, canonical_json(doc))
        return EXIT_OK
    lines = [f"epsilon={args.epsilon} beta={args.beta} d={args.d}",
             f"{'constant':<10}{'paper':>32}{'practical':>20}"]
    pp, pr = out[PAPER], out[PRACTICAL]
    table = [
        ("c", f"{pp.c} = {float(pp.c):g}", f"{float(pr.c):g}"),
        ("delta", f"{pp.delta} = {float(pp.delta):.6g}", f"{float(pr.delta):.6g}"),
        ("s", str(pp.s), str(pr.s)),
        ("t", _fmt_big(pp.t) if pp.t is not None else f"~10^{pp.t_paper_log10:.1f}", _fmt_big(pr.t)),
        ("z", str(pp.z), str(pr.z)),
        ("log10 t", f"{pp.t_paper_log10:.3f}", ""),
        ("layers", str(pp.layer_window), str(pr.layer_window)),
        ("blocks", str(pp.n_blocks), str(pr.n_blocks)),
    ]
    for name, a, b in table:
        lines.append(f"{name:<10}{a:>32}{b:>20}")
    write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS,
                        help="worker threads (default: hardware parallelism)")
    common.add_argument("--out", "-o", default=None, help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="geoclique", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve clique / independent set / diameter")
    s.add_argument("input", help="JSON instance or DIMACS graph")
    s.add_argument("--problem", choices=("clique", "mis", "diameter"), default="clique")
    s.add_argument("--method", choices=("eptas", "exact", "brute-force", "bipartite"), default="eptas")
    s.add_argument("--epsilon", type=float, default=0.2)
    s.add_argument("--beta", type=float, default=1.0)
    s.add_argument("--d", type=int, default=NEIGHBORHOOD_VC_DIM)
    s.add_argument("--i", type=int, default=1, help="odd cycle packing bound of the MIS input")
    s.add_argument("--mode", choices=(PRACTICAL, PAPER), default=PRACTICAL)
    s.add_argument("--seed", type=lambda x: int(x, 0), default=None)
    s.add_argument("--s-cap", type=_positive_int, default=None)
    s.add_argument("--t-cap", type=_positive_int, default=1000)
    s.add_argument("--failure-prob", type=float, default=1e-10)
    s.add_argument("--strict", action="store_true", help="fail (exit 3) on class assumption violations")
    s.add_argument("--force", action="store_true", help="run the unit ball frontend on unequal radii")
    s.set_defaults(func=cmd_solve)

    gp = sub.add_parser("gen", parents=[common], help="generate an instance")
    gp.add_argument("kind", choices=GEN_KINDS)
    gp.add_argument("--n", type=int)
    gp.add_argument("--seed", type=lambda x: int(x, 0), default=None)
    gp.add_argument("--box", type=float, default=10.0)
    gp.add_argument("--rmin", type=float, default=0.5)
    gp.add_argument("--rmax", type=float, default=1.5)
    gp.add_argument("--threshold", type=float, default=1.0)
    gp.add_argument("--graph", help="DIMACS graph for the co-2-subdivision embeddings")
    gp.add_argument("--eps", type=float, default=0.1, help="radius slack for co2sub-balls")
    gp.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="check a solution or an oracle claim")
    v.add_argument("input")
    group = v.add_mutually_exclusive_group(required=True)
    group.add_argument("--solution")
    group.add_argument("--claim", choices=("iocp-le-1", "vcdim-le-4", "embedding"))
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[common], help="run a benchmark grid, CSV out")
    b.add_argument("--config", help="JSON suite overriding the default grid")
    b.set_defaults(func=cmd_bench)

    pa = sub.add_parser("params", parents=[common], help="print derived constants")
    pa.add_argument("--epsilon", type=float, required=True)
    pa.add_argument("--beta", type=float, default=1.0)
    pa.add_argument("--d", type=int, default=NEIGHBORHOOD_VC_DIM)
    pa.add_argument("--failure-prob", type=float, default=1e-10)
    pa.add_argument("--n", type=int, default=None, help="instance size for the practical s cap")
    pa.add_argument("--s-cap", type=_positive_int, default=None)
    pa.add_argument("--t-cap", type=_positive_int, default=1000)
    pa.add_argument("--json", action="store_true")
    pa.set_defaults(func=cmd_params)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args)
    except CliError as exc:
        print(f"geoclique: {exc}", file=sys.stderr)
        return exc.code
    except MalformedInputError as exc:
        print(f"geoclique: malformed input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
