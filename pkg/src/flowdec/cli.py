"""Command-line front end: analyze, decompose, verify, gen, bench.

Exit codes: 0 success, 1 verification failure, 2 bad input or
parameters, 3 exact search ran out of budget.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .decompose import greedy_decompose, parity_fix_decompose, verify
from .errors import BudgetExceeded, FlowDecError, InvalidParameters
from .exact import DEFAULT_BUDGET, exact_mfd
from .formats import DecompositionFile, GraphFile, read_decomposition, read_graph, write_text
from .generators import FAMILIES, InstanceSpec, build_instance
from .graph import flow_subgraph
from .minflow import flow_width, width
from .structure import analyze_structure, parallel_width

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
ALGOS = ("parityfix", "greedy", "exact")

BENCH_COLUMNS = [
    "family", "params", "n", "m", "val", "maxflow", "width", "fwidth",
    "pw", "algo", "size", "lower_bound", "ratio", "wall_ms",
]

ANALYZE_KEYS = [
    "n", "m", "source", "sink", "value", "norm", "log_factor", "width",
    "support_width", "fwidth", "pw", "pw_exact", "pw_lower", "pw_upper",
    "width_stable", "ch2_witness",
]


def _emit_json(obj):
    print(json.dumps(obj, sort_keys=False))


def run_algorithm(network, algo, merge=False, budget=DEFAULT_BUDGET):
    """Returns (decomposition, iterations, optimal or None)."""
    if algo == "parityfix":
        dec, stats = parity_fix_decompose(network, merge=merge)
        return dec, stats.iterations, None
    if algo == "greedy":
        return greedy_decompose(network), [], None
    if algo == "exact":
        res = exact_mfd(network, budget=budget)
        return res.decomposition, [], res.optimal
    raise InvalidParameters(f"unknown algorithm {algo!r}")


# --- analyze ---------------------------------------------------------------

def analyze_report(network, pw_budget=None):
    g = network.graph
    rep = analyze_structure(g, pw_budget)
    pw = rep.parallel_width
    if network.value > 0:
        support_width = width(flow_subgraph(network).graph)[0]
        fw = flow_width(network)[0]
    else:
        support_width = fw = 0
    return {
        "n": g.n,
        "m": g.m,
        "source": g.source,
        "sink": g.sink,
        "value": network.value,
        "norm": network.norm,
        "log_factor": network.log_factor,
        "width": rep.width,
        "support_width": support_width,
        "fwidth": fw,
        "pw": str(pw),
        "pw_exact": pw.exact,
        "pw_lower": pw.lower,
        "pw_upper": pw.upper,
        "width_stable": rep.width_stable,
        "ch2_witness": list(rep.ch2_witness) if rep.ch2_witness else None,
    }


def cmd_analyze(args):
    gf = read_graph(args.input)
    report = analyze_report(gf.network, args.pw_budget)
    if args.json:
        _emit_json(report)
    else:
        pad = max(map(len, ANALYZE_KEYS))
        for key in ANALYZE_KEYS:
            val = report[key]
            if isinstance(val, bool):
                val = str(val).lower()
            print(f"{key:<{pad}}  {'-' if val is None else val}")
    return EXIT_OK


# --- decompose -------------------------------------------------------------

def cmd_decompose(args):
    network = read_graph(args.input).network
    dec, iterations, optimal = run_algorithm(network, args.algo, args.merge, args.budget)
    verdict = verify(network, dec)
    lower = flow_width(network)[0]
    dfile = DecompositionFile.from_decomposition(dec, network.graph)
    text = dfile.format()
    if args.out:
        write_text(args.out, text)
    report = {
        "algo": args.algo,
        "size": dec.size,
        "lower_bound": lower,
        "ratio": f"{dec.size / lower:.4f}",
        "optimal": optimal,
        "value": network.value,
        "norm": network.norm,
        "log_factor": network.log_factor,
        "iterations": [[it.index, it.value, it.flow_width] for it in iterations],
        "verified": bool(verdict),
        "out": args.out,
        "paths": None if args.out else [[p.weight, list(p.edges)] for p in dec.paths],
    }
    if args.json:
        _emit_json(report)
    else:
        print(f"algo         {args.algo}")
        print(f"size         {dec.size}")
        print(f"lower_bound  {lower}")
        print(f"ratio        {report['ratio']}")
        if optimal is not None:
            print(f"optimal      {str(optimal).lower()}")
        if iterations:
            print("i  val(f_i)  fwidth")
            for i, v, fw in report["iterations"]:
                print(f"{i}  {v}  {fw}")
        if not args.out:
            sys.stdout.write(text)
    if not verdict:
        print(f"error: output failed verification: {verdict}", file=sys.stderr)
        return EXIT_VERIFY
    if optimal is False:
        print("warning: exact search budget exhausted; best found emitted", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# --- verify ----------------------------------------------------------------

def cmd_verify(args):
    network = read_graph(args.graph).network
    dfile = read_decomposition(args.decomposition)
    dfile.check_edges(network.graph)
    verdict = verify(network, dfile.decomposition())
    print(verdict)
    return EXIT_OK if verdict else EXIT_VERIFY


# --- gen -------------------------------------------------------------------

def cmd_gen(args):
    spec = InstanceSpec(args.family, tuple(args.params), args.seed)
    network, witness = build_instance(spec)
    header = [f"# {args.family} {spec.label} seed={args.seed}".replace("  ", " ")]
    text = GraphFile(network, header).format()
    if args.out:
        write_text(args.out, text)
        if witness is not None:
            if not verify(network, witness):
                print("error: generated witness does not verify", file=sys.stderr)
                return EXIT_VERIFY
            wfile = DecompositionFile.from_decomposition(witness, network.graph, header)
            write_text(args.out + ".witness", wfile.format())
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- bench -----------------------------------------------------------------

def bench_spec(family, size, seed):
    """Map a single size knob onto concrete generator parameters."""
    if size < 1:
        raise InvalidParameters(f"size must be positive, got {size}")
    if family == "genset":
        params = tuple(range(1, size + 1))
    elif family == "threepart":
        rng = random.Random(seed * 1009 + size)
        triples = [(4, 4, 7), (4, 5, 6), (5, 5, 5)]
        a = [x for _ in range(size) for x in rng.choice(triples)]
        params = (15, *a)
    elif family in ("chk", "pc"):
        params = (size,)
    elif family == "random_paths":
        params = (max(size, 3), 4, 100)
    elif family == "series_parallel":
        params = (size, 4, 1000)
    elif family == "adversarial":
        params = (size, size)
    else:
        raise InvalidParameters(f"unknown family {family!r}")
    return InstanceSpec(family, params, seed)


def _bench_instance(job):
    spec, algos, exact_budget, pw_budget, timing = job
    network, _ = build_instance(spec)
    g = network.graph
    pw = parallel_width(g, pw_budget)
    fw = flow_width(network)[0]
    common = {
        "family": spec.family,
        "params": spec.label,
        "n": g.n,
        "m": g.m,
        "val": network.value,
        "maxflow": network.norm,
        "width": width(g)[0],
        "fwidth": fw,
        "pw": str(pw),
        "lower_bound": fw,
    }
    rows = []
    for algo in algos:
        t0 = time.perf_counter()
        dec, _, optimal = run_algorithm(network, algo, budget=exact_budget)
        elapsed = (time.perf_counter() - t0) * 1000
        row = dict(common)
        row.update(
            algo=algo,
            size=dec.size,
            ratio=f"{dec.size / fw:.4f}",
            wall_ms=f"{elapsed:.3f}" if timing else "",
            _verified=bool(verify(network, dec)),
            _optimal=optimal,
        )
        rows.append(row)
    return rows


def dominance_failures(rows):
    """Instances where an optimal exact row is beaten by another algorithm."""
    bad = []
    by_instance = {}
    for r in rows:
        by_instance.setdefault((r["family"], r["params"]), []).append(r)
    for key, group in by_instance.items():
        for ex in (r for r in group if r["algo"] == "exact" and r.get("_optimal")):
            for other in group:
                if other["size"] < ex["size"]:
                    bad.append((key, other["algo"]))
    return bad


def cmd_bench(args):
    families = args.families
    algos = args.algos
    for fam in families:
        if fam not in FAMILIES:
            raise InvalidParameters(f"unknown family {fam!r}")
    for algo in algos:
        if algo not in ALGOS:
            raise InvalidParameters(f"unknown algorithm {algo!r}")
    specs = [bench_spec(fam, size, args.seed) for fam in families for size in args.sizes]
    jobs = [(s, algos, args.budget, args.pw_budget, not args.no_timing) for s in specs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_instance, jobs))
    else:
        results = [_bench_instance(j) for j in jobs]
    rows = [r for group in results for r in group]
    fam_rank = {f: i for i, f in enumerate(families)}
    algo_rank = {a: i for i, a in enumerate(algos)}
    order = {s.label: s.params for s in specs}
    rows.sort(key=lambda r: (fam_rank[r["family"]], order[r["params"]], algo_rank[r["algo"]]))

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        write_text(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())

    status = EXIT_OK
    unverified = [(r["family"], r["params"], r["algo"]) for r in rows if not r["_verified"]]
    if unverified:
        print(f"error: decompositions failed verification: {unverified}", file=sys.stderr)
        status = EXIT_VERIFY
    failures = dominance_failures(rows)
    if failures:
        print(f"error: exact optimum beaten by another algorithm: {failures}", file=sys.stderr)
        status = EXIT_VERIFY
    return status


# --- entry point -----------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="flowdec", description="Flow decomposition toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural parameters of a flow network")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.add_argument("--pw-budget", type=_positive, default=None,
                   help="search-node budget for parallel-width (env FLOWDEC_PW_BUDGET)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="decompose the flow into weighted paths")
    p.add_argument("input")
    p.add_argument("--algo", choices=ALGOS, default="parityfix")
    p.add_argument("--out", default=None, help="decomposition file to write")
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="exact search node budget")
    p.add_argument("--merge", action="store_true", help="merge repeated paths (parityfix)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition against a graph file")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run algorithms over generated families, CSV out")
    p.add_argument("--families", nargs="+", default=["genset", "chk", "pc"])
    p.add_argument("--sizes", nargs="+", type=int, default=[3])
    p.add_argument("--algos", nargs="+", default=list(ALGOS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--pw-budget", type=_positive, default=None)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave wall_ms empty (byte-stable output)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FlowDecError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
