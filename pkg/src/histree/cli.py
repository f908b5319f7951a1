"""Command-line interface: check, solve, verify, gen, oracle, sweep.

Machine output is a single JSON document on stdout (stable key order, one
trailing newline); human-readable remarks go to stderr under --verbose.
Identical inputs, flags and seeds produce identical bytes. Exit codes:
0 success/decided, 1 verification failed, 2 usage or input error, 3 search
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .atlas import connected_atlas
from .conditions import condition_report, implication_check, nc_pair_witness
from .errors import HistreeError, ParseError
from .formats import decode_edgelist, encode_graph, parse_graph, sniff_format
from .graphs import Graph, components, edge_cut, is_connected, min_degree_connectivity_guard
from .obstructions import generate_H, match_family
from .rng import SplitMix64, gnp, random_connected
from .solve import solve
from .trees import DEFAULT_BUDGET, DEFAULT_CAP, SpanningTree, exact_search, oracle_enumerate


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1))
    sys.stdout.write("\n")


def _fail(message: str, code: int = 2) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_graph(path: str, fmt_override: str | None) -> Graph:
    fmt = sniff_format(path, fmt_override)
    with open(path, "rb") as fh:
        return parse_graph(fh.read(), fmt)


def _load_tree(path: str, host_n: int) -> SpanningTree:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        edges = [tuple(e) for e in json.loads(text)]
    else:
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'u v', got {line!r}", line=lineno)
            edges.append((int(parts[0]), int(parts[1])))
    return SpanningTree.of(host_n, edges)


def cmd_check(args) -> int:
    g = _load_graph(args.path, args.format)
    if not is_connected(g):
        return _fail("input graph is disconnected")
    report = condition_report(g)
    obstruction = match_family(g)
    _emit({"report": report.to_json_dict(), "obstruction": obstruction.to_json_dict()})
    return 0


def cmd_solve(args) -> int:
    g = _load_graph(args.path, args.format)
    if not is_connected(g):
        return _fail("input graph is disconnected")
    result = solve(g, method=args.method, budget=args.budget, seed=args.seed,
                   timing=args.timing)
    if args.verbose:
        print(f"{args.path}: {result.status} via {result.method}", file=sys.stderr)
    _emit(result.to_json_dict())
    return 3 if result.status == "Unknown" else 0


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.format)
    tree = _load_tree(args.tree, g.n)
    from .trees import hist_failures

    reasons = hist_failures(g, tree)
    _emit({"ok": not reasons, "reasons": reasons})
    return 0 if not reasons else 1


def cmd_gen(args) -> int:
    fam = args.family
    if fam in ("h1", "h2", "h3"):
        g = generate_H(fam.upper(), args.n, coincide=args.coincide)
    elif fam == "gnp":
        if not 0.0 <= args.p <= 1.0:
            return _fail("p must lie in [0, 1]")
        g = gnp(args.n, args.p, args.seed)
    elif fam == "clique":
        from .graphs import complete_graph

        g = complete_graph(args.n)
    else:
        return _fail(f"unknown family {fam!r}")
    sys.stdout.write(encode_graph(g, args.format))
    if args.format == "graph6":
        sys.stdout.write("\n")
    return 0


def cmd_oracle(args) -> int:
    g = _load_graph(args.path, args.format)
    if not is_connected(g):
        return _fail("input graph is disconnected")
    res = oracle_enumerate(g, cap=args.cap)
    _emit(res.to_json_dict())
    return 0


def _sweep_atlas(n_max: int, budget: int, cap: int) -> dict:
    per_order: dict[int, dict] = {}
    mismatches = []
    probe_hits = []
    total = 0
    for g in connected_atlas(n_max):
        total += 1
        stats = per_order.setdefault(
            g.n, {"graphs": 0, "hist": 0, "nohist": 0}
        )
        stats["graphs"] += 1
        search = exact_search(g, budget=budget)
        oracle = oracle_enumerate(g, cap=cap)
        if search.status == "BudgetExceeded" or oracle.status == "CapExceeded":
            mismatches.append({"n": g.n, "issue": "resource limit", "graph6": encode_graph(g, "graph6")})
            continue
        found = search.status == "Found"
        if found != oracle.hist_exists:
            mismatches.append({"n": g.n, "issue": "decision mismatch",
                               "graph6": encode_graph(g, "graph6")})
        stats["hist" if found else "nohist"] += 1
        if not found and g.n >= 2:
            rep = condition_report(g)
            if rep.nc is not None and 2 * rep.nc >= g.n - 1:
                if match_family(g).kind == "None":
                    probe_hits.append(encode_graph(g, "graph6"))
    agreement = 1.0 if not mismatches else (total - len(mismatches)) / total
    return {
        "mode": "atlas",
        "n_max": n_max,
        "graphs": total,
        "agreement": agreement,
        "mismatches": mismatches,
        "per_order": {str(k): v for k, v in sorted(per_order.items())},
        "bound_met_but_no_hist": sorted(probe_hits),
    }


def _sweep_random(samples: int, seed: int, n_max: int) -> dict:
    from .formats import decode_graph6, encode_graph6

    rng = SplitMix64(seed)
    checks = {
        "order_chain": 0,
        "implication": 0,
        "witness_consistency": 0,
        "roundtrip": 0,
        "partition": 0,
        "cut_symmetry": 0,
        "guard": 0,
        "decision_agreement": 0,
    }
    violations = []
    for i in range(samples):
        n = 1 + rng.next_below(n_max)
        g = random_connected(n, seed=rng.next_u64())
        rep = condition_report(g)
        if rep.nc is not None and not rep.delta <= rep.nc <= rep.sigma:
            violations.append({"check": "order_chain", "graph6": encode_graph6(g)})
        checks["order_chain"] += 1
        if not implication_check(g):
            violations.append({"check": "implication", "graph6": encode_graph6(g)})
        checks["implication"] += 1
        if rep.nc is not None:
            _, _, value = nc_pair_witness(g)
            if value != rep.nc:
                violations.append({"check": "witness_consistency", "graph6": encode_graph6(g)})
            checks["witness_consistency"] += 1
        enc = encode_graph6(g)
        if decode_graph6(enc) != g or decode_edgelist(encode_graph(g, "edgelist")) != g:
            violations.append({"check": "roundtrip", "graph6": enc})
        checks["roundtrip"] += 1
        comps = components(g)
        if sorted(v for c in comps for v in c) != list(range(g.n)) or len(comps) != 1:
            violations.append({"check": "partition", "graph6": enc})
        checks["partition"] += 1
        if g.n >= 2:
            side = [v for v in range(g.n) if rng.next_below(2)] or [0]
            if len(side) == g.n:
                side = side[:-1]
            cut = edge_cut(g, side)
            other = edge_cut(g, [v for v in range(g.n) if v not in side])
            if {frozenset(e) for e in cut.boundary} != {frozenset(e) for e in other.boundary}:
                violations.append({"check": "cut_symmetry", "graph6": enc})
            checks["cut_symmetry"] += 1
        if min_degree_connectivity_guard(g) and len(comps) != 1:
            violations.append({"check": "guard", "graph6": enc})
        checks["guard"] += 1
        if g.n <= 8:
            if (exact_search(g).status == "Found") != oracle_enumerate(g).hist_exists:
                violations.append({"check": "decision_agreement", "graph6": enc})
            checks["decision_agreement"] += 1
    return {
        "mode": "random",
        "samples": samples,
        "seed": seed,
        "checks": checks,
        "violations": violations,
    }


def cmd_sweep(args) -> int:
    if args.mode == "atlas":
        if args.n_max > 9:
            return _fail("atlas mode supports n-max <= 9")
        _emit(_sweep_atlas(args.n_max, args.budget, args.cap))
    else:
        _emit(_sweep_random(args.samples, args.seed, args.n_max))
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="histree",
        description="Decide, construct and certify spanning trees with no degree-2 vertex.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("graph6", "edgelist"), default=None,
                       help="override format sniffing (.g6/.el)")

    p = sub.add_parser("check", help="parameter report and obstruction certificate")
    p.add_argument("path")
    add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="decide HIST existence, constructing when possible")
    p.add_argument("path")
    add_format(p)
    p.add_argument("--method", choices=("auto", "constructive", "exact", "greedy"),
                   default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall-clock stats")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a tree file against a graph")
    p.add_argument("graph")
    p.add_argument("tree")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a named graph family member")
    p.add_argument("family", choices=("h1", "h2", "h3", "gnp", "clique"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coincide", action="store_true",
                   help="H3 variant with coinciding far anchors")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="enumerate all spanning trees and count HISTs")
    p.add_argument("path")
    add_format(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="exhaustive or randomized agreement sweeps")
    p.add_argument("--mode", choices=("atlas", "random"), default="atlas")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_sweep)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except ParseError as exc:
        return _fail(f"parse: {exc}")
    except HistreeError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
