"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain violation,
3 resource cap exceeded.  Data goes to stdout, errors to stderr, and the
output for a given input is byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bnd
from .errors import DomainError, ResourceLimitError
from .events import (
    bernoulli_product,
    from_outcomes,
    union_prob_exact,
)
from .graphs import (
    Graph,
    build_graph,
    clique_complex,
    connected_components,
    counterexample_family,
    counterexample_graph,
    independence_number,
    is_chordal,
    path_graph,
    truncated_euler_sum,
)
from .optimize import best_path, best_tree, pairwise_weights, path_weight, tree_weight
from .poly import Polynomial
from .reliability import (
    DEFAULT_BOUND_KINDS,
    bound_polynomials,
    build_network,
    exact_reliability,
    path_event_system,
    sweep,
)
from .values import RATIONAL, REAL

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _json_value(value):
    if isinstance(value, Polynomial):
        return value.coefficient_string()
    if isinstance(value, Fraction):
        return str(value)
    return value


def _report_dict(report: bnd.BoundReport) -> dict:
    return {
        "kind": report.kind,
        "direction": report.direction,
        "r": report.truncation,
        "value": _json_value(report.value),
        "alpha_used": report.alpha_used,
        "n": report.n,
        "edges": report.edge_count,
    }


# ---------------------------------------------------------------------------
# input loaders


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_graph(path: str) -> Graph:
    text = _read_text(path).strip()
    if text.startswith("{"):
        data = json.loads(text)
        return build_graph(int(data["vertices"]), [tuple(e) for e in data["edges"]])
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise _UsageError(f"graph file {path} is empty")
    first = lines[0].split()
    if len(first) != 2:
        raise _UsageError("graph text format starts with a line 'n m'")
    n, m = int(first[0]), int(first[1])
    if len(lines) - 1 != m:
        raise _UsageError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        u, v = line.split()
        edges.append((int(u), int(v)))
    return build_graph(n, edges)


def _parse_values(raw_values):
    """Return (backend, values); strings select the exact rational backend."""
    if any(isinstance(v, str) for v in raw_values):
        return RATIONAL, [Fraction(str(v)) for v in raw_values]
    return REAL, [float(v) for v in raw_values]


def _load_events(path: str):
    data = json.loads(_read_text(path))
    if "weights" in data:
        backend, weights = _parse_values(data["weights"])
        return from_outcomes(weights, data["events"], backend=backend)
    if "coords" in data:
        backend, probs = _parse_values(data["probs"])
        if len(probs) != int(data["coords"]):
            raise _UsageError("'probs' must list one value per coordinate")
        return bernoulli_product(probs, data["events"], backend=backend)
    raise _UsageError("events file needs either 'weights' or 'coords'")


def _load_network(path: str):
    data = json.loads(_read_text(path))
    return build_network(
        int(data["nodes"]),
        [tuple(a) for a in data["arcs"]],
        int(data["s"]),
        int(data["t"]),
        reliability=data.get("p", "symbolic"),
    )


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_graph_check(args) -> int:
    g = _load_graph(args.file)
    counts = clique_complex(g).size_counts
    sizes = " ".join(f"{size}:{counts[size]}" for size in sorted(counts))
    print(f"vertices: {g.vertex_count}")
    print(f"edges: {g.edge_count}")
    print(f"chordal: {'yes' if is_chordal(g) else 'no'}")
    print(f"components: {connected_components(g)}")
    print(f"independence_number: {independence_number(g)}")
    print(f"clique_sizes: {sizes}")
    return 0


def _parse_order(raw: str | None, n: int):
    if raw is None:
        return tuple(range(n))
    return tuple(int(part) for part in raw.split(","))


def _compute_report(args, sys_) -> bnd.BoundReport:
    kind = args.kind
    needs_graph = kind.startswith("chordal") or kind.startswith("hunter")
    g = _load_graph(args.graph) if args.graph else None
    if needs_graph and g is None:
        raise _UsageError(f"--kind {kind} requires --graph")
    if kind == "bonferroni-upper":
        return bnd.classical_bonferroni(sys_, args.r or 1, "upper")
    if kind == "bonferroni-lower":
        return bnd.classical_bonferroni(sys_, args.r or 1, "lower")
    if kind == "chordal-upper":
        return bnd.chordal_upper(sys_, g, r=args.r, unchecked=args.unchecked)
    if kind in ("chordal-lower", "chordal-lower-sharpened"):
        sharpened = args.sharpened or kind == "chordal-lower-sharpened"
        return bnd.chordal_lower(
            sys_, g, r=args.r, sharpened=sharpened, unchecked=args.unchecked
        )
    if kind == "hunter-upper":
        return bnd.hunter_upper_tree(sys_, g)
    if kind == "hunter-lower":
        return bnd.hunter_lower_tree(sys_, g)
    if kind == "path-lower":
        return bnd.path_lower(sys_, _parse_order(args.order, sys_.event_count))
    if kind == "kwerel-upper":
        return bnd.kwerel_upper(sys_)
    if kind == "kwerel-lower":
        return bnd.kwerel_lower(sys_)
    if kind == "seneta-upper":
        return bnd.seneta_upper(sys_, args.j, args.k)
    if kind == "seneta-lower":
        return bnd.seneta_lower(sys_, args.j, args.k)
    if kind == "kwerel2-lower":
        return bnd.kwerel2_lower(sys_)
    if kind == "generalized-lower":
        return bnd.generalized_lower(sys_, args.m)
    raise _UsageError(f"unknown bound kind {kind!r}")


def _cmd_bounds_compute(args) -> int:
    sys_ = _load_events(args.events)
    report = _compute_report(args, sys_)
    print(json.dumps(_report_dict(report), indent=2))
    return 0


def _cmd_bounds_all(args) -> int:
    sys_ = _load_events(args.events)
    g = _load_graph(args.graph)
    n = sys_.event_count
    rows = [
        bnd.classical_bonferroni(sys_, 1, "upper"),
        bnd.classical_bonferroni(sys_, 1, "lower"),
        bnd.chordal_upper(sys_, g, unchecked=args.unchecked),
        bnd.chordal_upper(sys_, g, r=1, unchecked=args.unchecked),
        bnd.chordal_lower(sys_, g, unchecked=args.unchecked),
        bnd.chordal_lower(sys_, g, r=1, unchecked=args.unchecked),
    ]
    if sys_.backend.ordered:
        rows.append(bnd.chordal_lower(sys_, g, sharpened=True, unchecked=args.unchecked))
    if g.edge_count == n - 1 and connected_components(g) == 1:
        rows.append(bnd.hunter_upper_tree(sys_, g))
        rows.append(bnd.hunter_lower_tree(sys_, g))
    rows.append(bnd.path_lower(sys_, tuple(range(n))))
    rows.append(bnd.kwerel_upper(sys_))
    rows.append(bnd.kwerel_lower(sys_))
    if n >= 3:
        rows.append(bnd.kwerel2_lower(sys_))
    labeled = [(report.kind, report) for report in rows]
    for m in range(n):
        labeled.append((f"generalized-lower m={m}", bnd.generalized_lower(sys_, m)))
    print(f"{'kind':<26} {'dir':<5} {'r':>3}  value")
    print(f"{'exact-union':<26} {'-':<5} {'-':>3}  {_fmt(union_prob_exact(sys_))}")
    for label, report in labeled:
        r_str = "-" if report.truncation is None else str(report.truncation)
        print(f"{label:<26} {report.direction:<5} {r_str:>3}  {_fmt(report.value)}")
    return 0


def _cmd_optimize(args) -> int:
    sys_ = _load_events(args.events)
    wm = pairwise_weights(sys_)
    if args.structure == "tree":
        tree = best_tree(wm, args.objective)
        result = {
            "tree_edges": [list(e) for e in tree.edges],
            "objective_value": tree_weight(wm, tree),
            "mode": "exact",
            "optimal": True,
        }
    else:
        mode = "heuristic" if args.heuristic else "exact"
        order = best_path(wm, mode)
        result = {
            "path_order": list(order),
            "objective_value": path_weight(wm, order),
            "mode": mode,
            "optimal": mode == "exact",
        }
    print(json.dumps(result, indent=2))
    return 0


def _parse_sweep(raw: str):
    parts = raw.split(":")
    if len(parts) != 3:
        raise _UsageError("--sweep expects start:stop:step")
    start, stop, step = (Fraction(part) for part in parts)
    if step <= 0:
        raise _UsageError("sweep step must be positive")
    values = []
    p = start
    while p <= stop:
        values.append(p)
        p += step
    return values


def _cmd_reliability(args) -> int:
    net = _load_network(args.network)
    kinds = DEFAULT_BOUND_KINDS
    if args.bounds:
        kinds = tuple(part.strip() for part in args.bounds.split(",") if part.strip())
        unknown = [kind for kind in kinds if kind not in DEFAULT_BOUND_KINDS]
        if unknown:
            raise _UsageError(f"unknown bound kinds: {', '.join(unknown)}")
    if args.sweep:
        header, rows = sweep(net, _parse_sweep(args.sweep), kinds)
        print(",".join(header))
        for row in rows:
            print(",".join(format(float(cell), ".12g") for cell in row))
        return 0
    if net.symbolic:
        polys = bound_polynomials(net)
        for kind in ("exact", *kinds):
            poly = polys[kind]
            print(f"{kind}: {poly}")
            print(f"{kind} coeffs: {poly.coefficient_string()}")
        return 0
    sys_ = path_event_system(net)
    values = {
        "exact": exact_reliability(net),
        "hunter-lower": bnd.hunter_lower_tree(sys_, path_graph(sys_.event_count)).value,
        "kwerel-lower": bnd.kwerel_lower(sys_).value,
        "bonferroni-lower": bnd.classical_bonferroni(sys_, 1, "lower").value,
    }
    for kind in ("exact", *kinds):
        print(f"{kind}: {_fmt(values[kind])}")
    return 0


def _all_certain_system(n: int):
    return from_outcomes([Fraction(1)], [[0]] * n, backend=RATIONAL)


def _print_counterexample(g, label: str) -> None:
    counts = clique_complex(g).size_counts
    sizes = " ".join(f"{size}:{counts[size]}" for size in sorted(counts))
    euler = truncated_euler_sum(g)
    sys_ = _all_certain_system(g.vertex_count)
    value = bnd.chordal_lower(sys_, g, unchecked=True).value
    verdict = "exceeds 1" if value > 1 else "does not exceed 1"
    print(f"{label}: {g.vertex_count} vertices, {g.edge_count} edges")
    print(f"chordal: {'yes' if is_chordal(g) else 'no'}")
    print(f"independence_number: {independence_number(g)}")
    print(f"clique_sizes: {sizes}")
    print(f"alternating clique sum: {euler}")
    print(f"with all events certain the lower-bound formula gives bound {value} {verdict}")


def _cmd_demo(args) -> int:
    _print_counterexample(counterexample_graph(), "counterexample graph")
    k = args.k if args.k is not None else 3
    _print_counterexample(counterexample_family(k), f"counterexample family k={k}")
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser() -> _Parser:
    parser = _Parser(prog="chordalbounds", description=__doc__)
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="seed for randomized subcommands (reserved; current subcommands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    graph = sub.add_parser("graph", help="graph inspection")
    graph_sub = graph.add_subparsers(dest="action", required=True, parser_class=_Parser)
    check = graph_sub.add_parser("check", help="chordality, components, cliques")
    check.add_argument("file")
    check.set_defaults(handler=_cmd_graph_check)

    bounds_p = sub.add_parser("bounds", help="evaluate bounds")
    bounds_sub = bounds_p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    compute = bounds_sub.add_parser("compute", help="one bound as JSON")
    compute.add_argument("events")
    compute.add_argument("--graph", default=None)
    compute.add_argument("--kind", required=True)
    compute.add_argument("-r", type=int, default=None)
    compute.add_argument("--sharpened", action="store_true")
    compute.add_argument("--unchecked", action="store_true")
    compute.add_argument("--order", default=None, help="event order for path-lower, e.g. 0,2,1")
    compute.add_argument("--j", type=int, default=0)
    compute.add_argument("--k", type=int, default=1)
    compute.add_argument("--m", type=int, default=0)
    compute.set_defaults(handler=_cmd_bounds_compute)
    all_p = bounds_sub.add_parser("all", help="every applicable bound plus the exact value")
    all_p.add_argument("events")
    all_p.add_argument("--graph", required=True)
    all_p.add_argument("--unchecked", action="store_true")
    all_p.set_defaults(handler=_cmd_bounds_all)

    optimize_p = sub.add_parser("optimize", help="pick a bound-optimizing tree or path")
    optimize_p.add_argument("structure", choices=("tree", "path"))
    optimize_p.add_argument("events")
    optimize_p.add_argument(
        "--objective",
        choices=("minimize-weight", "maximize-weight"),
        default="minimize-weight",
    )
    mode = optimize_p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    optimize_p.set_defaults(handler=_cmd_optimize)

    reliability_p = sub.add_parser("reliability", help="network reliability report")
    reliability_p.add_argument("network")
    reliability_p.add_argument("--sweep", default=None, help="grid start:stop:step")
    reliability_p.add_argument("--bounds", default=None, help="comma-separated bound kinds")
    reliability_p.set_defaults(handler=_cmd_reliability)

    demo = sub.add_parser("demo", help="built-in demonstrations")
    demo_sub = demo.add_subparsers(dest="action", required=True, parser_class=_Parser)
    counter = demo_sub.add_parser(
        "counterexample", help="invalid lower bounds on non-chordal graphs"
    )
    counter.add_argument("--k", type=int, default=None, help="family parameter (odd, >= 3)")
    counter.set_defaults(handler=_cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return 0 if (exc.code or 0) == 0 else 1
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
