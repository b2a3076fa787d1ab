"""Command-line interface.

Exit codes: 0 success (and, for validate, a valid decomposition); 1 a check
failed (invalid decomposition or bramble); 2 malformed input; 3 an exact
solver size limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .atomizer import atomize, exact_treewidth
from .brambles import connected_order, order, read_bramble, validate_bramble
from .cycles import enumerate_geodesic_cycles, longest_geodesic_cycle
from .errors import FormatError, SizeLimitError
from .graph import Graph, components, read_gr
from .navi import SubNavi, format_navi
from .pipeline import ctw_upper_bound, exact_ctw_small, theorem_width_bound
from .treedec import (
    TreeDecomposition,
    glue_block_decompositions,
    read_td,
    relabel_decomposition,
    validate,
    write_td,
)


def _load_graph(path) -> Graph:
    return read_gr(path)


def _load_td(path, g: Graph) -> TreeDecomposition:
    td, declared_n = read_td(path)
    if declared_n != g.n:
        raise FormatError(
            f"{path}: decomposition declares {declared_n} vertices, graph has {g.n}"
        )
    return td


def _seed_decomposition(g: Graph, td_path, max_n) -> TreeDecomposition:
    """Supplied decomposition, or an exact one (componentwise) if none."""
    if td_path is not None:
        return _load_td(td_path, g)
    _, td = exact_treewidth(g, max_n=max_n)
    return td


def _atomized(g: Graph, seed: TreeDecomposition) -> TreeDecomposition:
    if g.is_connected():
        return atomize(g, seed)
    parts = []
    for comp in components(g):
        sub, old_ids = g.induced(comp)
        index = {v: i for i, v in enumerate(old_ids)}
        bags = {
            t: frozenset(index[v] for v in bag if v in comp)
            for t, bag in seed.bags.items()
        }
        from .treedec import prune_empty_bags

        restricted = prune_empty_bags(TreeDecomposition(bags, seed.edges))
        parts.append(relabel_decomposition(atomize(sub, restricted), old_ids))
    return glue_block_decompositions(g, parts)


def cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    td = _load_td(args.td, g)
    report = validate(g, td)
    print(f"T1 (vertices covered): {'ok' if report.t1_ok else 'VIOLATED'}")
    if not report.t1_ok:
        missing = ", ".join(str(v + 1) for v in sorted(report.t1_missing))
        print(f"T1 violated: vertices not covered: {missing}")
    print(f"T2 (edges covered): {'ok' if report.t2_ok else 'VIOLATED'}")
    if not report.t2_ok:
        u, v = report.t2_witness
        print(f"T2 violated: edge ({u + 1}, {v + 1})")
    print(f"T3 (coherence): {'ok' if report.t3_ok else 'VIOLATED'}")
    if not report.t3_ok:
        print(f"T3 violated: vertex {report.t3_witness + 1}")
    print(f"tree: {'ok' if report.tree_ok else 'VIOLATED (not a tree)'}")
    print(f"width: {report.width}")
    print(f"connected parts: {'yes' if report.connected_parts else 'no'}")
    print(f"valid: {'yes' if report.valid else 'no'}")
    return 0 if report.valid else 1


def cmd_atomize(args) -> int:
    g = _load_graph(args.graph)
    seed = _seed_decomposition(g, args.td, args.max_n)
    if not validate(g, seed).valid:
        raise FormatError(f"{args.td}: decomposition is not valid for the graph")
    result = _atomized(g, seed)
    write_td(args.out, result, g.n)
    print(f"bags {len(result.bags)} width {result.width}")
    return 0


def cmd_connectify(args) -> int:
    g = _load_graph(args.graph)
    seed = _load_td(args.td, g) if args.td else None
    result = ctw_upper_bound(g, seed=seed, max_n=args.max_n)
    write_td(args.out, result.ctd, g.n)
    if args.report:
        payload = {
            "n": result.n,
            "m": result.m,
            "tw": result.tw,
            "tw_certified": result.tw_certified,
            "k": result.k,
            "l_navi": result.navi_length,
            "width_before": result.width_before,
            "width_after": result.width,
            "theorem1_bound": result.theorem_bound,
            "bound_satisfied": result.bound_satisfied,
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    if args.navi_out:
        with open(args.navi_out, "w", encoding="utf-8") as fh:
            fh.write(format_navi(SubNavi(result.navi_paths)))
    print(
        f"width {result.width} (bound {result.theorem_bound}, "
        f"tw {result.tw}, k {result.k})"
    )
    return 0


def cmd_geodesic_cycles(args) -> int:
    g = _load_graph(args.graph)
    cycles = enumerate_geodesic_cycles(g)
    longest = max((c.length for c in cycles), default=1)
    if not args.longest and not args.list:
        print(f"cycles {len(cycles)}")
        print(f"longest {longest}")
    if args.longest:
        print(f"longest {longest}")
    if args.list:
        for c in cycles:
            seq = " ".join(str(v + 1) for v in c.vertices)
            print(f"cycle {c.length} : {seq}")
    return 0


def cmd_bramble_order(args) -> int:
    g = _load_graph(args.graph)
    b = read_bramble(args.bramble)
    report = validate_bramble(g, b)
    if not report.ok:
        v = report.violation
        print(f"invalid bramble: {v.kind} at {v.witness}", file=sys.stderr)
        return 1
    value = connected_order(g, b) if args.connected else order(g, b)
    print(value)
    return 0


def cmd_bound(args) -> int:
    g = _load_graph(args.graph)
    tw, _ = exact_treewidth(g, max_n=args.max_n)
    k = longest_geodesic_cycle(g)
    print(f"tw={tw} k={k} bound={theorem_width_bound(tw, k)}")
    return 0


def cmd_exact_ctw(args) -> int:
    g = _load_graph(args.graph)
    print(exact_ctw_small(g, max_n=args.max_n))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctwkit",
        description="Connected tree-width toolkit over PACE-style graph files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a decomposition against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("atomize", help="drive a decomposition to the move fixpoint")
    p.add_argument("--graph", required=True)
    p.add_argument("--td")
    p.add_argument("--out", required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_atomize)

    p = sub.add_parser(
        "connectify", help="run the full pipeline to a connected decomposition"
    )
    p.add_argument("--graph", required=True)
    p.add_argument("--td")
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.add_argument("--navi-out")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_connectify)

    p = sub.add_parser("geodesic-cycles", help="enumerate geodesic cycles")
    p.add_argument("--graph", required=True)
    p.add_argument("--longest", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_geodesic_cycles)

    p = sub.add_parser("bramble-order", help="exact bramble (connected) order")
    p.add_argument("--graph", required=True)
    p.add_argument("--bramble", required=True)
    p.add_argument("--connected", action="store_true")
    p.set_defaults(func=cmd_bramble_order)

    p = sub.add_parser("bound", help="print tw, k and the width bound")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("exact-ctw", help="exact connected width (tiny graphs)")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_exact_ctw)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
