"""``pg`` command line tool.

Exit status: 0 on success, 1 on a failed claim or a formula/exact MISMATCH,
2 on usage, parse, validation or resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algo
from .claims import CLAIM_IDS, Corpus, default_corpus, run_corpus
from .config import default_limits
from .divisors import enumerate_mcd_sets, weight
from .errors import PowerGraphError, UsageError
from .graph import Variant, build_power_graph, export_graph
from .group import Group, exponent, is_nilpotent, is_p_group, load_group
from .groupspec import build_group, parse_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def resolve_group(arg: str) -> Group:
    path = Path(arg)
    if arg.lower().endswith(".json") or path.is_file():
        return load_group(path)
    return build_group(parse_spec(arg))


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _formula_clique(G: Group) -> int:
    return max(weight(int(o)) for o in set(G.elem_order.tolist()))


def cmd_stats(args) -> int:
    G = resolve_group(args.group)
    g = build_power_graph(G, Variant.REDUCED)
    comps = algo.connected_components(g)
    diam = algo.diameter(g)
    try:
        exact = algo.clique_number_exact(g)
    except PowerGraphError:
        exact = None
    p = is_p_group(G)
    stats = {
        "group": G.name,
        "order": G.order,
        "exponent": exponent(G),
        "nilpotent": is_nilpotent(G),
        "p_group": p,
        "vertices": g.n,
        "edges": g.edge_count(),
        "components": comps.count,
        "diameter": diam.value if diam.connected else "disconnected",
        "clique_formula": _formula_clique(G),
        "clique_exact": exact,
    }
    if args.json:
        _emit_json(stats)
        return EXIT_OK
    for key, value in stats.items():
        if isinstance(value, bool):
            value = "yes" if value else "no"
        elif value is None:
            value = "no" if key == "p_group" else "n/a (above solver cap)"
        print(f"{key}: {value}")
    return EXIT_OK


def cmd_graph(args) -> int:
    G = resolve_group(args.group)
    data = export_graph(build_power_graph(G, Variant(args.variant)), args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def cmd_weight(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError(f"weight needs n >= 1, got {n}")
    w = weight(n)
    sets = sorted(enumerate_mcd_sets(n), key=lambda s: (s.weight, s.chain)) if args.sets else None
    if args.json:
        obj = {"n": n, "weight": w}
        if sets is not None:
            obj["sets"] = [{"chain": list(s.chain), "weight": s.weight} for s in sets]
        _emit_json(obj)
        return EXIT_OK
    if sets is not None:
        for s in sets:
            print(f"{s} {s.weight}")
    print(f"weight({n}) = {w}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    if args.corpus == "default":
        corpus = default_corpus(args.max_order)
    else:
        texts = [t for t in args.corpus.split(",") if t]
        corpus = Corpus.from_texts(texts, max_order=args.max_order)
    claims = None if args.claims == "all" else [c.strip().upper() for c in args.claims.split(",") if c.strip()]
    result = run_corpus(corpus, claims, workers=args.workers)
    if args.json:
        _emit_json(result.to_json_obj(timing=args.timing))
    else:
        for r in result.reports:
            line = f"{r.status.upper():8} {r.claim:16} {r.group}"
            if r.witness:
                line += f"  -- {r.witness}"
            if args.timing:
                line += f"  ({r.ms:.1f} ms)"
            print(line)
        s = result.summary
        print(f"summary: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
    return EXIT_FAIL if result.failed else EXIT_OK


def cmd_components(args) -> int:
    G = resolve_group(args.group)
    comps = algo.connected_components(build_power_graph(G, Variant.REDUCED))
    if args.json:
        _emit_json({"group": G.name, "components": comps.count, "sizes": list(comps.sizes)})
    else:
        print(f"components: {comps.count}")
        print("sizes: " + " ".join(map(str, comps.sizes)))
    return EXIT_OK


def cmd_diameter(args) -> int:
    G = resolve_group(args.group)
    d = algo.diameter(build_power_graph(G, Variant.REDUCED))
    if args.json:
        _emit_json({"group": G.name, "diameter": d.value if d.connected else "disconnected"})
    else:
        print(d)
    return EXIT_OK


def cmd_clique(args) -> int:
    G = resolve_group(args.group)
    out: dict = {"group": G.name}
    if args.method in ("formula", "both"):
        out["formula"] = _formula_clique(G)
    if args.method in ("exact", "both"):
        out["exact"] = algo.clique_number_exact(build_power_graph(G, Variant.REDUCED))
    status = EXIT_OK
    if args.method == "both":
        out["verdict"] = "MATCH" if out["formula"] == out["exact"] else "MISMATCH"
        status = EXIT_OK if out["verdict"] == "MATCH" else EXIT_FAIL
    if args.json:
        _emit_json(out)
    elif args.method == "both":
        print(f"formula: {out['formula']}")
        print(f"exact: {out['exact']}")
        print(out["verdict"])
    else:
        print(out[args.method])
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pg", description="Reduced power graphs of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="order, exponent, connectivity, diameter and clique number")
    p.add_argument("group", help="group spec (e.g. S3xZ6) or Cayley-table JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("graph", help="export a power graph")
    p.add_argument("group")
    p.add_argument("--variant", choices=["reduced", "full", "directed"], default="reduced")
    p.add_argument("--format", choices=["dot", "edgelist", "json"], default="dot")
    p.add_argument("--out", help="write to FILE instead of standard output")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("weight", help="weight(n), optionally with every MCD-set")
    p.add_argument("n", type=int)
    p.add_argument("--sets", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("verify", help="check every claim over a group corpus")
    p.add_argument("--corpus", default="default", help="'default' or comma-separated specs")
    p.add_argument("--claims", default="all", help="'all' or comma-separated ids: " + ",".join(CLAIM_IDS))
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include per-check wall time (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    for name, func in (("components", cmd_components), ("diameter", cmd_diameter)):
        p = sub.add_parser(name, help=f"{name} of the reduced power graph")
        p.add_argument("group")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("clique", help="clique number of the reduced power graph")
    p.add_argument("group")
    p.add_argument("--method", choices=["formula", "exact", "both"], default="formula")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_clique)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        default_limits()
        return args.func(args)
    except PowerGraphError as exc:
        print(f"pg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
