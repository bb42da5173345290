"""Command-line interface.

Exit codes: 0 for success (and "yes" answers), 1 for "no" answers and
conformance violations, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import campaigns, corpus, decomposition, files, minors, unbreakability
from .matroid import BudgetExceeded, MatroidView
from .multigraph import GraphError, Multigraph
from .tripartition import CycleClass, QuasiBiasedGraph

YES, NO, USAGE = 0, 1, 2


def _load_classified(path: str) -> QuasiBiasedGraph:
    obj = files.load(path)
    if not isinstance(obj, QuasiBiasedGraph):
        raise files.ParseError(0, "input file has no bias block")
    return obj


def _edge_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _emit(payload: dict, as_json: bool):
    if as_json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def cmd_validate(args) -> int:
    obj = files.load(args.file)
    if isinstance(obj, Multigraph):
        print(f"multigraph: {len(obj.vertices)} vertices, {len(obj.edges)} edges")
        return YES
    report = obj.validate()
    _emit(
        {
            "proper": report.ok,
            "theta_violations": len(report.theta_violations),
            "meeting_violations": len(report.meeting_violations),
        },
        args.json,
    )
    return YES if report.ok else NO


def cmd_rank(args) -> int:
    m = MatroidView(_load_classified(args.file))
    subset = _edge_list(args.edges) if args.edges else list(m.ground)
    print(m.rank(subset))
    return YES


def cmd_circuits(args) -> int:
    m = MatroidView(_load_classified(args.file))
    for c in m.circuits():
        print(" ".join(str(e) for e in sorted(c)))
    return YES


def cmd_is_connected(args) -> int:
    m = MatroidView(_load_classified(args.file))
    ok = m.is_connected()
    print("connected" if ok else "disconnected")
    return YES if ok else NO


def cmd_is_3connected(args) -> int:
    m = MatroidView(_load_classified(args.file))
    ok = m.is_3connected()
    print("3-connected" if ok else "not 3-connected")
    if not ok and args.witness:
        seps = m.find_2separations()
        if seps:
            a, b = seps[0]
            print(f"separation: {sorted(a)} | {sorted(b)}")
    return YES if ok else NO


def cmd_is_unbreakable(args) -> int:
    m = MatroidView(_load_classified(args.file))
    ok, witness = unbreakability.is_unbreakable_rank2(m)
    print("unbreakable" if ok else "breakable")
    if not ok and args.witness and witness is not None:
        print(f"flat: {sorted(witness.flat)} (quotient rank {witness.quotient_rank})")
    return YES if ok else NO


def cmd_classify_shape(args) -> int:
    obj = files.load(args.file)
    graph = obj.graph if isinstance(obj, QuasiBiasedGraph) else obj
    print(graph.classify_shape())
    return YES


def cmd_balancing_sets(args) -> int:
    q = _load_classified(args.file)
    found = unbreakability.find_balancing_sets(q, args.max_rank)
    for s in found:
        print(" ".join(str(e) for e in sorted(s)))
    return YES if found else NO


def cmd_structure(args) -> int:
    q = _load_classified(args.file)
    outcome = unbreakability.breakability_structure(q)
    if outcome is None:
        print("no structural outcome")
        return NO
    payload = {"tag": outcome.tag.name, "parts": outcome.parts}
    if outcome.balancing_set is not None:
        payload["balancing_set"] = sorted(outcome.balancing_set)
    _emit(payload, args.json)
    return YES


def cmd_minor(args) -> int:
    q = _load_classified(args.file)
    recipe = minors.MinorRecipe(
        tuple(_edge_list(args.delete)) if args.delete else (),
        tuple(_edge_list(args.contract)) if args.contract else (),
    )
    result = minors.apply_recipe(q, recipe)
    sys.stdout.write(files.serialize(result))
    return YES


def cmd_linksum(args) -> int:
    left = _load_classified(args.left)
    right = files.load(args.right)
    if isinstance(right, QuasiBiasedGraph):
        right = right.graph
    glued = decomposition.link_sum(
        decomposition.LinkSumSpec(left, right, args.basepoint, args.swap_ends)
    )
    sys.stdout.write(files.serialize(glued))
    return YES


def cmd_verify_decomposition(args) -> int:
    target = MatroidView(_load_classified(args.target))
    root = _load_classified(args.root)
    joins = []
    for item in args.join or []:
        bp_text, path = item.split(":", 1)
        joins.append((int(bp_text), files.load(path)))
    tree = decomposition.DecompositionTree(root, tuple(joins))
    report = decomposition.verify_decomposition(tree, target)
    _emit(
        {
            "circuits_match": report["circuits_match"],
            "basepoints_free": report["basepoints_free"],
            "target_unbreakable": report["target_unbreakable"],
            "summands": report["summands"],
        },
        args.json,
    )
    return YES if report["circuits_match"] else NO


def cmd_free_elements(args) -> int:
    m = MatroidView(_load_classified(args.file))
    free = m.free_elements()
    print(" ".join(str(e) for e in free) if free else "none")
    return YES if free else NO


def cmd_enumerate(args) -> int:
    params = corpus.EnumerationParams(args.vertices, args.edges)
    stream = (
        corpus.enumerate_tripartitions(params)
        if args.tripartitions
        else corpus.enumerate_signed(params)
    )
    count = 0
    for q in stream:
        count += 1
        if not args.count:
            sys.stdout.write(files.serialize(q))
            sys.stdout.write("---\n")
        if args.limit and count >= args.limit:
            break
    if args.count:
        print(count)
    return YES


def cmd_check_theorem(args) -> int:
    if args.list:
        for claim in sorted(campaigns.CAMPAIGNS):
            print(f"{claim}: {campaigns.CAMPAIGNS[claim].description}")
        return YES
    if not args.claim:
        print("a claim id is required (or use --list)", file=sys.stderr)
        return USAGE
    params = None
    if args.vertices or args.edges:
        spec = campaigns.CAMPAIGNS.get(args.claim)
        if spec is None:
            print(f"unknown claim {args.claim!r}", file=sys.stderr)
            return USAGE
        params = corpus.EnumerationParams(
            args.vertices or spec.default_params.max_vertices,
            args.edges or spec.default_params.max_edges,
        )
    try:
        report = campaigns.run_campaign(args.claim, params, args.limit)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return USAGE
    status = "conforms" if report.ok else "VIOLATED"
    if args.format == "csv":
        print("claim,checked,applicable,violations,conforms")
        print(
            f"{report.claim},{report.checked},{report.applicable},"
            f"{len(report.violations)},{report.ok}"
        )
        return YES if report.ok else NO
    print(
        f"{report.claim}: {status} "
        f"({report.applicable} applicable of {report.checked} checked)"
    )
    for q, detail in report.violations[:10]:
        print(f"  violation: {detail}")
        sys.stdout.write("  " + files.serialize(q).replace("\n", "\n  ").rstrip() + "\n")
    return YES if report.ok else NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasimat",
        description="Matroids from cycle-classified multigraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, help="check a classification is proper")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = add("rank", cmd_rank, help="rank of an edge subset (default: all)")
    p.add_argument("file")
    p.add_argument("--edges", help="edge ids, comma or space separated")

    p = add("circuits", cmd_circuits, help="list all circuits")
    p.add_argument("file")

    p = add("is-connected", cmd_is_connected, help="matroid connectivity")
    p.add_argument("file")

    p = add("is-3connected", cmd_is_3connected, help="matroid 3-connectivity")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="print a 2-separation")

    p = add("is-unbreakable", cmd_is_unbreakable, help="every contraction by a flat connected")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="print a breaking flat")

    p = add("classify-shape", cmd_classify_shape, help="shape of the simplification")
    p.add_argument("file")

    p = add("balancing-sets", cmd_balancing_sets, help="minimal low-rank balancing sets")
    p.add_argument("file")
    p.add_argument("--max-rank", type=int, default=2)

    p = add("structure", cmd_structure, help="structural breakability outcome")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = add("minor", cmd_minor, help="delete/contract edges, print the minor")
    p.add_argument("file")
    p.add_argument("--delete", help="edge ids to delete")
    p.add_argument("--contract", help="edge ids to contract")

    p = add("linksum", cmd_linksum, help="glue two graphs along a basepoint edge")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("basepoint", type=int)
    p.add_argument("--swap-ends", action="store_true")

    p = add(
        "verify-decomposition",
        cmd_verify_decomposition,
        help="compare a two-sum composition against a target",
    )
    p.add_argument("target")
    p.add_argument("root")
    p.add_argument(
        "--join",
        action="append",
        metavar="BASEPOINT:FILE",
        help="repeatable; next summand glued at the given basepoint",
    )
    p.add_argument("--json", action="store_true")

    p = add("free-elements", cmd_free_elements, help="elements only in spanning circuits")
    p.add_argument("file")

    p = add("enumerate", cmd_enumerate, help="stream small instances")
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--edges", type=int, default=4)
    p.add_argument("--tripartitions", action="store_true",
                   help="all proper classifications instead of sign maps")
    p.add_argument("--count", action="store_true")
    p.add_argument("--limit", type=int)

    p = add("check-theorem", cmd_check_theorem, help="run a verification campaign")
    p.add_argument("claim", nargs="?")
    p.add_argument("--list", action="store_true", help="list known claims")
    p.add_argument("--vertices", type=int)
    p.add_argument("--edges", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--format", choices=("text", "csv"), default="text")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except files.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (GraphError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
