"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input
error, 3 a configured size cap was exceeded (see ``SEMIREG_*`` variables).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .constructions import (
    cayley_graph,
    circular_ladder,
    directed_px,
    mobius_ladder,
    px,
    w_module_group,
)
from .errors import TooLargeError
from .graph_aut import automorphism_group
from .graphs import Graph, normal_quotient
from .groups import PermutationGroup, max_semiregular_order, semiregular_witness, spectrum
from .perm import Permutation
from .split_merge import CyclePartition, Degenerate, Merged, merge, split, split_px

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- io helpers -------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(args) -> Graph:
    text = _read(args.graph)
    try:
        g = Graph.from_json(text) if text.lstrip().startswith("{") else Graph.from_text(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad graph file {args.graph}: {exc}") from exc
    if getattr(args, "labels", None):
        g = g.with_labels(_read(args.labels))
    return g


def _load_group(path: str, degree: int | None = None) -> PermutationGroup:
    try:
        G = PermutationGroup.from_json(_read(path))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad group file {path}: {exc}") from exc
    if degree is not None and G.degree != degree:
        raise UsageError(f"group in {path} has degree {G.degree}, graph has {degree} vertices")
    return G


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_graph(args, g: Graph) -> None:
    if args.format == "json":
        _emit(args, g.to_json() + "\n")
        return
    _emit(args, g.to_text())
    if getattr(args, "labels_out", None) and g.labels is not None:
        Path(args.labels_out).write_text(json.dumps(g.labels_dict()) + "\n")


def _emit_obj(args, obj: dict, text: str) -> None:
    if args.format == "json":
        _emit(args, json.dumps(obj, sort_keys=True) + "\n")
    else:
        _emit(args, text.rstrip("\n") + "\n")


def _group_summary(G: PermutationGroup) -> dict:
    return {"degree": G.degree, "order": G.order(), "generators": [list(g.images) for g in G.generators]}


# -- commands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "px":
        if args.directed:
            d = directed_px(args.r, args.s)
            arcs = sorted(d.arc_set)
            obj = {"n": d.n, "arcs": [list(a) for a in arcs]}
            _emit_obj(args, obj, "\n".join([f"{d.n} {len(arcs)}"] + [f"{a} {b}" for a, b in arcs]))
            return EXIT_OK
        g = px(args.r, args.s)
    elif fam == "spx":
        g = split_px(args.r, args.s)
    elif fam == "ladder-circ":
        g = circular_ladder(args.n)
    elif fam == "ladder-mob":
        g = mobius_ladder(args.n)
    elif fam == "w-group":
        G = w_module_group(args.ell)
        _emit_obj(args, G.to_dict(), G.to_json())
        return EXIT_OK
    elif fam == "cayley":
        G = _load_group(args.group)
        try:
            conn = [Permutation.parse(p, G.degree) for p in args.element]
        except ValueError as exc:
            raise UsageError(f"bad --element: {exc}") from exc
        res = cayley_graph(G, conn)
        if not res.connected:
            print("warning: connection set does not generate the group; graph is disconnected", file=sys.stderr)
        g = res.graph
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    _emit_graph(args, g)
    return EXIT_OK


def cmd_aut(args) -> int:
    g = _load_graph(args)
    A = automorphism_group(g)
    obj = _group_summary(A)
    lines = [f"order {obj['order']}"] + [Permutation(x).cycle_string() for x in obj["generators"]]
    _emit_obj(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_quotient(args) -> int:
    g = _load_graph(args)
    N = _load_group(args.group, g.n)
    try:
        q = normal_quotient(g, N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = {"kind": q.kind, "cycle_length": q.cycle_length, "blocks": [list(b) for b in q.blocks],
           "quotient": q.quotient.to_dict()}
    head = f"# kind {q.kind}" + (f" length {q.cycle_length}" if q.cycle_length else "")
    _emit_obj(args, obj, head + "\n" + q.quotient.to_text())
    return EXIT_OK


def cmd_split(args) -> int:
    g = _load_graph(args)
    try:
        part = CyclePartition.from_json(g, _read(args.partition))
    except ValueError as exc:
        raise UsageError(f"bad partition: {exc}") from exc
    _emit_graph(args, split(g, part))
    return EXIT_OK


def cmd_merge(args) -> int:
    g = _load_graph(args)
    G = _load_group(args.group, g.n) if args.group else automorphism_group(g)
    try:
        res = merge(g, G)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(res, Merged):
        obj = {"result": "merged", "graph": res.delta.to_dict(),
               "partition": json.loads(res.partition.to_json()),
               "matching": [list(e) for e in res.matching]}
        if args.partition_out:
            Path(args.partition_out).write_text(res.partition.to_json() + "\n")
        _emit_obj(args, obj, res.delta.to_text())
    elif isinstance(res, Degenerate):
        obj = {"result": "degenerate", "family": res.family, "n": res.n}
        _emit_obj(args, obj, f"degenerate: {res.family} ladder, n = {res.n}")
    else:
        obj = {"result": "not-applicable", "reason": res.reason, "local_orbit_sizes": list(res.local_orbit_sizes)}
        _emit_obj(args, obj, f"not applicable: {res.reason} (local orbits {list(res.local_orbit_sizes)})")
    return EXIT_OK


def cmd_semireg(args) -> int:
    if args.group:
        G = _load_group(args.group)
    elif args.graph:
        G = automorphism_group(_load_graph(args))
    else:
        raise UsageError("give a graph file or --group")
    obj: dict = {"group_order": G.order()}
    lines = []
    if args.spectrum:
        spec = sorted(spectrum(G))
        obj["spectrum"] = spec
        lines.append(" ".join(map(str, spec)))
    if args.max_order or not args.spectrum:
        m = max_semiregular_order(G)
        obj["max_semiregular_order"] = m
        lines.insert(0, str(m))
        if args.witness:
            w = semiregular_witness(G, m)
            obj["witness"] = w.cycle_string() if w else None
            lines.append(obj["witness"] or "")
    _emit_obj(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    try:
        rep = harness.analyze(g, subgroup_cap=args.subgroup_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = rep.to_dict()
    text = "\n".join(f"{k}: {v}" for k, v in d.items())
    _emit_obj(args, d, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    which = args.suite
    reports = []
    if which in ("px", "all"):
        reports.append(harness.check_px_suite(args.r_max or 8, threads=args.threads))
    if which in ("spx", "all"):
        reports.append(harness.check_splitpx_suite(args.r_max or 8, args.aut_r_max, threads=args.threads))
    if which in ("ladder", "all"):
        reports.append(harness.check_ladder_suite(args.n_max, threads=args.threads))
    if which in ("table", "all"):
        reports.append(harness.check_table(extended=args.extended, threads=args.threads))
    if which in ("cayley31", "all"):
        ells = [args.ell] if args.ell else ([1, 2] if args.extended else [1])
        for ell in ells:
            reports.append(harness.check_cayley_sec31(ell, time_budget=args.time_budget))
    if which in ("laws", "all"):
        reports.append(harness.check_law_suite(args.seed, args.samples))
    ok = all(r.passed for r in reports)
    if args.format == "json":
        _emit(args, json.dumps({"passed": ok, "suites": [r.to_dict() for r in reports]}, sort_keys=True) + "\n")
    else:
        _emit(args, "\n\n".join(r.to_text() for r in reports) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--format", choices=["text", "json"], default=None, help="output format (default text)")
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="same as --format json")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    return p


def _graph_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("graph", nargs=None if required else "?", help="graph in 'n m' edge-list text (or JSON); '-' for stdin")
    p.add_argument("--labels", help="JSON sidecar with vertex labels")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="semireg",
        description="Semiregular automorphisms of cubic vertex-transitive graphs: constructions, "
        "automorphism groups, split/merge operators and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph or group family", description=(
        "Build Praeger-Xu graphs C(r,s) (px), split Praeger-Xu graphs sC(r,s) (spx), circular and "
        "Mobius ladders, Cayley graphs Cay(G, I), or the regular group W^l x| D (w-group)."))
    csub = c.add_subparsers(dest="family", required=True)
    p = csub.add_parser("px", parents=[common], help="Praeger-Xu graph C(r,s)",
                        description="Praeger-Xu graph C(r,s): r 2^s vertices (x; word), 4-valent.")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--directed", action="store_true", help="emit the arcs of the directed Praeger-Xu graph")
    p.add_argument("--labels-out", help="write vertex labels (x, word) to this JSON sidecar")
    p = csub.add_parser("spx", parents=[common], help="split Praeger-Xu graph sC(r,s)",
                        description="Split Praeger-Xu graph sC(r,s): C(r,s) split along its canonical 4-cycle partition.")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--labels-out")
    for name, what in [("ladder-circ", "circular ladder (prism) on 2n vertices"),
                       ("ladder-mob", "Mobius ladder on 2n vertices")]:
        p = csub.add_parser(name, parents=[common], help=what, description=f"The {what}, as a Cayley graph.")
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--labels-out")
    p = csub.add_parser("cayley", parents=[common], help="Cayley graph Cay(G, I)",
                        description="Cayley graph Cay(G, I): x ~ y iff y x^-1 lies in I (I inverse-closed).")
    p.add_argument("--group", required=True, help="group JSON file")
    p.add_argument("--element", action="append", required=True,
                   help="connection-set element in cycle notation, e.g. '(0 1 2)'; repeat for each")
    p.add_argument("--labels-out")
    p = csub.add_parser("w-group", parents=[common], help="regular group W^l x| D",
                        description="W^l x| D: D dihedral of order 10 acting on l copies of its "
                        "4-dimensional irreducible F2-module, in its right regular representation.")
    p.add_argument("--ell", type=int, choices=[1, 2], required=True)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of a graph",
                       description="Full automorphism group by individualization-refinement.")
    _graph_input(p)
    p = sub.add_parser("quotient", parents=[common], help="normal quotient graph by a group",
                       description="Normal quotient: vertices are the N-orbits, adjacent when joined by an edge.")
    _graph_input(p)
    p.add_argument("--group", required=True, help="group JSON file for N")
    p = sub.add_parser("split", parents=[common], help="split a 4-valent graph along a cycle partition",
                       description="Splitting operator s(Delta, C) for a 4-valent graph and a partition of its "
                       "edges into cycles.")
    _graph_input(p)
    p.add_argument("--partition", required=True, help="cycle partition JSON (list of edge lists)")
    p.add_argument("--labels-out")
    p = sub.add_parser("merge", parents=[common], help="merge a cubic graph to a 4-valent graph",
                       description="Merging operator: contracts the matching of neighbours fixed by vertex "
                       "stabilizers; reports degenerate ladders or non-applicability.")
    _graph_input(p)
    p.add_argument("--group", help="vertex-transitive group JSON (default: full automorphism group)")
    p.add_argument("--partition-out", help="write the resulting cycle partition JSON here")
    p = sub.add_parser("semireg", parents=[common], help="semiregular element statistics",
                       description="Largest order of a semiregular element (all cycles of equal length) and "
                       "the spectrum of element orders.")
    _graph_input(p, required=False)
    p.add_argument("--group", help="group JSON file instead of a graph")
    p.add_argument("--max-order", action="store_true", help="largest semiregular element order")
    p.add_argument("--spectrum", action="store_true", help="set of element orders")
    p.add_argument("--witness", action="store_true", help="also print a semiregular element of that order")
    p = sub.add_parser("analyze", parents=[common], help="exceptional-pair analysis of a cubic graph",
                       description="|Aut|, arc-transitivity and the transitive subgroups lacking semiregular "
                       "elements of order at least 6 (one entry per conjugacy class).")
    _graph_input(p)
    p.add_argument("--subgroup-cap", type=_positive, help="largest |Aut| for subgroup enumeration")

    p = sub.add_parser("verify", parents=[common], help="run verification suites",
                       description="Verification suites: Praeger-Xu automorphism groups (px), split Praeger-Xu "
                       "graphs, super flip and merge/split round trip (spx), ladder witnesses and central involutions (ladder), table of "
                       "exceptional pairs (table), Cayley graphs over W^l x| D (cayley31), sampled group laws (laws).")
    p.add_argument("suite", choices=["px", "spx", "ladder", "table", "cayley31", "laws", "all"])
    p.add_argument("--r-max", type=_positive)
    p.add_argument("--aut-r-max", type=_positive, default=6, help="largest r for Aut(sC(r,s)) computations")
    p.add_argument("--n-max", type=_positive, default=12)
    p.add_argument("--ell", type=int, choices=[1, 2])
    p.add_argument("--extended", action="store_true", help="include the opt-in order-2560 checks")
    p.add_argument("--time-budget", type=float, help="seconds allowed for the Cayley enumeration")
    p.add_argument("--threads", type=_positive, default=harness.default_threads())
    p.add_argument("--seed", type=int, default=0, help="seed for the sampled law checks")
    p.add_argument("--samples", type=_positive, default=1000)
    return parser


_COMMANDS = {
    "construct": cmd_construct,
    "aut": cmd_aut,
    "quotient": cmd_quotient,
    "split": cmd_split,
    "merge": cmd_merge,
    "semireg": cmd_semireg,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # a None default keeps argparse's conflict check honest for --format text
    if getattr(args, "format", None) is None:
        args.format = "text"
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"semireg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLargeError as exc:
        print(f"semireg: size cap exceeded ({exc}); raise it with the matching SEMIREG_* variable",
              file=sys.stderr)
        return EXIT_CAP


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
