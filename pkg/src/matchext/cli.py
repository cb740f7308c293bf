"""Command-line interface.

Exit codes: 0 success, 1 infeasible or failed verification, 2 hypothesis
violated, 3 unreadable or malformed input, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import io
from .errors import HypothesisViolated, InternalInvariantBreach, MatchExtError, ParseError
from .extension import Mode, check_hypothesis, greedy_maximal_matching, run_extension
from .fan import fournier_colour, vizing_colour
from .gen import GenParams, random_multigraph, random_precolouring, sample_distant_matching
from .graph import is_maximal_matching, palette_size
from .hunt import HuntParams, hunt
from .oracle import oracle_extend
from .state import verify_colouring, verify_extension

EXIT_OK, EXIT_INFEASIBLE, EXIT_HYPOTHESIS, EXIT_PARSE, EXIT_BREACH = 0, 1, 2, 3, 4

log = logging.getLogger("matchext")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _load_graph(path: str):
    try:
        return io.parse_graph(_read(path))
    except ParseError as exc:
        raise ParseError(exc.line, f"{path}: {exc.message}") from None


def _load_pre(path: str | None, g):
    if path is None:
        return {}
    try:
        return io.parse_precolouring(_read(path), g)
    except ParseError as exc:
        raise ParseError(exc.line, f"{path}: {exc.message}") from None


def _parse_matching(text: str, g) -> list[int]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        if tok[0] not in ("m", "p") or len(tok) < 2 or not tok[1].isdigit():
            raise ParseError(no, "expected 'm <edge-id>'")
        e = int(tok[1])
        if e >= g.m:
            raise ParseError(no, f"edge {e} does not exist")
        out.append(e)
    return out


def cmd_colour(args) -> int:
    g = _load_graph(args.graph)
    _write(args.out, io.serialize_colouring(vizing_colour(g)))
    return EXIT_OK


def cmd_fournier(args) -> int:
    g = _load_graph(args.graph)
    if args.matching:
        m = _parse_matching(_read(args.matching), g)
    else:
        m = greedy_maximal_matching(g)
    if not is_maximal_matching(g, m):
        print(f"error: matching {sorted(m)} is not a maximal matching", file=sys.stderr)
        return EXIT_HYPOTHESIS
    s = fournier_colour(g, m)
    lines = [f"m {e}\n" if e in s.matching else f"c {e} {c}\n" for e, c in enumerate(s.colour)]
    _write(args.out, "".join(lines))
    return EXIT_OK


def cmd_extend(args) -> int:
    g = _load_graph(args.graph)
    phi = _load_pre(args.pre, g)
    try:
        result = run_extension(g, phi, args.mode, args.reserved, audit=args.audit, dump_dir=args.dump_dir)
    except HypothesisViolated as exc:
        for line in exc.report:
            print(f"hypothesis: {line}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    if args.verify:
        report = verify_extension(g, result.colouring, phi)
        if not report:
            for line in report.problems:
                print(f"verify: {line}", file=sys.stderr)
            return EXIT_INFEASIBLE
    _write(args.out, io.serialize_colouring(result.colouring))
    print(f"extended: {len(result.steps)} pivot steps, palette {palette_size(g)}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args.graph)
    phi = _load_pre(args.pre, g)
    report = check_hypothesis(g, phi, args.mode, args.reserved)
    for line in report.problems:
        print(f"hypothesis: {line}", file=sys.stderr)
    return EXIT_OK if report else EXIT_HYPOTHESIS


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    phi = _load_pre(args.pre, g)
    found = oracle_extend(g, phi, args.palette, args.budget)
    if found is None:
        print("oracle: no extension exists", file=sys.stderr)
        return EXIT_INFEASIBLE
    _write(args.out, io.serialize_colouring(found))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    try:
        colouring = io.parse_colouring(_read(args.colouring), g)
    except ParseError as exc:
        raise ParseError(exc.line, f"{args.colouring}: {exc.message}") from None
    phi = _load_pre(args.pre, g)
    report = verify_extension(g, colouring, phi) if phi else verify_colouring(g, colouring, palette_size(g))
    for line in report.problems:
        print(f"verify: {line}", file=sys.stderr)
    if report:
        print("ok", file=sys.stderr)
    return EXIT_OK if report else EXIT_INFEASIBLE


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get("MATCHEXT_SEED", "0"))
    params = GenParams(args.n, args.edges, args.max_degree, args.max_mult, args.graph_class, seed)
    g = random_multigraph(params)
    _write(args.out_graph, io.serialize_graph(g))
    if args.out_pre:
        m = sample_distant_matching(g, args.distance, args.matching_size, seed)
        if m is None:
            print(f"gen: no matching of size {args.matching_size} at distance {args.distance}", file=sys.stderr)
            return EXIT_INFEASIBLE
        _write(args.out_pre, io.serialize_precolouring(random_precolouring(m, palette_size(g), seed)))
    return EXIT_OK


def cmd_hunt(args) -> int:
    params = HuntParams(
        max_n=args.max_n,
        distance=args.distance,
        max_degree=args.max_degree,
        max_mult=args.max_mult,
        graph_class=args.graph_class,
        exact_distance=args.exact,
        connected_only=not args.all_graphs,
        budget=args.budget,
        keep_witnesses=args.keep,
        jobs=args.jobs,
    )
    report = hunt(params)
    text = io.serialize_hunt_report(report)
    if args.report:
        _write(args.report, text)
    print(
        f"graphs {report.graphs}\ntested {report.tested}\nextendable {report.extendable}\n"
        f"non_extendable {report.non_extendable}\nunknown {report.unknown}"
    )
    return EXIT_OK


def cmd_dot(args) -> int:
    g = _load_graph(args.graph)
    colouring = io.parse_colouring(_read(args.colouring), g) if args.colouring else None
    phi = _load_pre(args.pre, g)
    _write(args.out, io.dot_export(g, colouring, phi))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchext", description="Extend precoloured matchings to edge colourings.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colour", help="colour a multigraph with max-degree+multiplicity colours")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("fournier", help="colour G minus a maximal matching with one colour fewer")
    p.add_argument("--graph", required=True)
    p.add_argument("--matching", help="file of 'm <edge-id>' lines (default: greedy maximal matching)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fournier)

    for name, func, helptext in (
        ("extend", cmd_extend, "extend a precoloured matching"),
        ("check", cmd_check, "check the distance hypothesis only"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--graph", required=True)
        p.add_argument("--pre", required=True)
        p.add_argument("--mode", choices=[m.value for m in Mode], default="basic")
        p.add_argument("--reserved", type=int, help="relaxed mode: colour of the held-back edges (default top colour)")
        p.set_defaults(func=func)
        if name == "extend":
            p.add_argument("--out")
            p.add_argument("--verify", action="store_true")
            p.add_argument("--audit", action="store_true", help="re-verify the state after every pivot")
            p.add_argument("--dump-dir", help="directory for invariant-breach dumps")

    p = sub.add_parser("oracle", help="exact backtracking extension")
    p.add_argument("--graph", required=True)
    p.add_argument("--pre")
    p.add_argument("--palette", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="verify a colouring file")
    p.add_argument("--graph", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--pre")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-mult", type=int, default=1)
    p.add_argument("--class", dest="graph_class", choices=["any", "bipartite", "c5free"], default="any")
    p.add_argument("--seed", type=int)
    p.add_argument("--distance", type=int, default=9)
    p.add_argument("--matching-size", type=int, default=1)
    p.add_argument("--out-graph")
    p.add_argument("--out-pre")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hunt", help="search small graphs for non-extendable precolourings")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--distance", type=int, required=True)
    p.add_argument("--class", dest="graph_class", choices=["any", "bipartite", "c5free"], default="any")
    p.add_argument("--max-mult", type=int, default=2)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--exact", action="store_true", help="require pairwise distance exactly --distance")
    p.add_argument("--all-graphs", action="store_true", help="include disconnected graphs")
    p.add_argument("--budget", type=int)
    p.add_argument("--keep", type=int, default=50, help="witnesses kept in the report")
    p.add_argument("--report")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("dot", help="export Graphviz DOT")
    p.add_argument("--graph", required=True)
    p.add_argument("--colouring")
    p.add_argument("--pre")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, InputError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalInvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        if exc.dump_path:
            print(f"state dump: {exc.dump_path}", file=sys.stderr)
        return EXIT_BREACH
    except MatchExtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
