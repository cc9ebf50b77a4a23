"""Command-line interface.

Exit codes: 0 success / indistinguishable / found, 1 distinguishable / not
found, 2 usage or input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .automaton import build_automaton
from .graph import Graph, ParseError, parse_graph
from .invariant import sw_invariant
from .oracles import (
    CapExceeded,
    decomposing_walk_search,
    hom_count,
    sw_refinement,
    walk_census,
)
from .wl import wl_colors

EXIT_OK, EXIT_DIFFERENT, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a value of at least 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative value, got {v}")
    return v


def read_graph(source: str, fmt: str | None) -> Graph:
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="ascii") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{source}: {exc}") from None
    try:
        return parse_graph(text, fmt)
    except ParseError as exc:
        raise InputError(f"{source}: {exc}") from None


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    folder = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".swcanon-")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- commands


def _invariant(g: Graph, args):
    aut = build_automaton(g, args.k, args.height)
    if args.dump_automaton:
        write_output(aut.dump(), args.dump_automaton)
    return sw_invariant(g, args.k, args.height, variant=args.variant, generic=args.generic, automaton=aut)


def cmd_canon(args) -> int:
    g = read_graph(args.graph, args.format)
    write_output(_invariant(g, args).serialize(), args.out)
    return EXIT_OK


def cmd_indist(args) -> int:
    g1 = read_graph(args.graph1, args.format)
    g2 = read_graph(args.graph2, args.format)
    dump = args.dump_automaton
    args.dump_automaton = None
    i1, i2 = _invariant(g1, args), _invariant(g2, args)
    args.dump_automaton = dump
    same = i1.serialize() == i2.serialize()
    verdict = "indistinguishable" if same else "distinguishable"
    write_output(f"{verdict} k {args.k} h {args.height} basis {i1.size} {i2.size}\n", args.out)
    return EXIT_OK if same else EXIT_DIFFERENT


def cmd_wl(args) -> int:
    g = read_graph(args.graph, args.format)
    table = wl_colors(g, args.k, args.rounds)
    lines = []
    for r in range(args.rounds + 1):
        hist = sorted((c.digest, m) for c, m in table.histogram(r).items())
        lines.append(f"round {r} colors {len(hist)}")
        lines += [f"{d} {m}" for d, m in hist]
    write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    g = read_graph(args.graph, args.format)
    cen = walk_census(g, args.k, args.height, args.t, cap=args.cap)
    lines = []
    for t in range(1, args.t + 1):
        lines.append(f"length {t} total {cen.total(t)} words {len(cen[t])}")
        lines += cen.digest_lines(t)
    write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_swref(args) -> int:
    g = read_graph(args.graph, args.format)
    lines = []
    for m in sw_refinement(g, args.k, args.height, args.t, cap=args.cap):
        lines.append(f"step {m.t} total {sum(m.words.values())} words {len(m.words)}")
        lines += m.digest_lines()
    write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_hom(args) -> int:
    f = read_graph(args.pattern, args.format)
    g = read_graph(args.graph, args.format)
    write_output(f"{hom_count(f, g, cap=args.cap)}\n", args.out)
    return EXIT_OK


def cmd_pwcheck(args) -> int:
    f = read_graph(args.graph, args.format)
    if f.n == 0:
        raise InputError("pwcheck needs a graph with at least one vertex")
    walk = decomposing_walk_search(f, args.k, cap=args.cap)
    if walk is None:
        write_output(f"no decomposing {args.k}-simplicial walk\n", args.out)
        return EXIT_DIFFERENT
    lines = [f"decomposing {args.k}-simplicial walk length {len(walk)} width {walk.width}"]
    lines += [" ".join(map(str, t)) for t in walk.tuples]
    write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swcanon", description="Canonical simplicial walk invariants of graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, automaton=False):
        sp.add_argument("--format", choices=["edgelist", "graph6"], default=None,
                        help="input format (default: guess from the first byte)")
        sp.add_argument("--out", default=None, help="write output to this file instead of stdout")
        sp.add_argument("--k", type=_positive, default=1)
        if automaton:
            sp.add_argument("--height", type=_positive, default=1, help="color height h")
            sp.add_argument("--variant", choices=["3a", "3b"], default="3b",
                            help="queue start of the forward reduction")
            sp.add_argument("--generic", action="store_true", help="use the generic reduction")
            sp.add_argument("--dump-automaton", metavar="PATH", default=None)

    def capped(sp, default):
        sp.add_argument("--cap", type=_positive, default=default, help="resource cap (exit 3 when hit)")

    sp = sub.add_parser("canon", help="print the canonical invariant")
    sp.add_argument("graph")
    common(sp, automaton=True)
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("indist", help="compare two graphs")
    sp.add_argument("graph1")
    sp.add_argument("graph2")
    common(sp, automaton=True)
    sp.set_defaults(func=cmd_indist)

    sp = sub.add_parser("wl", help="WL color histograms per round")
    sp.add_argument("graph")
    common(sp)
    sp.add_argument("--rounds", type=_nonneg, default=1)
    sp.set_defaults(func=cmd_wl)

    sp = sub.add_parser("census", help="colored simplicial walk counts")
    sp.add_argument("graph")
    common(sp)
    sp.add_argument("--height", type=_positive, default=1)
    sp.add_argument("--t", type=_positive, default=3, help="longest walk, in simplices")
    capped(sp, 2_000_000)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("swref", help="simplicial walk refinement multisets")
    sp.add_argument("graph")
    common(sp)
    sp.add_argument("--height", type=_positive, default=1)
    sp.add_argument("--t", type=_nonneg, default=2, help="number of refinement steps")
    capped(sp, 2_000_000)
    sp.set_defaults(func=cmd_swref)

    sp = sub.add_parser("hom", help="count homomorphisms from PATTERN to GRAPH")
    sp.add_argument("pattern")
    sp.add_argument("graph")
    common(sp)
    capped(sp, 10_000_000)
    sp.set_defaults(func=cmd_hom)

    sp = sub.add_parser("pwcheck", help="search a decomposing k-simplicial walk")
    sp.add_argument("graph")
    common(sp)
    capped(sp, 1_000_000)
    sp.set_defaults(func=cmd_pwcheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"swcanon: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"swcanon: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"swcanon: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
