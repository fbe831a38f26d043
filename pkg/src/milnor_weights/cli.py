"""Command-line front end: ``milnor-weights <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or input.
Machine-readable lines start with ``RESULT`` or ``FAIL``.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .diagram import DiagramError, MuIndex, enumerate_tree_diagrams, parse_diagram, render_diagram, tree_diagram_count
from .graphs import (
    BranchedSIG,
    ConnectionGraph,
    IntersectionGraph,
    build_bsig,
    connection_graph,
    intersection_graph,
    is_good,
    simplified_graph,
    to_dot,
)
from .oracle import finite_type_sum
from .stringlink import GaussCodeError, parse_gauss, realize, render_gauss
from .verify import SUITES, run_suite
from .weights import METHODS, evaluate


@dataclass
class CommandOutcome:
    exit_code: int
    output: str
    diagnostics: str


class InputError(Exception):
    """Bad input file or argument value; reported with exit code 2."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _diagram(path: str):
    try:
        return parse_diagram(_read(path))
    except DiagramError as exc:
        raise InputError(f"{path}: {exc}") from None


def _index(text: str | None, default_n: int) -> MuIndex:
    if text is None:
        return MuIndex.standard(default_n)
    try:
        return MuIndex.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def graph_text(graph) -> str:
    lines = []
    if isinstance(graph, ConnectionGraph):
        lines.append("vertices " + " ".join(map(str, graph.vertices)))
        lines += [f"edge {i} {j}" for i, j in graph.edges]
    elif isinstance(graph, IntersectionGraph):
        lines += [f"vertex {v} {{{i},{j}}}" for v, (i, j) in sorted(graph.labels.items())]
        lines += [f"edge {a} -> {b}" for a, b in sorted(graph.directed)]
        lines += [f"edge {a} -- {b}" for a, b in sorted(tuple(sorted(e)) for e in graph.undirected)]
    elif isinstance(graph, BranchedSIG):
        lines.append(f"root {graph.root}")
        for i in sorted(graph.tops):
            left = " ".join(graph.left.get(i, ())) or "-"
            right = " ".join(graph.right.get(i, ())) or "-"
            lines.append(f"component {i}: top {graph.tops[i]} left {left} right {right}")
        lines += [f"edge {a} -> {b}" for a, b in sorted(graph.edges)]
        lines.append(f"good {'yes' if is_good(graph) else 'no'} L {graph.left_total}")
    return "\n".join(lines) + "\n"


def cmd_eval(args, out, err) -> int:
    d = _diagram(args.input)
    idx = _index(args.index, len(d.labels) - 1)
    methods = METHODS if args.method == "all" else (args.method,)
    values: dict[str, int | None] = {}
    for m in methods:
        try:
            values[m] = evaluate(d, idx, m)
        except ValueError as exc:
            if args.method != "all":
                raise InputError(f"{m}: {exc}") from None
            err.write(f"note: {m} evaluation unavailable: {exc}\n")
            values[m] = None
    out.write("RESULT " + " ".join(f"{m}={'NA' if v is None else v}" for m, v in values.items()) + "\n")
    known = {v for v in values.values() if v is not None}
    if len(known) > 1:
        out.write(f"FAIL methods disagree index={idx} diagram=\"{' / '.join(render_diagram(d).strip().splitlines())}\"\n")
        return 1
    return 0


def cmd_graph(args, out, err) -> int:
    d = _diagram(args.input)
    if args.kind == "connection":
        graph = connection_graph(d)
    elif args.kind == "intersection":
        graph = intersection_graph(d)
    elif args.kind == "sig":
        graph = simplified_graph(d)
    else:
        graph = build_bsig(d)
        if graph is None:
            err.write("BSIG undefined: the simplified intersection graph is not a rooted tree "
                      "with root on the top component\n")
            return 2
    out.write(to_dot(graph, args.kind) if args.format == "dot" else graph_text(graph))
    return 0


def cmd_mu(args, out, err) -> int:
    try:
        link = parse_gauss(_read(args.input))
    except GaussCodeError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    idx = _index(args.index, len(link.labels) - 1)
    if any(lab not in link.labels for lab in idx.labels):
        raise InputError(f"index {idx} refers to strands not in the link")
    value = finite_type_sum(link, idx)
    key = "finite_type_sum" if link.singular else "mu"
    out.write(f"RESULT {key}={value} index={idx}\n")
    return 0


def cmd_realize(args, out, err) -> int:
    d = _diagram(args.input)
    try:
        link = realize(d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.write(render_gauss(link))
    return 0


def cmd_enumerate(args, out, err) -> int:
    if args.degree < 0:
        raise InputError("degree must be non-negative")
    if args.count_only:
        out.write(f"RESULT degree={args.degree} count={tree_diagram_count(args.degree)}\n")
        return 0
    count = 0
    for count, d in enumerate(enumerate_tree_diagrams(args.degree), 1):
        out.write(f"diagram t{args.degree}_{count}\n")
        out.write(render_diagram(d))
        out.write("\n")
    out.write(f"RESULT degree={args.degree} count={count}\n")
    return 0


def cmd_verify(args, out, err) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        report = run_suite(name, args.degree, args.samples, args.seed)
        out.write(report.summary() + "\n")
        for line in report.failures:
            out.write(line + "\n")
        failed |= not report.ok
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="milnor-weights",
        description="Milnor weight systems on chord diagrams: evaluation, graphs and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the weight of a chord diagram")
    p.add_argument("--input", required=True, help="chord diagram file ('-' for stdin)")
    p.add_argument("--index", help="i1,...,in,j (default 1,...,n,n+1)")
    p.add_argument("--method", choices=(*METHODS, "all"), default="recursive")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("graph", help="export a graph of a chord diagram")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=("connection", "intersection", "sig", "bsig"), default="intersection")
    p.add_argument("--format", choices=("dot", "text"), default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("mu", help="Milnor invariant of a string link given as a Gauss code")
    p.add_argument("--input", required=True, help="Gauss-code file ('-' for stdin)")
    p.add_argument("--index", help="i1,...,in,j (default 1,...,n,n+1)")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("realize", help="singular string link realizing a chord diagram")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("enumerate", help="list tree-connection diagrams of a degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), required=True)
    p.add_argument("--degree", type=int, help="degree bound (suite default if omitted)")
    p.add_argument("--samples", type=int, help="number of random samples (suite default if omitted)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> CommandOutcome:
    out, err = io.StringIO(), io.StringIO()
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return CommandOutcome(code, out.getvalue(), err.getvalue())
    try:
        code = args.func(args, out, err)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        code = 2
    return CommandOutcome(code, out.getvalue(), err.getvalue())


def main(argv: Sequence[str] | None = None) -> int:
    result = run(argv)
    sys.stdout.write(result.output)
    sys.stderr.write(result.diagnostics)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
