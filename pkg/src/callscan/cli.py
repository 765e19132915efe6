"""Command-line interface.

Exit codes are a stable machine interface:
  0  success
  1  input error (missing/unreadable/malformed files, bad corpus layout)
  2  benchmark suite failure (some case incomplete or unsound)
  3  reachability query: target never called
  4  analysis failed to converge within the pass budget
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analyze
from .analysis import NonConvergence
from .bench import CorpusError, measure, run_suite
from .callgraph import diff, is_reachable, parse, serialize, to_dot

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SUITE = 2
EXIT_UNREACHABLE = 3
EXIT_NONCONVERGENCE = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="callscan", description="Static call-graph generation for Python 3."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="generate the call graph of a package")
    p.add_argument("entrypoints", nargs="+", type=Path, help="entry .py files")
    p.add_argument("--package", type=Path, default=None, help="package root (default: entrypoint directory)")
    p.add_argument("-o", "--output", type=Path, default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--max-passes", type=int, default=100)
    p.add_argument("--fail-on-diagnostics", action="store_true")
    p.add_argument(
        "--no-interprocedural",
        action="store_true",
        help="debug: disable argument-to-parameter flow",
    )

    p = sub.add_parser("suite", help="run the micro-benchmark corpus")
    p.add_argument("corpus", type=Path)
    p.add_argument("--json", dest="json_output", type=Path, default=None, help="also write a machine-readable report")
    p.add_argument("--max-passes", type=int, default=100)
    p.add_argument("--no-interprocedural", action="store_true")

    p = sub.add_parser("compare", help="diff a generated graph against ground truth")
    p.add_argument("generated", type=Path)
    p.add_argument("truth", type=Path)

    p = sub.add_parser("reach", help="ask whether a function is ever called")
    p.add_argument("graph", type=Path)
    p.add_argument("target", help="canonical dotted function name")

    p = sub.add_parser("measure", help="time and memory of analyzing a package")
    p.add_argument("package", type=Path)
    p.add_argument("--repetitions", type=int, default=5)
    return parser


def _cmd_analyze(args: argparse.Namespace) -> int:
    if args.max_passes < 1:
        print("error: --max-passes must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    for entry in args.entrypoints:
        if not entry.is_file():
            print(f"error: entrypoint not found: {entry}", file=sys.stderr)
            return EXIT_INPUT
    package_root = args.package if args.package is not None else args.entrypoints[0].parent
    try:
        result = analyze(
            list(args.entrypoints),
            package_root,
            max_passes=args.max_passes,
            interprocedural=not args.no_interprocedural,
        )
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (OSError, SyntaxError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    for module, pos, message in sorted(result.report.diagnostics):
        print(f"{module}:{pos[0]}:{pos[1]}: {message}", file=sys.stderr)
    text = to_dot(result.graph) if args.format == "dot" else serialize(result.graph)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    if args.fail_on_diagnostics and result.report.diagnostics:
        return EXIT_INPUT
    return EXIT_OK


def _cmd_suite(args: argparse.Namespace) -> int:
    try:
        report = run_suite(
            args.corpus,
            max_passes=args.max_passes,
            interprocedural=not args.no_interprocedural,
        )
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.as_table())
    if args.json_output is not None:
        args.json_output.write_text(report.as_json(), encoding="utf-8")
    return EXIT_OK if report.all_passing else EXIT_SUITE


def _load_graph(path: Path):
    try:
        return parse(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def _cmd_compare(args: argparse.Namespace) -> int:
    generated = _load_graph(args.generated)
    truth = _load_graph(args.truth)
    if generated is None or truth is None:
        return EXIT_INPUT
    d = diff(generated, truth)
    print(f"precision: {d.precision:.2%}")
    print(f"recall: {d.recall:.2%}")
    print(f"true positives: {len(d.true_positives)}")
    print(f"false positives: {len(d.false_positives)}")
    print(f"false negatives: {len(d.false_negatives)}")
    for caller, callee in sorted(d.false_positives):
        print(f"FP {caller} -> {callee}")
    for caller, callee in sorted(d.false_negatives):
        print(f"FN {caller} -> {callee}")
    return EXIT_OK


def _cmd_reach(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if graph is None:
        return EXIT_INPUT
    reachable, witnesses = is_reachable(graph, args.target)
    if not reachable:
        print(f"{args.target}: never called")
        return EXIT_UNREACHABLE
    for witness in sorted(witnesses):
        print(f"{args.target} called by {witness}")
    return EXIT_OK


def _cmd_measure(args: argparse.Namespace) -> int:
    if not args.package.is_dir():
        print(f"error: package directory not found: {args.package}", file=sys.stderr)
        return EXIT_INPUT
    try:
        seconds, megabytes = measure(args.package, repetitions=args.repetitions)
    except (FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"median wall time: {seconds:.3f} s")
    print(f"peak memory: {megabytes:.1f} MB")
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "suite": _cmd_suite,
    "compare": _cmd_compare,
    "reach": _cmd_reach,
    "measure": _cmd_measure,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.subcommand](args)


if __name__ == "__main__":
    raise SystemExit(main())
