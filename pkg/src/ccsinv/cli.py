"""Command-line interface.

Exit codes: 0 success, 1 input error (unreadable file, parse error, bad
flags), 2 transformation failure (the inverter got stuck), 3 evaluation
stopped by the call budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from . import corpus
from .diagnostics import analyze, compare
from .engine import Query, evaluate, kernel_name, trace as trace_eval
from .engine.errors import EngineError
from .inversion import InversionError, InversionTask, invert_system, registered_inverters
from .syntax import ParseError, format_system, format_tuple, parse, parse_query, to_latex

OK, INPUT_ERROR, TRANSFORM_ERROR, BUDGET_EXHAUSTED = 0, 1, 2, 3

DEFAULT_EVAL_BUDGET = 10**8

KIND_LABELS = {"trivial": "TRIV", "full": "FULL", "partial": "PART", "semi": "SEMI"}


def _read_system(path: str):
    try:
        text = Path(path).read_text("utf-8")
    except OSError as e:
        print(f"error: cannot read {path}: {e.strerror}", file=sys.stderr)
        return None
    try:
        return parse(text)
    except ParseError as e:
        for d in e.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        return None


def _indices(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")


def cmd_check(args) -> int:
    system = _read_system(args.file)
    if system is None:
        return INPUT_ERROR
    label = Path(args.file).stem.upper() or "SYSTEM"
    report = analyze(system)
    print(compare_one(label, system))
    witnesses = [(prop, w) for prop, ws in report.witnesses.items() for w in ws]
    if witnesses:
        print("\nwitnesses:")
        for prop, w in witnesses:
            print(f"  {prop}: {w.detail}")
    return OK


def compare_one(label: str, system) -> str:
    return compare([(label, system)]).render()


def cmd_invert(args) -> int:
    system = _read_system(args.file)
    if system is None:
        return INPUT_ERROR
    try:
        task = InversionTask.of(system, args.fn, args.inputs, args.outputs, args.inverter)
    except InversionError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    try:
        report = invert_system(system, task)
    except InversionError as e:
        print(f"error: {e}", file=sys.stderr)
        return TRANSFORM_ERROR
    print(format_system(report.produced))
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.with_diagnostics:
        label = KIND_LABELS.get(args.inverter, args.inverter.upper())
        table = compare([("ORIG", system), (label, report.produced)])
        print(table.render(), file=sys.stderr)
    return OK


def cmd_eval(args) -> int:
    system = _read_system(args.file)
    if system is None:
        return INPUT_ERROR
    try:
        fn, qargs = parse_query(args.query, system)
    except ParseError as e:
        for d in e.diagnostics:
            print(f"query:{d}", file=sys.stderr)
        return INPUT_ERROR
    budget = args.budget if args.budget is not None else DEFAULT_EVAL_BUDGET
    try:
        outcome = evaluate(system, Query(fn, qargs), mode=args.mode, budget=budget)
    except EngineError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    for result in outcome.results:
        print(format_tuple(result))
    if args.stats:
        print(f"rewrite steps:  {outcome.stats.rewrite_steps}")
        print(f"function calls: {outcome.stats.function_calls}")
        if outcome.stats.exhausted:
            print(f"budget of {budget} calls exhausted")
    if args.trace:
        t = trace_eval(system, Query(fn, qargs), budget=budget)
        Path(args.trace).write_text(t.to_json(), "utf-8")
    return BUDGET_EXHAUSTED if outcome.stats.exhausted else OK


def cmd_latex(args) -> int:
    system = _read_system(args.file)
    if system is None:
        return INPUT_ERROR
    print(to_latex(system))
    return OK


def cmd_examples(args) -> int:
    if args.action == "list" or args.action is None:
        for name in corpus.names():
            print(f"{name:8} {corpus.description(name)}")
        return OK
    if not args.name:
        print("error: examples show needs a name", file=sys.stderr)
        return INPUT_ERROR
    try:
        print(corpus.source(args.name), end="")
    except KeyError as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return INPUT_ERROR
    return OK


def cmd_bench_ack(args) -> int:
    try:
        rows = tuple(int(r) for r in args.rows.split(","))
        if any(r not in bench_mod.INPUT_ROWS for r in rows):
            raise ValueError
    except ValueError:
        print("error: --rows takes a comma-separated subset of 1,2,3", file=sys.stderr)
        return INPUT_ERROR
    if args.kernel == "both":
        result = bench_mod.compare_kernels(rows)
        print(json.dumps(result, indent=2))
        if args.out:
            Path(args.out).write_text(json.dumps(result, indent=2), "utf-8")
        return OK if result["counters_agree"] else TRANSFORM_ERROR
    kernel = args.kernel  # None means the default kernel
    cells = bench_mod.run(rows, kernel=kernel)
    print(bench_mod.render(cells))
    print(f"(kernel: {kernel or kernel_name()})")
    if args.out:
        payload = bench_mod.report(cells, kernel)
        Path(args.out).write_text(json.dumps(payload, indent=2), "utf-8")
    return OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app()
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ccsinv",
        description="Invert, evaluate, and analyze conditional constructor rewriting systems.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="parse a system and print its property report")
    c.add_argument("file")
    c.set_defaults(handler=cmd_check)

    c = sub.add_parser("invert", help="invert a function for an io-set")
    c.add_argument("file")
    c.add_argument("--fn", required=True, help="function symbol to invert")
    c.add_argument("--in", dest="inputs", type=_indices, default=[],
                   help="comma-separated input indices that stay known (e.g. 1,2)")
    c.add_argument("--out", dest="outputs", type=_indices, default=[],
                   help="comma-separated output indices that become known")
    c.add_argument("--inverter", default="partial", choices=registered_inverters(),
                   help="rule inverter to apply at the root")
    c.add_argument("--with-diagnostics", action="store_true",
                   help="print an ORIG vs inverted property table to stderr")
    c.set_defaults(handler=cmd_invert)

    c = sub.add_parser("eval", help="evaluate a ground query")
    c.add_argument("file")
    c.add_argument("--query", required=True, help='e.g. "add(s(0),s(s(0)))"')
    c.add_argument("--mode", choices=("all", "first"), default="all")
    c.add_argument("--budget", type=int, default=None,
                   help=f"max function calls (default {DEFAULT_EVAL_BUDGET})")
    c.add_argument("--stats", action="store_true", help="print the counters")
    c.add_argument("--trace", metavar="FILE",
                   help="also run the tracing evaluator and write the JSON tree")
    c.set_defaults(handler=cmd_eval)

    c = sub.add_parser("latex", help="print the system as LaTeX")
    c.add_argument("file")
    c.set_defaults(handler=cmd_latex)

    c = sub.add_parser("examples", help="list or show the bundled examples")
    c.add_argument("action", nargs="?", choices=("list", "show"), default="list")
    c.add_argument("name", nargs="?")
    c.set_defaults(handler=cmd_examples)

    c = sub.add_parser("bench-ack", help="regenerate the ack counter benchmark")
    c.add_argument("--rows", default="1,2,3", help="grid rows to run (subset of 1,2,3)")
    c.add_argument("--out", metavar="FILE", help="also write the report as JSON")
    c.add_argument("--kernel", choices=("pure", "compiled", "both"), default=None,
                   help="evaluation kernel (default: best available)")
    c.set_defaults(handler=cmd_bench_ack)

    c = sub.add_parser("serve", help="serve the JSON API and web playground")
    c.add_argument("--port", type=int, default=int(os.environ.get("CCSINV_PORT", "8000")))
    c.add_argument("--host", default="127.0.0.1")
    c.set_defaults(handler=cmd_serve)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; the contract says 1
        return OK if e.code == 0 else INPUT_ERROR
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
