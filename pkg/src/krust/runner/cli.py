"""``krust`` command line: run, debug, difftest, check and lint."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from ..state import KrustError
from ..syntax import LexError, ParseError, parse_source
from ..semantics.run import OK, PARSE_ERROR, RUNTIME_ERROR, SEMANTIC_ERROR, TIMEOUT, default_max_steps, run
from .debugger import DebugSession, repl

EXIT_CODES = {OK: 0, SEMANTIC_ERROR: 3, RUNTIME_ERROR: 4, PARSE_ERROR: 2, TIMEOUT: 5}
EXIT_IO = 1


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _parse_or_report(path: str):
    """Returns a Program, or an exit code after printing the failure."""
    try:
        source = _read(path)
    except OSError as err:
        print(f"krust: cannot read {path}: {err.strerror or err}", file=sys.stderr)
        return EXIT_IO
    try:
        return parse_source(source)
    except (LexError, ParseError) as err:
        print(f"ParseError: line {err.span.line}: {err}", file=sys.stderr)
        return EXIT_CODES[PARSE_ERROR]


def cmd_run(args) -> int:
    program = _parse_or_report(args.file)
    if isinstance(program, int):
        return program
    outcome = run(program, max_steps=args.max_steps)
    sys.stdout.write(outcome.output)
    sys.stdout.flush()
    if args.diag and outcome.diagnostic is not None:
        print(outcome.diagnostic, file=sys.stderr)
    if args.stats:
        print(f"steps: {outcome.steps}", file=sys.stderr)
    return EXIT_CODES[outcome.status]


def _interactive():
    while True:
        try:
            yield input("(krust) ")
        except EOFError:
            return


def cmd_debug(args) -> int:
    program = _parse_or_report(args.file)
    if isinstance(program, int):
        return program
    try:
        session = DebugSession(program, max_steps=args.max_steps or default_max_steps())
    except KrustError as err:
        print(err.diagnostic, file=sys.stderr)
        return EXIT_CODES[SEMANTIC_ERROR]
    if args.script:
        try:
            commands = _read(args.script).splitlines()
        except OSError as err:
            print(f"krust: cannot read {args.script}: {err.strerror or err}", file=sys.stderr)
            return EXIT_IO
        repl(session, commands, sys.stdout)
    elif sys.stdin.isatty():
        repl(session, _interactive(), sys.stdout)
    else:
        repl(session, sys.stdin, sys.stdout)
    return 0


def cmd_difftest(args) -> int:
    from ..difftest import ToolchainConfig, run_corpus
    from ..corpus import CORPUS_DIR

    try:
        if args.config:
            cfg = ToolchainConfig.from_file(args.config)
        else:
            cfg = ToolchainConfig()
        overrides = {}
        if args.compiler_cmd:
            overrides["compile_cmd"] = args.compiler_cmd
        if args.timeout_s is not None:
            overrides["run_timeout"] = args.timeout_s
        if overrides:
            cfg = ToolchainConfig(**{**cfg.__dict__, **overrides})
        report = run_corpus(args.corpus or CORPUS_DIR, cfg, parallelism=args.jobs, max_steps=args.max_steps)
    except (OSError, ValueError) as err:
        print(f"krust difftest: {err}", file=sys.stderr)
        return EXIT_IO
    for rec in report.records:
        print(rec.tsv())
    print(report.summary(), file=sys.stderr)
    if args.report:
        Path(args.report).write_text(report.to_tsv(), encoding="utf-8")
    return 0 if report.mismatch == 0 and report.harness_error == 0 else 1


def cmd_check(args) -> int:
    from ..speccheck import SpecError, Verified, check, parse_spec

    program = _parse_or_report(args.file)
    if isinstance(program, int):
        return program
    try:
        spec = parse_spec(_read(args.spec))
    except OSError as err:
        print(f"krust: cannot read {args.spec}: {err.strerror or err}", file=sys.stderr)
        return EXIT_IO
    except SpecError as err:
        print(f"spec error: {err}", file=sys.stderr)
        return 2
    result = check(program, spec, max_steps=args.max_steps)
    if isinstance(result, Verified):
        print(f"{spec.function}: specification holds on all {result.cases_checked} checked cases ({result.domain})")
    elif hasattr(result, "counterexample"):
        args_text = ", ".join(f"{k}={v}" for k, v in result.counterexample.items())
        print(f"{spec.function}: specification fails at {args_text} "
              f"({result.observed_calls} call(s), bound {result.bound_value})")
    else:
        print(f"{spec.function}: cannot check: {result.reason}")
    print(result.machine_line())
    return 0 if isinstance(result, Verified) else 1


def cmd_lint(args) -> int:
    from ..corpus import lint

    problems = lint(args.corpus)
    for p in problems:
        print(p)
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krust", description="Run and inspect programs in a small Rust subset.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="interpret a program")
    p.add_argument("file")
    p.add_argument("--diag", action="store_true", help="print the diagnostic to stderr")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--stats", action="store_true", help="print the step count to stderr")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("debug", help="step through a program and print cells")
    p.add_argument("file")
    p.add_argument("--script", help="read debugger commands from a file")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_debug)

    p = sub.add_parser("difftest", help="compare the interpreter with a reference compiler")
    p.add_argument("--corpus", help="directory of *.rs programs (default: bundled corpus)")
    p.add_argument("--compiler-cmd", help="compile template with {src} and {bin}")
    p.add_argument("--config", help="key=value toolchain configuration file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timeout-s", type=float, default=None)
    p.add_argument("--report", help="write tab-separated records here")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_difftest)

    p = sub.add_parser("check", help="check a call-count specification over finite domains")
    p.add_argument("file")
    p.add_argument("--spec", required=True)
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lint", help="verify corpus annotations against the interpreter")
    p.add_argument("--corpus", default=None)
    p.set_defaults(func=cmd_lint)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
