"""Command-line entry point.

Exit codes: 0 success, 1 evaluation or analysis error, 2 usage error,
3 property violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .domains import ABSTRACT_DOMAINS, DOMAINS, get_domain
from .errors import ConfigurationError, CumulativeError
from .interpreters import AnalysisConfig, Mode, run
from .oracle import check_precision, check_soundness, enumerate_concrete
from .properties import SUITES, corpus, run_suite
from .syntax import parse, render

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


@dataclass
class RunReport:
    source: str
    domain: str
    mode: str
    result: str | None = None
    error: CumulativeError | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_json(self) -> dict:
        status = "ok" if self.ok else {"tag": self.error.tag, "message": str(self.error)}
        return {"source": self.source, "domain": self.domain, "mode": self.mode,
                "result": self.result, "status": status}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_parse(args) -> int:
    try:
        e = parse(_read(args.file))
    except CumulativeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(render(e))
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        config = AnalysisConfig.for_domain(args.domain, args.mode, args.seed)
    except ConfigurationError as exc:
        return _usage(str(exc))
    text = _read(args.file)
    report = RunReport(text.strip(), config.domain, config.mode.value)
    try:
        e = parse(text)
        report.source = render(e)
        report.result = config.package.render(run(e, config))
    except CumulativeError as exc:
        report.error = exc
    if args.format == "json":
        print(json.dumps(report.to_json()))
    elif report.ok:
        print(report.result)
    else:
        print(f"{report.error.tag}: {report.error}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_check(args) -> int:
    pkg = get_domain(args.domain)
    if not pkg.abstract:
        return _usage("check needs an abstract domain")
    if args.mode == Mode.SHORTCIRCUIT.value:
        return _usage("check compares abstract runs; use --mode naive or refined")
    modes = [Mode(args.mode)] if args.mode else [Mode.NAIVE, Mode.REFINED]
    try:
        e = parse(_read(args.file))
        outcomes = enumerate_concrete(e)
        print(f"outcomes: {{{','.join(map(str, sorted(outcomes.results)))}}}")
        violated = False
        for mode in modes:
            verdict = check_soundness(e, pkg, mode, outcomes)
            violated |= not verdict.ok
            print(f"soundness[{mode.value}]: {verdict.describe(pkg)}")
        verdict = check_precision(e, pkg)
        violated |= not verdict.ok
        print(f"precision: {verdict.describe(pkg)}")
    except CumulativeError as exc:
        print(f"{exc.tag}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_fuzz(args) -> int:
    if args.samples < 1 or args.depth < 1:
        return _usage("--samples and --depth must be positive")
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    samples = list(corpus(args.samples, args.depth, args.allow_any, args.seed_base))
    failed = False
    for name in suites:
        report = run_suite(name, samples)
        failed |= not report.ok
        print(report.summary())
    return EXIT_VIOLATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cumulative", description="Concrete and abstract interpreters built from effect handlers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and pretty-print an expression")
    p.add_argument("file", help="source file, or - for stdin")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("eval", help="run one interpreter configuration")
    p.add_argument("file", help="source file, or - for stdin")
    p.add_argument("--domain", choices=list(DOMAINS), default="concrete")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None,
                   help="default: shortcircuit for concrete, refined otherwise")
    p.add_argument("--seed", type=int, default=None, help="resolve any(lo,hi) pseudo-randomly (concrete only)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="check soundness and precision against brute-force enumeration")
    p.add_argument("file", help="source file, or - for stdin")
    p.add_argument("--domain", choices=list(ABSTRACT_DOMAINS), required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="run property suites over generated expressions")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--allow-any", action="store_true")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--seed-base", type=int, default=0)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
