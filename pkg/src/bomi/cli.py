"""Command-line front end.

Subcommands: ``check`` (parse, resolve, conformance), ``lint`` (check plus
the rule catalog), ``stats`` (census/complexity report), ``export`` (DOT or
JSON), and ``init`` (guided scaffolding of a new model file).

Exit codes: 0 clean, 1 findings at or above the failure severity, 2 broken
input (parse/resolution/schema/conformance), 3 usage errors or an aborted
session.  Diagnostics go to stderr, reports and exports to stdout.  Set
NO_COLOR to disable colored diagnostics.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import AnalysisConfig, Finding, evaluate
from .config import ConfigError, parse_config
from .diagnostics import SEVERITY_RANK, Diagnostic, Severity, render_diagnostic, use_color
from .dot import DotStyle, to_dot
from .jsonio import SchemaError, from_json, to_json
from .model import BomiModel, census, conformance
from .parser import decode_source
from .questionnaire import Aborted, init_questionnaire
from .resolver import load
from .stats import stats_report

OK = 0
FINDINGS = 1
BROKEN = 2
USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bomi", description="Model and analyze boundary objects "
                                              "and the islands coordinating through them.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="parse, resolve, and structurally validate a model")
    check.add_argument("file", help="path to a .bomi file")

    lint = sub.add_parser("lint", help="check plus the smell-rule catalog")
    lint.add_argument("file", help="path to a .bomi file")
    lint.add_argument("--config", help="rule configuration file")
    lint.add_argument("--format", choices=("text", "json"), default="text")

    stats = sub.add_parser("stats", help="element census and complexity metrics")
    stats.add_argument("file", help="path to a .bomi file")
    stats.add_argument("--format", choices=("table", "json"), default="table")
    stats.add_argument("--complexity", action="store_true", help="include complexity metrics")

    export = sub.add_parser("export", help="render a model as DOT or canonical JSON")
    export.add_argument("file", help="path to a .bomi or .json model file")
    export.add_argument("--to", choices=("dot", "json"), required=True)
    export.add_argument("--out", help="output path (default: stdout)")
    export.add_argument("--assoc-nodes", action="store_true",
                        help="draw usages/governs as association-class nodes")
    export.add_argument("--notes", action="store_true", help="include attribute notes in DOT")
    export.add_argument("--no-attributes", action="store_true",
                        help="node labels without attribute values")

    init = sub.add_parser("init", help="interactively scaffold a new model file")
    init.add_argument("--out", help="output path (default: stdout)")
    return parser


def _emit(diagnostics: list[Diagnostic], source: str) -> None:
    color = use_color(sys.stderr)
    for diag in diagnostics:
        print(render_diagnostic(diag, source, color=color), file=sys.stderr)


def _read(path: str) -> bytes | None:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        print(f"bomi: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        return None


def _load_model(path: str) -> tuple[BomiModel | None, str]:
    """Shared front half of check/lint/stats/export: file -> model.

    Prints diagnostics; returns (None, source) when the model is unusable.
    """
    data = _read(path)
    if data is None:
        return None, ""
    text, decode_diags = decode_source(data, path)
    model, diags = load(text, path)
    _emit(sorted(decode_diags + diags, key=lambda d: d.span.position), text)
    if decode_diags:
        model = None
    return model, text


def _check_model(model: BomiModel, source: str) -> bool:
    """Conformance step; renders violations, True when clean."""
    violations = conformance(model)
    _emit([Diagnostic(Severity.ERROR, v.message, v.span) for v in violations], source)
    return not violations


def _finding_diag(finding: Finding) -> Diagnostic:
    return Diagnostic(finding.severity, f"[{finding.rule_id}] {finding.message}", finding.span)


def _findings_json(path: str, model: BomiModel, findings: list[Finding]) -> str:
    doc = {
        "file": path,
        "model": model.name,
        "findings": [
            {
                "ruleId": f.rule_id,
                "severity": f.severity.value,
                "subject": f.subject_id,
                "message": f.message,
                "span": {
                    "file": f.span.file,
                    "startLine": f.span.start_line,
                    "startCol": f.span.start_col,
                    "endLine": f.span.end_line,
                    "endCol": f.span.end_col,
                },
            }
            for f in findings
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _cmd_check(args) -> int:
    model, source = _load_model(args.file)
    if model is None:
        return BROKEN
    if not _check_model(model, source):
        return BROKEN
    counts = census(model)
    print(f"{args.file}: ok ({counts.total()} elements)")
    return OK


def _cmd_lint(args) -> int:
    config = AnalysisConfig()
    if args.config:
        data = _read(args.config)
        if data is None:
            return USAGE
        try:
            config = parse_config(data.decode("utf-8", errors="replace"))
        except ConfigError as exc:
            print(f"bomi: bad configuration {args.config}: {exc}", file=sys.stderr)
            return USAGE
    model, source = _load_model(args.file)
    if model is None:
        return BROKEN
    if not _check_model(model, source):
        return BROKEN
    findings = evaluate(model, config)
    if args.format == "json":
        sys.stdout.write(_findings_json(args.file, model, findings))
    else:
        color = use_color(sys.stdout)
        for f in findings:
            print(render_diagnostic(_finding_diag(f), source, color=color))
        if not findings:
            print(f"{args.file}: no findings")
    threshold = SEVERITY_RANK[config.fail_severity]
    if any(SEVERITY_RANK[f.severity] >= threshold for f in findings):
        return FINDINGS
    return OK


def _cmd_stats(args) -> int:
    model, _ = _load_model(args.file)
    if model is None:
        return BROKEN
    sys.stdout.write(stats_report(model, format=args.format,
                                  include_complexity=args.complexity))
    return OK


def _cmd_export(args) -> int:
    if args.file.endswith(".json"):
        data = _read(args.file)
        if data is None:
            return BROKEN
        try:
            model = from_json(data.decode("utf-8", errors="replace"))
        except SchemaError as exc:
            print(f"bomi: {args.file}: {exc}", file=sys.stderr)
            return BROKEN
    else:
        model, source = _load_model(args.file)
        if model is None:
            return BROKEN
        if not _check_model(model, source):
            return BROKEN
    if args.to == "dot":
        style = DotStyle(show_attributes=not args.no_attributes,
                         show_notes=args.notes,
                         assoc_as_nodes=args.assoc_nodes)
        output = to_dot(model, style)
    else:
        output = to_json(model)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(output)
    return OK


def _cmd_init(args) -> int:
    def ask(prompt: str) -> str:
        sys.stderr.write(prompt)
        sys.stderr.flush()
        try:
            return input()
        except (EOFError, KeyboardInterrupt):
            raise Aborted() from None

    def say(message: str) -> None:
        print(f"note: {message}", file=sys.stderr)

    try:
        text = init_questionnaire(ask, say)
    except Aborted:
        print("\nbomi: aborted, nothing written", file=sys.stderr)
        return USAGE
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return OK


_COMMANDS = {
    "check": _cmd_check,
    "lint": _cmd_lint,
    "stats": _cmd_stats,
    "export": _cmd_export,
    "init": _cmd_init,
}


def run(argv: list[str]) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:  # argparse help/usage paths
        code = exc.code
        if code is None:
            return OK
        return code if isinstance(code, int) else USAGE


if __name__ == "__main__":
    sys.exit(main())
